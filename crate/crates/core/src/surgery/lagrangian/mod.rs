//! Exact verification of the Lagrangian cylinders and tori in the punctured
//! four-torus `Y = T⁴ − ν(T12 ∪ T13 ∪ T14)`.
//!
//! Every claim reduces to a polynomial identity or a sign decision in `δ, ε`
//! under the order `0 < ε ≪ δ ≪ 1`. Nothing is evaluated numerically.

pub mod poly;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use poly::{Poly, Var};

/// How a patch parameter ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    /// A coordinate running once around a circle factor.
    Circle(Var),
    /// `t ∈ [0, 1]`.
    Unit,
    /// `θ ∈ [0, 2π]`, carried by `c = cos θ`, `s = sin θ`.
    Angle,
}

impl Param {
    fn name(self) -> String {
        match self {
            Param::Circle(v) => format!("{}", Poly::var(v)),
            Param::Unit => "t".into(),
            Param::Angle => "θ".into(),
        }
    }
}

/// A parametrized surface in `T⁴ = ℝ⁴/ℤ⁴`.
#[derive(Clone, Debug)]
pub struct Patch {
    pub name: String,
    pub coords: [Poly; 4],
    pub params: [Param; 2],
}

fn v(x: Var) -> Poly {
    Poly::var(x)
}

impl Patch {
    fn new(name: &str, coords: [Poly; 4], params: [Param; 2]) -> Self {
        Self {
            name: name.into(),
            coords,
            params,
        }
    }

    pub fn tangent(&self, k: usize) -> [Poly; 4] {
        let d = |p: &Poly| match self.params[k] {
            Param::Circle(x) => p.partial(x),
            Param::Unit => p.partial(Var::T),
            Param::Angle => p.d_theta(),
        };
        [
            d(&self.coords[0]),
            d(&self.coords[1]),
            d(&self.coords[2]),
            d(&self.coords[3]),
        ]
    }

    fn substitute_all(&self, subs: &[(Var, Poly)]) -> [Poly; 4] {
        let mut c = self.coords.clone();
        for x in &mut c {
            for (var, val) in subs {
                *x = x.substitute(*var, val);
            }
        }
        c
    }
}

/// `ω = dx1∧dx2 + dx3∧dx4 + dx2∧dx3 + δ dx1∧dx4 + dx2∧dx4 − δ dx1∧dx3`.
pub fn omega_coefficients() -> [[Poly; 4]; 4] {
    let mut w: [[Poly; 4]; 4] = Default::default();
    let mut set = |i: usize, j: usize, p: Poly| {
        w[j][i] = -&p;
        w[i][j] = p;
    };
    set(0, 1, Poly::one());
    set(2, 3, Poly::one());
    set(1, 2, Poly::one());
    set(0, 3, v(Var::Delta));
    set(1, 3, Poly::one());
    set(0, 2, -v(Var::Delta));
    w
}

pub fn omega(a: &[Poly; 4], b: &[Poly; 4]) -> Poly {
    let w = omega_coefficients();
    let mut acc = Poly::zero();
    for i in 0..4 {
        for j in 0..4 {
            if !w[i][j].is_zero() {
                acc = acc + &w[i][j] * &(&a[i] * &b[j]);
            }
        }
    }
    acc
}

fn half() -> Poly {
    Poly::frac(1, 2)
}

fn eps() -> Poly {
    v(Var::Eps)
}

fn delta() -> Poly {
    v(Var::Delta)
}

/// `1/2 − 2ε`, the length scale of the cylinders.
fn k() -> Poly {
    half() - Poly::int(2) * eps()
}

pub fn cylinder_c1() -> Patch {
    let t = v(Var::T);
    Patch::new(
        "C1",
        [
            v(Var::X1),
            -(delta() * k() * (&t - Poly::one())),
            Poly::zero(),
            eps() + k() * &t,
        ],
        [Param::Circle(Var::X1), Param::Unit],
    )
}

pub fn cylinder_c2() -> Patch {
    let t = v(Var::T);
    Patch::new(
        "C2",
        [
            v(Var::X1),
            half() + delta() * k() * (&t - Poly::one()),
            eps() + k() * &t,
            Poly::zero(),
        ],
        [Param::Circle(Var::X1), Param::Unit],
    )
}

pub fn torus_t1() -> Patch {
    let (c, s) = (v(Var::C), v(Var::S));
    let ratio = eps() * Poly::var_pow(Var::Delta, -1);
    Patch::new(
        "T1",
        [half() - &ratio * (&s - &c), eps() * &c, v(Var::X3), half() + eps() * &s],
        [Param::Angle, Param::Circle(Var::X3)],
    )
}

pub fn torus_t2() -> Patch {
    let (c, s) = (v(Var::C), v(Var::S));
    let ratio = eps() * Poly::var_pow(Var::Delta, -1);
    Patch::new(
        "T2",
        [
            half() - &ratio * (&s + &c),
            half() + eps() * &c,
            half() + eps() * &s,
            v(Var::X4),
        ],
        [Param::Angle, Param::Circle(Var::X4)],
    )
}

/// The three tori cut out to form `Y`, and the three tori summed with the
/// E(1) sections. Offsets of the latter are irrelevant for the form.
pub fn coordinate_tori() -> Vec<Patch> {
    let x = |i: usize| v(Var::coordinate(i));
    let c = |i: usize| Param::Circle(Var::coordinate(i));
    vec![
        Patch::new("T12", [x(0), x(1), Poly::zero(), Poly::zero()], [c(0), c(1)]),
        Patch::new("T34", [Poly::zero(), Poly::zero(), x(2), x(3)], [c(2), c(3)]),
        Patch::new("T23", [Poly::zero(), x(1), x(2), Poly::zero()], [c(1), c(2)]),
        Patch::new("T14", [x(0), half(), half(), x(3)], [c(0), c(3)]),
        // reversed orientation
        Patch::new("T13", [x(0), Poly::zero(), x(2), half()], [c(2), c(0)]),
        Patch::new("T24", [Poly::zero(), x(1), Poly::zero(), x(3)], [c(1), c(3)]),
    ]
}

/// A solid tube `|(x_a − α, x_b − β)| < ε` around one of the removed tori.
#[derive(Clone, Debug)]
pub struct Tube {
    pub name: &'static str,
    pub a: (usize, Poly),
    pub b: (usize, Poly),
}

pub fn tubes() -> [Tube; 3] {
    [
        Tube {
            name: "T12",
            a: (2, Poly::zero()),
            b: (3, Poly::zero()),
        },
        Tube {
            name: "T13",
            a: (1, Poly::zero()),
            b: (3, half()),
        },
        Tube {
            name: "T14",
            a: (1, half()),
            b: (2, half()),
        },
    ]
}

#[derive(Clone, Debug)]
enum Range {
    Circle,
    Interval(Poly, Poly),
}

fn le(a: &Poly, b: &Poly) -> bool {
    matches!((b - a).asymptotic_sign(), Some(Ordering::Greater | Ordering::Equal))
}

fn lt(a: &Poly, b: &Poly) -> bool {
    (b - a).is_asymptotically_positive()
}

/// Interval enclosure of a coordinate that is affine in `t`, `c`, `s`.
fn enclosure(p: &Poly) -> Range {
    if [Var::X1, Var::X2, Var::X3, Var::X4].iter().any(|x| p.uses(*x)) {
        return Range::Circle;
    }
    let (mut lo, mut hi) = (Poly::zero(), Poly::zero());
    let mut rest = p.clone();
    for (atom, a_lo, a_hi) in [(Var::T, 0, 1), (Var::C, -1, 1), (Var::S, -1, 1)] {
        let Some((coef, r)) = rest.split_linear(atom) else {
            return Range::Circle;
        };
        rest = r;
        if coef.is_zero() {
            continue;
        }
        let (at_lo, at_hi) = (coef.scale(&q(a_lo)), coef.scale(&q(a_hi)));
        match coef.asymptotic_sign() {
            Some(Ordering::Greater) => {
                lo = lo + at_lo;
                hi = hi + at_hi;
            }
            Some(Ordering::Less) => {
                lo = lo + at_hi;
                hi = hi + at_lo;
            }
            _ => return Range::Circle,
        }
    }
    if !rest.is_small_parameter_expression() {
        return Range::Circle;
    }
    Range::Interval(&lo + &rest, &hi + &rest)
}

fn q(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

/// Every point of the range is at circle distance at least `ε` from `ℤ`.
fn away_from_integers(r: &Range) -> bool {
    let Range::Interval(lo, hi) = r else {
        return false;
    };
    (-2..=2).any(|n| {
        let n = Poly::int(n);
        le(&(&n + &eps()), lo) && le(hi, &(n + Poly::one() - eps()))
    })
}

fn in_half_window(r: &Range) -> bool {
    matches!(r, Range::Interval(lo, hi) if le(&-half(), lo) && le(hi, &half()))
}

fn disjoint_mod_one(a: &Range, b: &Range) -> bool {
    let (Range::Interval(a0, a1), Range::Interval(b0, b1)) = (a, b) else {
        return false;
    };
    let bounded = |x: &Poly| le(&Poly::int(-2), x) && le(x, &Poly::int(2));
    if ![a0, a1, b0, b1].into_iter().all(bounded) {
        return false;
    }
    (-5..=5).all(|n| {
        let n = Poly::int(n);
        lt(a1, &(b0 + &n)) || lt(&(b1 + &n), a0)
    })
}

/// `P ≥ 0` on `t ∈ [0, 1]` because every coefficient of `P` in powers of
/// `t`, or of `1 − t`, is nonnegative.
fn nonneg_on_unit_interval(p: &Poly) -> Option<&'static str> {
    if !p.only_in(&[Var::T, Var::Delta, Var::Eps]) {
        return None;
    }
    let flipped = p.substitute(Var::T, &(Poly::one() - v(Var::T)));
    for (basis, poly) in [("t", p.clone()), ("1 − t", flipped)] {
        let mut rest = poly;
        let mut ok = true;
        while !rest.is_zero() {
            let mut coef = rest.clone();
            let mut deg = 0;
            while coef.uses(Var::T) {
                coef = coef.partial(Var::T);
                deg += 1;
            }
            // coef is deg!·(leading coefficient); positivity is unaffected
            if coef.asymptotic_sign() == Some(Ordering::Less) {
                ok = false;
                break;
            }
            rest = strip_top_degree(&rest, deg);
        }
        if ok {
            return Some(basis);
        }
    }
    None
}

fn strip_top_degree(p: &Poly, deg: i32) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        if e[Var::T as usize] != deg {
            let mut m = Poly::constant(c.clone());
            for var in Var::ALL {
                let k = e[var as usize];
                if k != 0 {
                    m = m * Poly::var_pow(var, k);
                }
            }
            out = out + m;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub first: String,
    pub second: String,
    pub parameters: Vec<(String, String)>,
    pub point: Vec<String>,
    pub tangent_determinant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCircle {
    pub patch: String,
    pub at: String,
    pub coordinates: Vec<String>,
    pub tube: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianReport {
    pub order: String,
    pub checks: Vec<ConfigCheck>,
    pub intersections: Vec<IntersectionPoint>,
    pub boundary_circles: Vec<BoundaryCircle>,
}

impl LagrangianReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&ConfigCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Nonnegative factor used to force equalities: if `Σ κᵢ·aᵢ = 0` with every
/// `κᵢ > 0` and every `aᵢ ≥ 0`, each `aᵢ` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    T,
    OneMinusT,
    OnePlusSin,
    OneMinusSin,
    OnePlusCos,
    OneMinusCos,
}

impl Atom {
    fn poly(self) -> Poly {
        let one = Poly::one();
        match self {
            Atom::T => v(Var::T),
            Atom::OneMinusT => one - v(Var::T),
            Atom::OnePlusSin => one + v(Var::S),
            Atom::OneMinusSin => one - v(Var::S),
            Atom::OnePlusCos => one + v(Var::C),
            Atom::OneMinusCos => one - v(Var::C),
        }
    }

    fn forced(self) -> Vec<(Var, Poly)> {
        match self {
            Atom::T => vec![(Var::T, Poly::zero())],
            Atom::OneMinusT => vec![(Var::T, Poly::one())],
            Atom::OnePlusSin => vec![(Var::S, Poly::int(-1)), (Var::C, Poly::zero())],
            Atom::OneMinusSin => vec![(Var::S, Poly::one()), (Var::C, Poly::zero())],
            Atom::OnePlusCos => vec![(Var::S, Poly::zero()), (Var::C, Poly::int(-1))],
            Atom::OneMinusCos => vec![(Var::S, Poly::zero()), (Var::C, Poly::one())],
        }
    }
}

/// Witness that coordinate `coordinate` of the difference, times `sign`,
/// equals `Σ coefᵢ·atomᵢ`.
#[derive(Clone, Debug)]
pub struct Forcing {
    pub coordinate: usize,
    pub sign: i64,
    pub terms: Vec<(Poly, Atom)>,
}

fn angle_name(c: &Poly, s: &Poly) -> Option<&'static str> {
    let table = [((1, 0), "0"), ((0, 1), "π/2"), ((-1, 0), "π"), ((0, -1), "−π/2")];
    table
        .iter()
        .find(|((x, y), _)| *c == Poly::int(*x) && *s == Poly::int(*y))
        .map(|(_, n)| *n)
}

fn det4(m: &[[Poly; 4]; 4]) -> Poly {
    let mut acc = Poly::zero();
    let mut perm = [0usize, 1, 2, 3];
    fn permutations(k: usize, p: &mut [usize; 4], out: &mut Vec<[usize; 4]>) {
        if k == 4 {
            out.push(*p);
            return;
        }
        for i in k..4 {
            p.swap(k, i);
            permutations(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut all = Vec::new();
    permutations(0, &mut perm, &mut all);
    for p in all {
        let inversions = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Poly::one();
        for (row, &col) in p.iter().enumerate() {
            term = term * &m[row][col];
        }
        acc = if inversions % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Proves `A ∩ B` is a single transverse point: the forcing witness pins the
/// bounded parameters, after which each remaining coordinate equation is
/// linear with unit coefficient in one circle parameter.
pub fn solve_single_intersection(a: &Patch, b: &Patch, forcing: &Forcing) -> Result<IntersectionPoint, String> {
    let params: Vec<Param> = a.params.iter().chain(&b.params).copied().collect();
    for (i, p) in params.iter().enumerate() {
        if params[i + 1..].contains(p) {
            return Err(format!("{} and {} share the parameter {}", a.name, b.name, p.name()));
        }
    }
    let mut diff: Vec<Poly> = (0..4).map(|i| &a.coords[i] - &b.coords[i]).collect();

    let d = &diff[forcing.coordinate];
    let Range::Interval(lo, hi) = enclosure(d) else {
        return Err(format!(
            "coordinate {} difference is not bounded",
            forcing.coordinate + 1
        ));
    };
    if !(lt(&Poly::int(-1), &lo) && lt(&hi, &Poly::one())) {
        return Err("forcing coordinate difference may wrap around the circle".into());
    }
    let target = d.scale(&q(forcing.sign));
    let mut witness = Poly::zero();
    for (coef, atom) in &forcing.terms {
        if !coef.is_asymptotically_positive() {
            return Err(format!("forcing coefficient {coef} is not positive"));
        }
        witness = witness + coef * &atom.poly();
    }
    if witness != target {
        return Err(format!("forcing identity fails: {target} ≠ {witness}"));
    }
    let mut subs: Vec<(Var, Poly)> = Vec::new();
    for (_, atom) in &forcing.terms {
        for (var, val) in atom.forced() {
            if subs.iter().any(|(x, y)| *x == var && *y != val) {
                return Err(format!("forcing assigns {var:?} twice"));
            }
            if !subs.iter().any(|(x, _)| *x == var) {
                subs.push((var, val));
            }
        }
    }
    let apply = |p: &Poly, subs: &[(Var, Poly)]| subs.iter().fold(p.clone(), |acc, (x, val)| acc.substitute(*x, val));
    diff = diff.iter().map(|p| apply(p, &subs)).collect();

    let circle_vars: Vec<Var> = params
        .iter()
        .filter_map(|p| match p {
            Param::Circle(x) => Some(*x),
            _ => None,
        })
        .collect();
    loop {
        let mut progressed = false;
        for i in 0..4 {
            if diff[i].is_zero() {
                continue;
            }
            let open: Vec<Var> = circle_vars
                .iter()
                .copied()
                .filter(|x| diff[i].uses(*x) && !subs.iter().any(|(y, _)| y == x))
                .collect();
            if open.len() != 1 {
                continue;
            }
            let x = open[0];
            let Some((lin, rest)) = diff[i].split_linear(x) else {
                return Err(format!("coordinate {} is not linear in {}", i + 1, Poly::var(x)));
            };
            let unit = lin == Poly::one() || lin == Poly::int(-1);
            if !unit || !rest.is_small_parameter_expression() {
                return Err(format!(
                    "coordinate {} does not determine {} uniquely",
                    i + 1,
                    Poly::var(x)
                ));
            }
            let value = if lin == Poly::one() { -rest } else { rest };
            subs.push((x, value));
            diff = diff.iter().map(|p| apply(p, &subs)).collect();
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    if let Some(i) = (0..4).find(|&i| !diff[i].is_zero()) {
        return Err(format!(
            "coordinate {} equation left unsolved: {} = 0 mod 1",
            i + 1,
            diff[i]
        ));
    }

    let value_of = |x: Var| subs.iter().find(|(y, _)| *y == x).map(|(_, p)| p.clone());
    let mut parameters = Vec::new();
    for p in &params {
        let shown = match p {
            Param::Circle(x) => value_of(*x).map(|p| p.to_string()),
            Param::Unit => value_of(Var::T).map(|p| p.to_string()),
            Param::Angle => match (value_of(Var::C), value_of(Var::S)) {
                (Some(c), Some(s)) => angle_name(&c, &s).map(str::to_string),
                _ => None,
            },
        };
        let shown = shown.ok_or_else(|| format!("parameter {} is not determined", p.name()))?;
        parameters.push((p.name(), shown));
    }

    let at = |p: &Patch, k: usize| -> [Poly; 4] {
        let t = p.tangent(k);
        [
            apply(&t[0], &subs),
            apply(&t[1], &subs),
            apply(&t[2], &subs),
            apply(&t[3], &subs),
        ]
    };
    let frame = [at(a, 0), at(a, 1), at(b, 0), at(b, 1)];
    let det = det4(&frame);
    if !matches!(det.asymptotic_sign(), Some(Ordering::Greater | Ordering::Less)) {
        return Err(format!("tangent spaces are not transverse (determinant {det})"));
    }
    Ok(IntersectionPoint {
        first: a.name.clone(),
        second: b.name.clone(),
        parameters,
        point: a.substitute_all(&subs).iter().map(|p| p.to_string()).collect(),
        tangent_determinant: det.to_string(),
    })
}

fn tube_distance_sq(coords: &[Poly; 4], tube: &Tube) -> (Poly, Range, Range) {
    let a = &coords[tube.a.0] - &tube.a.1;
    let b = &coords[tube.b.0] - &tube.b.1;
    let (ra, rb) = (enclosure(&a), enclosure(&b));
    (&a * &a + &b * &b - eps() * eps(), ra, rb)
}

/// The patch avoids the open tube, with the reason.
fn outside_tube(p: &Patch, tube: &Tube) -> Result<String, String> {
    let (dist, ra, rb) = tube_distance_sq(&p.coords, tube);
    if away_from_integers(&ra) {
        return Ok(format!("x{} stays ε away from the core", tube.a.0 + 1));
    }
    if away_from_integers(&rb) {
        return Ok(format!("x{} stays ε away from the core", tube.b.0 + 1));
    }
    if in_half_window(&ra) && in_half_window(&rb) {
        if dist.is_zero() {
            return Ok("lies on the tube boundary".into());
        }
        if let Some(basis) = nonneg_on_unit_interval(&dist) {
            return Ok(format!(
                "distance² − ε² = {dist} has nonnegative coefficients in {basis}"
            ));
        }
    }
    Err(format!(
        "could not separate {} from the tube around {}",
        p.name, tube.name
    ))
}

fn on_tube_boundary(coords: &[Poly; 4], tube: &Tube) -> bool {
    let (dist, ra, rb) = tube_distance_sq(coords, tube);
    in_half_window(&ra) && in_half_window(&rb) && dist.is_zero()
}

fn separating_coordinate(a: &Patch, b: &Patch) -> Option<usize> {
    (0..4).find(|&i| disjoint_mod_one(&enclosure(&a.coords[i]), &enclosure(&b.coords[i])))
}

pub fn c1_t1_forcing() -> Forcing {
    // −(x4(C1) − x4(T1)) = ε(1 + s) + (1/2 − 2ε)(1 − t)
    Forcing {
        coordinate: 3,
        sign: -1,
        terms: vec![(eps(), Atom::OnePlusSin), (k(), Atom::OneMinusT)],
    }
}

pub fn c2_t2_forcing() -> Forcing {
    Forcing {
        coordinate: 2,
        sign: -1,
        terms: vec![(eps(), Atom::OnePlusSin), (k(), Atom::OneMinusT)],
    }
}

/// Runs every check on the fixed configuration.
pub fn verify_lagrangian_config() -> LagrangianReport {
    let mut checks = Vec::new();
    let mut push = |name: String, res: Result<String, String>| {
        let (pass, detail) = match res {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(ConfigCheck { name, pass, detail });
    };
    let (c1, c2, t1, t2) = (cylinder_c1(), cylinder_c2(), torus_t1(), torus_t2());
    let lagrangians = [&c1, &c2, &t1, &t2];

    for p in lagrangians {
        let w = omega(&p.tangent(0), &p.tangent(1));
        push(
            format!("lagrangian-{}", p.name),
            if w.is_zero() {
                Ok("ω(∂₁, ∂₂) reduces to 0".into())
            } else {
                Err(format!("ω(∂₁, ∂₂) = {w}"))
            },
        );
    }
    for p in coordinate_tori() {
        let w = omega(&p.tangent(0), &p.tangent(1));
        push(
            format!("symplectic-{}", p.name),
            if w.is_asymptotically_positive() {
                Ok(format!("ω(∂₁, ∂₂) = {w} > 0"))
            } else {
                Err(format!("ω(∂₁, ∂₂) = {w}"))
            },
        );
    }
    let removed: Vec<Patch> = coordinate_tori()
        .into_iter()
        .filter(|p| ["T12", "T13", "T14"].contains(&p.name.as_str()))
        .collect();
    for i in 0..removed.len() {
        for j in i + 1..removed.len() {
            let (a, b) = (&removed[i], &removed[j]);
            push(
                format!("disjoint-{}-{}", a.name, b.name),
                separating_coordinate(a, b)
                    .map(|k| format!("separated in x{}", k + 1))
                    .ok_or_else(|| "no separating coordinate".into()),
            );
        }
    }

    let tube = |name: &str| tubes().into_iter().find(|t| t.name == name).expect("known tube");
    for (p, home) in [(&c1, None), (&c2, None), (&t1, Some("T13")), (&t2, Some("T14"))] {
        let mut reasons = Vec::new();
        let mut ok = true;
        for tb in tubes() {
            match outside_tube(p, &tb) {
                Ok(r) => reasons.push(format!("{}: {r}", tb.name)),
                Err(r) => {
                    ok = false;
                    reasons.push(r);
                }
            }
        }
        push(
            format!("inside-Y-{}", p.name),
            if ok {
                Ok(reasons.join("; "))
            } else {
                Err(reasons.join("; "))
            },
        );
        if let Some(h) = home {
            push(
                format!("on-boundary-{}-{}", p.name, h),
                if on_tube_boundary(&p.coords, &tube(h)) {
                    Ok(format!("distance² to the core of {h} equals ε²"))
                } else {
                    Err(format!("{} is not on the boundary of the tube around {h}", p.name))
                },
            );
        }
    }

    for (a, b) in [(&c1, &c2), (&c1, &t2), (&c2, &t1), (&t1, &t2)] {
        push(
            format!("disjoint-{}-{}", a.name, b.name),
            separating_coordinate(a, b)
                .map(|k| format!("coordinate ranges of x{} are disjoint mod 1", k + 1))
                .ok_or_else(|| "no separating coordinate".into()),
        );
    }

    let mut intersections = Vec::new();
    for (a, b, f) in [(&c1, &t1, c1_t1_forcing()), (&c2, &t2, c2_t2_forcing())] {
        let res = solve_single_intersection(a, b, &f);
        push(
            format!("single-transverse-point-{}-{}", a.name, b.name),
            res.as_ref()
                .map(|p| {
                    let ps: Vec<String> = p.parameters.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    format!(
                        "unique solution {}; tangent determinant {}",
                        ps.join(", "),
                        p.tangent_determinant
                    )
                })
                .map_err(Clone::clone),
        );
        if let Ok(p) = res {
            intersections.push(p);
        }
    }

    let mut boundary_circles = Vec::new();
    for (p, ends) in [(&c1, ["T12", "T13"]), (&c2, ["T12", "T14"])] {
        for (tv, h) in [(0, ends[0]), (1, ends[1])] {
            let coords = p.substitute_all(&[(Var::T, Poly::int(tv))]);
            let ok = on_tube_boundary(&coords, &tube(h));
            push(
                format!("boundary-{}-t{}-on-{}", p.name, tv, h),
                if ok {
                    Ok(format!(
                        "circle at t = {tv} lies on the boundary of the tube around {h}"
                    ))
                } else {
                    Err(format!("circle at t = {tv} misses the boundary of the tube around {h}"))
                },
            );
            boundary_circles.push(BoundaryCircle {
                patch: p.name.clone(),
                at: format!("t = {tv}"),
                coordinates: coords.iter().map(|c| c.to_string()).collect(),
                tube: h.into(),
            });
        }
    }

    LagrangianReport {
        order: "0 < ε ≪ δ ≪ 1 (smallest ε-power dominates, then smallest δ-power)".into(),
        checks,
        intersections,
        boundary_circles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_configuration_verifies() {
        let r = verify_lagrangian_config();
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r.intersections.len(), 2);
        let p = &r.intersections[0];
        assert!(p.parameters.contains(&("t".to_string(), "1".to_string())));
        assert!(p.parameters.contains(&("θ".to_string(), "−π/2".to_string())));
    }

    #[test]
    fn t1_frame_kills_omega() {
        let t1 = torus_t1();
        assert!(omega(&t1.tangent(0), &t1.tangent(1)).is_zero());
    }

    #[test]
    fn wrong_witness_is_rejected() {
        let mut f = c1_t1_forcing();
        f.terms[1].0 = Poly::one();
        assert!(solve_single_intersection(&cylinder_c1(), &torus_t1(), &f).is_err());
    }

    #[test]
    fn perturbed_form_breaks_lagrangian_identity() {
        let c1 = cylinder_c1();
        // ω(∂x1, ·) without the −δ dx1∧dx3 and δ dx1∧dx4 balance
        let t = c1.tangent(1);
        let pairing = &t[1] + &(v(Var::Delta) * &t[3]);
        assert!(pairing.is_zero());
        let skewed = &t[1] + &t[3];
        assert!(!skewed.is_zero());
    }
}
