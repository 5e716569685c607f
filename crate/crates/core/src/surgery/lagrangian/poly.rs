//! Multivariate Laurent polynomials over ℚ in the symbols used by the torus
//! configuration: `c = cos θ`, `s = sin θ`, a cylinder parameter `t`, the
//! free coordinates `x1…x4`, and the small parameters `δ`, `ε`.
//!
//! Polynomials are kept reduced modulo `s² = 1 − c²`, so a polynomial is zero
//! as a function of θ exactly when its normal form is zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    C,
    S,
    T,
    X1,
    X2,
    X3,
    X4,
    Delta,
    Eps,
}

pub const NVARS: usize = 9;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::C,
        Var::S,
        Var::T,
        Var::X1,
        Var::X2,
        Var::X3,
        Var::X4,
        Var::Delta,
        Var::Eps,
    ];

    pub fn coordinate(i: usize) -> Var {
        [Var::X1, Var::X2, Var::X3, Var::X4][i]
    }

    fn symbol(self) -> &'static str {
        match self {
            Var::C => "c",
            Var::S => "s",
            Var::T => "t",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
            Var::X4 => "x4",
            Var::Delta => "δ",
            Var::Eps => "ε",
        }
    }

    /// Only the small parameters may carry negative exponents.
    fn laurent(self) -> bool {
        matches!(self, Var::Delta | Var::Eps)
    }
}

type Exps = [i32; NVARS];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, BigRational>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::constant(q(n, d))
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        assert!(e >= 0 || v.laurent(), "negative power of {}", v.symbol());
        let mut exps = [0; NVARS];
        exps[v as usize] = e;
        let mut p = Self::zero();
        p.terms.insert(exps, BigRational::one());
        p.reduce()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, e: Exps, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Applies `s² → 1 − c²` until every monomial has `s`-degree at most 1.
    fn reduce(self) -> Self {
        let (s, c) = (Var::S as usize, Var::C as usize);
        let mut pending: Vec<(Exps, BigRational)> = self.terms.into_iter().collect();
        let mut out = Poly::zero();
        while let Some((e, coef)) = pending.pop() {
            if e[s] < 2 {
                out.insert(e, coef);
                continue;
            }
            let mut lower = e;
            lower[s] -= 2;
            let mut with_c = lower;
            with_c[c] += 2;
            pending.push((lower, coef.clone()));
            pending.push((with_c, -coef));
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v as usize] != 0)
    }

    /// True when only the listed variables occur.
    pub fn only_in(&self, vars: &[Var]) -> bool {
        self.terms
            .keys()
            .all(|e| Var::ALL.iter().all(|v| e[*v as usize] == 0 || vars.contains(v)))
    }

    pub fn is_small_parameter_expression(&self) -> bool {
        self.only_in(&[Var::Delta, Var::Eps])
    }

    pub fn partial(&self, v: Var) -> Self {
        let i = v as usize;
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.insert(d, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out.reduce()
    }

    /// `d/dθ` with `c' = −s`, `s' = c`.
    pub fn d_theta(&self) -> Self {
        let dc = &self.partial(Var::C) * &(-Poly::var(Var::S));
        let ds = &self.partial(Var::S) * &Poly::var(Var::C);
        &dc + &ds
    }

    pub fn substitute(&self, v: Var, value: &Poly) -> Self {
        let i = v as usize;
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = e[i];
            assert!(k >= 0, "cannot substitute into a negative power of {}", v.symbol());
            let mut rest = *e;
            rest[i] = 0;
            let mut mono = Poly::zero();
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &value.pow(k as u32));
        }
        out
    }

    /// Sign for `0 < ε ≪ δ ≪ 1`: the dominant monomial has the smallest
    /// `ε`-exponent, then the smallest `δ`-exponent. `None` if other
    /// variables occur.
    pub fn asymptotic_sign(&self) -> Option<Ordering> {
        if !self.is_small_parameter_expression() {
            return None;
        }
        let (d, e) = (Var::Delta as usize, Var::Eps as usize);
        let lead = self.terms.iter().min_by_key(|(x, _)| (x[e], x[d]));
        Some(match lead {
            None => Ordering::Equal,
            Some((_, c)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        })
    }

    pub fn is_asymptotically_positive(&self) -> bool {
        self.asymptotic_sign() == Some(Ordering::Greater)
    }

    /// Coefficient of `v¹` and the `v`-free remainder when `v` occurs at most
    /// linearly.
    pub fn split_linear(&self, v: Var) -> Option<(Poly, Poly)> {
        let i = v as usize;
        let mut lin = Poly::zero();
        let mut rest = Poly::zero();
        for (e, c) in &self.terms {
            match e[i] {
                0 => rest.insert(*e, c.clone()),
                1 => {
                    let mut f = *e;
                    f[i] = 0;
                    lin.insert(f, c.clone());
                }
                _ => return None,
            }
        }
        Some((lin, rest))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[**v as usize] != 0)
                .map(|v| match e[*v as usize] {
                    1 => v.symbol().to_string(),
                    k => format!("{}^{k}", v.symbol()),
                })
                .collect();
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut e = [0; NVARS];
                for k in 0..NVARS {
                    e[k] = a[k] + b[k];
                }
                out.insert(e, x * y);
            }
        }
        out.reduce()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn pythagoras_reduces_to_one() {
        let p = v(Var::C).pow(2) + v(Var::S).pow(2);
        assert_eq!(p, Poly::one());
        let p4 = v(Var::S).pow(4) - (Poly::one() - v(Var::C).pow(2)).pow(2);
        assert!(p4.is_zero());
    }

    #[test]
    fn theta_derivative() {
        assert_eq!(v(Var::C).d_theta(), -v(Var::S));
        assert_eq!(v(Var::S).d_theta(), v(Var::C));
        // d/dθ (c s) = c² − s² = 2c² − 1
        let p = (v(Var::C) * v(Var::S)).d_theta();
        assert_eq!(p, Poly::int(2) * v(Var::C).pow(2) - Poly::one());
    }

    #[test]
    fn laurent_cancellation() {
        let p = v(Var::Eps) * Poly::var_pow(Var::Delta, -1) * v(Var::Delta);
        assert_eq!(p, v(Var::Eps));
    }

    #[test]
    fn asymptotic_order() {
        let d = v(Var::Delta);
        let e = v(Var::Eps);
        // δ − 1000 ε > 0 since ε ≪ δ
        assert!((d.clone() - Poly::int(1000) * e.clone()).is_asymptotically_positive());
        // 1/4 − ε > 0
        assert!((Poly::frac(1, 4) - e.clone()).is_asymptotically_positive());
        // ε − δ² < 0 would need ε ≪ δ²; the order says ε is smaller than any power of δ
        assert_eq!((e.clone() - d.pow(2)).asymptotic_sign(), Some(Ordering::Less));
        assert_eq!(Poly::zero().asymptotic_sign(), Some(Ordering::Equal));
        assert_eq!(v(Var::T).asymptotic_sign(), None);
    }

    #[test]
    fn substitution() {
        let p = v(Var::T).pow(2) + v(Var::T);
        assert_eq!(p.substitute(Var::T, &Poly::int(2)), Poly::int(6));
        assert_eq!(
            p.substitute(Var::T, &(Poly::one() - v(Var::T))),
            Poly::int(2) - Poly::int(3) * v(Var::T) + v(Var::T).pow(2)
        );
    }
}
