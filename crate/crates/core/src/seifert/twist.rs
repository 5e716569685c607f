use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_vector, validate_orbifold, ConditionCheck, SeifertBundle, SeifertError};
use crate::decimal;
use crate::lattice::is_primitive;

/// Default `L∞` radius of the twist search.
pub const DEFAULT_TWIST_BOUND: u32 = 8;

/// Outcome of the primitive-twist search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub bundle: SeifertBundle,
    /// `c₁` of the twisting line bundle.
    #[serde(with = "decimal::bigint_vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "decimal::bigint")]
    pub k: BigInt,
    #[serde(with = "decimal::bigint_vec")]
    pub centre: Vec<BigInt>,
    /// `L∞` distance of `a` from the centre.
    #[serde(with = "decimal::u32_str")]
    pub shell: u32,
    #[serde(with = "decimal::u32_str")]
    pub bound: u32,
    pub tried: String,
    /// `c₁(M̃/X) = a + c₁(M/X)`, the class of the rescaled symplectic form.
    #[serde(with = "decimal::rational_vec")]
    pub omega_class: Vec<BigRational>,
    /// `c₁(M̃/X)/(m(X)·k + 1)`, the perturbed class of the original form.
    #[serde(with = "decimal::rational_vec")]
    pub perturbed_omega: Vec<BigRational>,
    pub note: String,
}

fn round_half_up(q: &BigRational) -> BigInt {
    (q + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer()
}

/// Odometer over `[−r, r]^n` in lexicographic order, keeping vectors with
/// `max |xᵢ| = r`.
struct Shell {
    r: i64,
    cur: Option<Vec<i64>>,
}

impl Shell {
    fn new(n: usize, r: u32) -> Self {
        let r = i64::from(r);
        Self {
            r,
            cur: Some(vec![-r; n]),
        }
    }
}

impl Iterator for Shell {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            let cur = self.cur.as_mut()?;
            let out = cur.clone();
            let mut i = cur.len();
            loop {
                if i == 0 {
                    self.cur = None;
                    break;
                }
                i -= 1;
                if cur[i] < self.r {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -self.r;
            }
            if out.iter().any(|x| x.abs() == self.r) || out.is_empty() {
                return Some(out);
            }
        }
    }
}

/// Chooses `B` so that `c₁(M/μ)` becomes primitive, searching integral
/// classes `a` in growing `L∞` shells around a centre, lexicographic within
/// a shell.
///
/// With `omega = Some(ω)` the centre is the nearest integral point to
/// `(m(X) + 1)·ω − c₁(M/X)`, so that `(a + c₁(M/X))/(m(X) + 1)` approximates
/// `ω`; otherwise the centre is `0`. Positivity of the resulting class is
/// not checked.
pub fn choose_primitive_twist(
    s: &SeifertBundle,
    omega: Option<&[BigRational]>,
    bound: u32,
) -> Result<Twist, SeifertError> {
    let base = &s.orbifold().base;
    let n = base.surfaces().len();
    let iso = s.isotropy_sum();
    match is_primitive(&iso) {
        Ok(true) => {}
        Ok(false) => {
            return Err(SeifertError::TwistHypothesis(format!(
                "Σ bᵢ(m(X)/mᵢ)[Dᵢ] = {} is not primitive",
                format_vector(&iso)
            )))
        }
        Err(_) => {
            return Err(SeifertError::TwistHypothesis(
                "no isotropy surfaces, Σ bᵢ(m(X)/mᵢ)[Dᵢ] vanishes".into(),
            ))
        }
    }
    match base.b2() {
        Some(b) if b >= 3 => {}
        other => {
            return Err(SeifertError::TwistHypothesis(format!(
                "b₂(X) ≥ 3 required, have {}",
                other.map_or("unknown".into(), |b| b.to_string())
            )))
        }
    }
    let k = BigInt::one();
    let scale = s.m_x() * &k + BigInt::one();
    let c1 = s.chern_class();
    let centre: Vec<BigInt> = match omega {
        None => vec![BigInt::zero(); n],
        Some(w) => {
            if w.len() != n {
                return Err(SeifertError::Dimension {
                    got: w.len(),
                    expected: n,
                });
            }
            w.iter()
                .zip(&c1)
                .map(|(wi, ci)| round_half_up(&(wi * BigRational::from_integer(scale.clone()) - ci)))
                .collect()
        }
    };
    let c1_mu = s.c1_mu();
    let mut tried: u64 = 0;
    for r in 0..=bound {
        for offset in Shell::new(n, r) {
            tried += 1;
            let a: Vec<BigInt> = centre.iter().zip(&offset).map(|(c, o)| c + BigInt::from(*o)).collect();
            let candidate: Vec<BigInt> = a.iter().zip(&c1_mu).map(|(ai, ci)| ai * s.m_x() + ci).collect();
            if is_primitive(&candidate).unwrap_or(false) {
                let bundle = s.twisted(&a)?;
                let omega_class = bundle.chern_class();
                let divisor = BigRational::from_integer(scale.clone());
                let perturbed_omega = omega_class.iter().map(|x| x / &divisor).collect();
                return Ok(Twist {
                    bundle,
                    a,
                    k,
                    centre,
                    shell: r,
                    bound,
                    tried: tried.to_string(),
                    omega_class,
                    perturbed_omega,
                    note: format!(
                        "search radius is a chosen bound (default {DEFAULT_TWIST_BOUND}); existence holds by density with no effective bound"
                    ),
                });
            }
        }
    }
    Err(SeifertError::TwistSearchExhausted {
        bound,
        tried,
        centre: format_vector(&centre),
    })
}

/// Record that the hypotheses producing a K-contact structure on the total
/// space were verified. Carries no analytic content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KContactCertificate {
    pub hypotheses: Vec<ConditionCheck>,
    #[serde(with = "decimal::rational_vec")]
    pub chern_class: Vec<BigRational>,
    pub conclusion: String,
}

pub fn certify_kcontact(s: &SeifertBundle, omega_class: &[BigRational]) -> Result<KContactCertificate, SeifertError> {
    let orb = s.orbifold();
    let base = &orb.base;
    let iso: Vec<(String, BigInt)> = orb.isotropy.iter().map(|i| (i.surface.clone(), i.m.clone())).collect();
    let recheck = validate_orbifold(base, &iso)?;
    if !orb.semi_regular {
        return Err(SeifertError::NotSemiRegular);
    }
    let tag = base
        .symplectic_form_tag()
        .ok_or_else(|| SeifertError::Certification("base carries no symplectic form".into()))?;
    let chern = s.chern_class();
    if chern.as_slice() != omega_class {
        let show = |v: &[BigRational]| format_vector(&v.iter().map(decimal::format_rational).collect::<Vec<_>>());
        return Err(SeifertError::ClassMismatch {
            chern: show(&chern),
            omega: show(omega_class),
        });
    }
    let mut hypotheses = vec![ConditionCheck {
        name: "symplectic base".into(),
        holds: true,
        reason: format!("form tag {tag}"),
    }];
    hypotheses.extend(recheck.checks.iter().map(|c| ConditionCheck {
        name: "smooth orbifold structure".into(),
        holds: true,
        reason: c.clone(),
    }));
    hypotheses.push(ConditionCheck {
        name: "almost Kähler orbifold".into(),
        holds: true,
        reason: "symplectic orbifold with symplectic isotropy surfaces admits a compatible almost complex structure (taken as given)".into(),
    });
    hypotheses.push(ConditionCheck {
        name: "rational class".into(),
        holds: true,
        reason: "c₁(M/X) = [ω] exactly, with rational coordinates".into(),
    });
    Ok(KContactCertificate {
        hypotheses,
        chern_class: chern,
        conclusion: "total space admits a K-contact structure with π*ω = dη".into(),
    })
}
