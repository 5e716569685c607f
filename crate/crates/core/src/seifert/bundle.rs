use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_vector, OrbifoldStructure, SeifertError};
use crate::decimal;
use crate::lattice::{lcm_all, mod_inverse};

pub const BUNDLE_SCHEMA: u32 = 1;

/// `(Dᵢ, mᵢ, jᵢ)` together with `bᵢ = jᵢ⁻¹ mod mᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInvariant {
    pub surface: String,
    #[serde(with = "decimal::bigint")]
    pub m: BigInt,
    #[serde(with = "decimal::bigint")]
    pub j: BigInt,
    #[serde(with = "decimal::bigint")]
    pub b: BigInt,
}

impl OrbitInvariant {
    /// Normalizes `j` into `(0, m)`.
    pub fn new(surface: impl Into<String>, m: BigInt, j: &BigInt) -> Result<Self, SeifertError> {
        let surface = surface.into();
        if m < BigInt::from(2) {
            return Err(SeifertError::BadMultiplicity {
                surface,
                m: m.to_string(),
            });
        }
        let j = j.mod_floor(&m);
        let b = mod_inverse(&j, &m)?;
        Ok(Self { surface, m, j, b })
    }

    fn check(&self) -> Result<(), SeifertError> {
        let fresh = Self::new(self.surface.clone(), self.m.clone(), &self.j)?;
        if fresh.j != self.j || fresh.b != self.b {
            return Err(SeifertError::InvalidInvariant(format!(
                "{}: (m, j, b) = ({}, {}, {}) is not normalized",
                self.surface, self.m, self.j, self.b
            )));
        }
        Ok(())
    }
}

/// A Seifert bundle over a validated orbifold, determined by its orbit
/// invariants and the class `c₁(B)` of a background line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertBundle {
    orbifold: OrbifoldStructure,
    invariants: Vec<OrbitInvariant>,
    background: Vec<BigInt>,
    m_x: BigInt,
}

impl SeifertBundle {
    /// `exponents` gives `jᵢ` in the order of the orbifold's isotropy list;
    /// `None` takes every `jᵢ = 1`.
    pub fn new(
        orbifold: OrbifoldStructure,
        exponents: Option<&[BigInt]>,
        background: Vec<BigInt>,
    ) -> Result<Self, SeifertError> {
        let n = orbifold.base.surfaces().len();
        if background.len() != n {
            return Err(SeifertError::Dimension {
                got: background.len(),
                expected: n,
            });
        }
        if let Some(js) = exponents {
            if js.len() != orbifold.isotropy.len() {
                return Err(SeifertError::Dimension {
                    got: js.len(),
                    expected: orbifold.isotropy.len(),
                });
            }
        }
        let one = BigInt::one();
        let invariants = orbifold
            .isotropy
            .iter()
            .enumerate()
            .map(|(i, s)| OrbitInvariant::new(s.surface.clone(), s.m.clone(), exponents.map_or(&one, |js| &js[i])))
            .collect::<Result<Vec<_>, _>>()?;
        let m_x = lcm_all(invariants.iter().map(|o| &o.m));
        Ok(Self {
            orbifold,
            invariants,
            background,
            m_x,
        })
    }

    pub fn orbifold(&self) -> &OrbifoldStructure {
        &self.orbifold
    }

    pub fn invariants(&self) -> &[OrbitInvariant] {
        &self.invariants
    }

    pub fn background(&self) -> &[BigInt] {
        &self.background
    }

    /// `m(X) = lcm{mᵢ}`.
    pub fn m_x(&self) -> &BigInt {
        &self.m_x
    }

    /// Replaces `B` by `B ⊗ L` with `c₁(L) = a`.
    pub fn twisted(&self, a: &[BigInt]) -> Result<Self, SeifertError> {
        if a.len() != self.background.len() {
            return Err(SeifertError::Dimension {
                got: a.len(),
                expected: self.background.len(),
            });
        }
        let mut out = self.clone();
        for (x, y) in out.background.iter_mut().zip(a) {
            *x += y;
        }
        Ok(out)
    }

    fn isotropy_index(&self, inv: &OrbitInvariant) -> usize {
        self.orbifold
            .base
            .index_of(&inv.surface)
            .expect("isotropy surfaces are tracked by the validated base")
    }

    /// `c₁(M/X) = c₁(B) + Σ (bᵢ/mᵢ)[Dᵢ]` in the tracked basis.
    pub fn chern_class(&self) -> Vec<BigRational> {
        let mut c: Vec<BigRational> = self
            .background
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for inv in &self.invariants {
            let i = self.isotropy_index(inv);
            c[i] += BigRational::new(inv.b.clone(), inv.m.clone());
        }
        c
    }

    /// `c₁(M/μ) = m(X)·c₁(M/X)`, an integral class.
    pub fn c1_mu(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.background.iter().map(|x| x * &self.m_x).collect();
        for (i, w) in self.isotropy_sum().into_iter().enumerate() {
            v[i] += w;
        }
        v
    }

    /// `Σ bᵢ·(m(X)/mᵢ)[Dᵢ]`, the part of `c₁(M/μ)` not coming from `B`.
    pub fn isotropy_sum(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.background.len()];
        for inv in &self.invariants {
            let i = self.isotropy_index(inv);
            v[i] += &inv.b * (&self.m_x / &inv.m);
        }
        v
    }

    pub fn chern_class_display(&self) -> String {
        let c: Vec<String> = self.chern_class().iter().map(decimal::format_rational).collect();
        format_vector(&c)
    }

    pub fn to_manifest(&self) -> SeifertManifest {
        SeifertManifest {
            schema: BUNDLE_SCHEMA,
            orbifold: self.orbifold.clone(),
            invariants: self.invariants.clone(),
            background: self.background.clone(),
            m_x: self.m_x.clone(),
            chern_class: self.chern_class(),
            c1_mu: self.c1_mu(),
        }
    }

    pub fn from_manifest(m: SeifertManifest) -> Result<Self, SeifertError> {
        if m.schema != BUNDLE_SCHEMA {
            return Err(SeifertError::Manifest(format!(
                "unsupported schema {} (expected {BUNDLE_SCHEMA})",
                m.schema
            )));
        }
        for inv in &m.invariants {
            inv.check()?;
            if m.orbifold.multiplicity(&inv.surface) != Some(&inv.m) {
                return Err(SeifertError::Manifest(format!(
                    "orbit invariant for {} disagrees with the orbifold isotropy",
                    inv.surface
                )));
            }
        }
        if m.invariants.len() != m.orbifold.isotropy.len() {
            return Err(SeifertError::Manifest(
                "one orbit invariant per isotropy surface expected".into(),
            ));
        }
        let js: Vec<BigInt> = m
            .orbifold
            .isotropy
            .iter()
            .map(|s| {
                m.invariants
                    .iter()
                    .find(|o| o.surface == s.surface)
                    .map(|o| o.j.clone())
                    .ok_or_else(|| SeifertError::Manifest(format!("no orbit invariant for {}", s.surface)))
            })
            .collect::<Result<_, _>>()?;
        let bundle = Self::new(m.orbifold, Some(&js), m.background)?;
        if bundle.m_x != m.m_x || bundle.chern_class() != m.chern_class || bundle.c1_mu() != m.c1_mu {
            return Err(SeifertError::Manifest(
                "recorded m(X) or Chern classes disagree with the invariants".into(),
            ));
        }
        Ok(bundle)
    }
}

/// JSON form of a [`SeifertBundle`], with its Chern classes echoed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertManifest {
    pub schema: u32,
    pub orbifold: OrbifoldStructure,
    pub invariants: Vec<OrbitInvariant>,
    #[serde(with = "decimal::bigint_vec")]
    pub background: Vec<BigInt>,
    #[serde(with = "decimal::bigint")]
    pub m_x: BigInt,
    #[serde(with = "decimal::rational_vec")]
    pub chern_class: Vec<BigRational>,
    #[serde(with = "decimal::bigint_vec")]
    pub c1_mu: Vec<BigInt>,
}

impl Serialize for SeifertBundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_manifest().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertBundle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = SeifertManifest::deserialize(d)?;
        SeifertBundle::from_manifest(m).map_err(serde::de::Error::custom)
    }
}
