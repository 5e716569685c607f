use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SeifertError;
use crate::decimal;
use crate::surgery::ManifoldModel;

/// A smooth manifold viewed as an orbifold with isotropy along surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldStructure {
    pub base: ManifoldModel,
    pub isotropy: Vec<IsotropySurface>,
    /// Every point is of type (b) or (d), so the underlying space is a manifold.
    pub semi_regular: bool,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropySurface {
    pub surface: String,
    #[serde(with = "decimal::bigint")]
    pub m: BigInt,
}

impl OrbifoldStructure {
    pub fn multiplicity(&self, surface: &str) -> Option<&BigInt> {
        self.isotropy.iter().find(|s| s.surface == surface).map(|s| &s.m)
    }
}

/// Checks that the listed surfaces can serve as isotropy surfaces of a
/// smooth orbifold structure on the base: symplectic, meeting positively,
/// never three through one point, and coprime multiplicities wherever two meet.
pub fn validate_orbifold(base: &ManifoldModel, iso: &[(String, BigInt)]) -> Result<OrbifoldStructure, SeifertError> {
    let mut checks = Vec::new();
    let mut idx = Vec::with_capacity(iso.len());
    for (k, (id, m)) in iso.iter().enumerate() {
        if iso[..k].iter().any(|(other, _)| other == id) {
            return Err(SeifertError::DuplicateIsotropy(id.clone()));
        }
        if *m < BigInt::from(2) {
            return Err(SeifertError::BadMultiplicity {
                surface: id.clone(),
                m: m.to_string(),
            });
        }
        let s = base.surface(id)?;
        if !s.is_symplectic() {
            return Err(SeifertError::NotSymplectic(id.clone()));
        }
        idx.push(base.index_of(id)?);
    }
    checks.push(format!("{} isotropy surfaces, all symplectic", iso.len()));

    let mut meeting_pairs = 0;
    for a in 0..iso.len() {
        for b in a + 1..iso.len() {
            let value = &base.gram()[(idx[a], idx[b])];
            if value.is_zero() {
                continue;
            }
            if value.is_negative() {
                return Err(SeifertError::NegativeIntersection {
                    a: iso[a].0.clone(),
                    b: iso[b].0.clone(),
                    value: value.to_string(),
                });
            }
            meeting_pairs += 1;
            let g = iso[a].1.gcd(&iso[b].1);
            if !g.is_one() {
                return Err(SeifertError::GcdClash {
                    a: iso[a].0.clone(),
                    b: iso[b].0.clone(),
                    ma: iso[a].1.to_string(),
                    mb: iso[b].1.to_string(),
                    gcd: g.to_string(),
                });
            }
        }
    }
    checks.push(if meeting_pairs == 0 {
        "isotropy surfaces pairwise disjoint".to_string()
    } else {
        format!("{meeting_pairs} meeting pairs, multiplicities coprime on each")
    });

    for p in base.marked_points() {
        let on: Vec<String> = p
            .surfaces
            .iter()
            .filter(|s| iso.iter().any(|(id, _)| id == *s))
            .cloned()
            .collect();
        if on.len() >= 3 {
            return Err(SeifertError::ThreeSurfacesThroughPoint {
                point: p.id.clone(),
                surfaces: on,
            });
        }
    }
    checks.push("every point lies on at most two isotropy surfaces, local models of type (b) or (d)".into());

    Ok(OrbifoldStructure {
        base: base.clone(),
        isotropy: iso
            .iter()
            .map(|(surface, m)| IsotropySurface {
                surface: surface.clone(),
                m: m.clone(),
            })
            .collect(),
        semi_regular: true,
        checks,
    })
}

/// Assigns `mᵢ = pⁱ` to the tracked surfaces in basis order.
pub fn prime_power_isotropy(base: &ManifoldModel, p: &BigInt) -> Vec<(String, BigInt)> {
    let mut m = BigInt::one();
    base.surfaces()
        .iter()
        .map(|s| {
            m *= p;
            (s.id.clone(), m.clone())
        })
        .collect()
}
