use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::SurgeryError;
use crate::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceFlag {
    Symplectic,
    Lagrangian,
    Sphere,
    Torus,
    Section,
    Fiber,
    Exceptional,
}

impl fmt::Display for SurfaceFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Symplectic => "symplectic",
            Self::Lagrangian => "lagrangian",
            Self::Sphere => "sphere",
            Self::Torus => "torus",
            Self::Section => "section",
            Self::Fiber => "fiber",
            Self::Exceptional => "exceptional",
        };
        f.write_str(s)
    }
}

/// An embedded closed surface tracked by a [`ManifoldModel`](super::ManifoldModel).
///
/// `self_intersection` mirrors the Gram diagonal; the owning model keeps the
/// two in sync.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub id: String,
    #[serde(with = "decimal::u32_str")]
    pub genus: u32,
    #[serde(with = "decimal::bigint")]
    pub self_intersection: BigInt,
    pub flags: BTreeSet<SurfaceFlag>,
    pub provenance: Vec<String>,
    /// Generators of an abelian π₁ hit by the inclusion of this surface.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub pi1_image: BTreeSet<String>,
    /// The complement of this surface is simply connected.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complement_simply_connected: bool,
}

impl SurfaceClass {
    pub fn new(id: impl Into<String>, genus: u32, flags: &[SurfaceFlag]) -> Self {
        let mut s = Self {
            id: id.into(),
            genus,
            self_intersection: BigInt::zero(),
            flags: flags.iter().copied().collect(),
            provenance: Vec::new(),
            pi1_image: BTreeSet::new(),
            complement_simply_connected: false,
        };
        s.refresh_topology_flags();
        s
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance.push(note.into());
        self
    }

    pub fn with_pi1_image(mut self, gens: &[&str]) -> Self {
        self.pi1_image = gens.iter().map(|g| g.to_string()).collect();
        self
    }

    pub fn has(&self, flag: SurfaceFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn is_symplectic(&self) -> bool {
        self.has(SurfaceFlag::Symplectic)
    }

    pub fn is_lagrangian(&self) -> bool {
        self.has(SurfaceFlag::Lagrangian)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }

    /// Sphere/torus flags follow the genus.
    pub(crate) fn refresh_topology_flags(&mut self) {
        self.flags.remove(&SurfaceFlag::Sphere);
        self.flags.remove(&SurfaceFlag::Torus);
        match self.genus {
            0 => {
                self.flags.insert(SurfaceFlag::Sphere);
            }
            1 => {
                self.flags.insert(SurfaceFlag::Torus);
            }
            _ => {}
        }
    }

    pub(crate) fn validate(&self) -> Result<(), SurgeryError> {
        let bad = |why: &str| {
            Err(SurgeryError::InvalidSurface {
                id: self.id.clone(),
                reason: why.to_string(),
            })
        };
        if self.id.is_empty() {
            return bad("empty id");
        }
        if self.is_symplectic() && self.is_lagrangian() {
            return bad("flagged both symplectic and lagrangian");
        }
        if self.has(SurfaceFlag::Sphere) && self.genus != 0 {
            return bad("sphere flag with nonzero genus");
        }
        if self.has(SurfaceFlag::Torus) && self.genus != 1 {
            return bad("torus flag with genus other than 1");
        }
        Ok(())
    }
}
