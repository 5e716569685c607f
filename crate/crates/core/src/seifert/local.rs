use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SeifertError;

/// Position of a point of `ℂ²/ℤ_m` relative to the isotropy surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCase {
    /// Trivial isotropy.
    Regular,
    /// Isolated singular point, cone over a lens space.
    A,
    /// Smooth point where two isotropy surfaces cross.
    B,
    /// Two isotropy surfaces crossing at a singular point.
    C,
    /// Smooth point on one isotropy surface.
    D,
    /// Singular point on one isotropy surface.
    E,
}

impl fmt::Display for LocalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Regular => "regular",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
            Self::E => "e",
        };
        f.write_str(s)
    }
}

/// Local model of the action `ξ·(z₁, z₂) = (ξ^{j₁}z₁, ξ^{j₂}z₂)` of `ℤ_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalModel {
    pub m: u64,
    pub j1: u64,
    pub j2: u64,
    pub m1: u64,
    pub m2: u64,
    /// Order of the fundamental group of the link.
    pub d: u64,
    pub case: LocalCase,
    pub smooth: bool,
}

impl LocalModel {
    /// Number of isotropy surfaces through the point.
    pub fn isotropy_surfaces(&self) -> usize {
        usize::from(self.m1 > 1) + usize::from(self.m2 > 1)
    }
}

/// Classifies the quotient point of `ℂ²/ℤ_m`. Exponents are reduced mod `m`.
pub fn classify_local_model(m: u64, j1: u64, j2: u64) -> Result<LocalModel, SeifertError> {
    if m == 0 {
        return Err(SeifertError::ZeroOrder);
    }
    let (j1, j2) = (j1 % m, j2 % m);
    if m == 1 {
        return Ok(LocalModel {
            m,
            j1,
            j2,
            m1: 1,
            m2: 1,
            d: 1,
            case: LocalCase::Regular,
            smooth: true,
        });
    }
    if j1.gcd(&j2).gcd(&m) != 1 {
        return Err(SeifertError::NonEffective { m, j1, j2 });
    }
    let (m1, m2) = (j1.gcd(&m), j2.gcd(&m));
    debug_assert_eq!(m1.gcd(&m2), 1);
    let d = m / (m1 * m2);
    let case = match (m1 > 1, m2 > 1, d > 1) {
        (false, false, _) => LocalCase::A,
        (true, true, false) => LocalCase::B,
        (true, true, true) => LocalCase::C,
        (_, _, false) => LocalCase::D,
        (_, _, true) => LocalCase::E,
    };
    Ok(LocalModel {
        m,
        j1,
        j2,
        m1,
        m2,
        d,
        case,
        smooth: d == 1,
    })
}
