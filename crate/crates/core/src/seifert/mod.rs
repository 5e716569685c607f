//! Seifert circle bundles over 4-orbifolds whose underlying space is one of
//! the surgery ledgers.
//!
//! `H²(X, ℤ)` is identified with the lattice spanned by the tracked surfaces,
//! which requires the tracked Gram matrix to be unimodular of rank `b₂`.

mod bundle;
mod homology;
mod local;
mod orbifold;
mod pipeline;
mod twist;

pub use bundle::{OrbitInvariant, SeifertBundle, SeifertManifest, BUNDLE_SCHEMA};
pub use homology::{homology_of_total, kollar_h1_check, ConditionCheck, HomologyReport, TorsionSummand};
pub use local::{classify_local_model, LocalCase, LocalModel};
pub use orbifold::{prime_power_isotropy, validate_orbifold, IsotropySurface, OrbifoldStructure};
pub use pipeline::{prime_power_pipeline, PrimePowerRun};
pub use twist::{certify_kcontact, choose_primitive_twist, KContactCertificate, Twist, DEFAULT_TWIST_BOUND};

use thiserror::Error;

use crate::lattice::LatticeError;
use crate::surgery::SurgeryError;

#[derive(Debug, Error)]
pub enum SeifertError {
    #[error("isotropy order must be at least 1")]
    ZeroOrder,
    #[error("non-effective action: gcd({j1}, {j2}, {m}) > 1")]
    NonEffective { m: u64, j1: u64, j2: u64 },
    #[error("multiplicity {m} of {surface} is smaller than 2")]
    BadMultiplicity { surface: String, m: String },
    #[error("surface {0} is listed twice")]
    DuplicateIsotropy(String),
    #[error("isotropy surface {0} is not symplectic")]
    NotSymplectic(String),
    #[error("isotropy surfaces {a} and {b} meet negatively ({value})")]
    NegativeIntersection { a: String, b: String, value: String },
    #[error("gcd clash: {a} (m = {ma}) meets {b} (m = {mb}) but gcd = {gcd}")]
    GcdClash {
        a: String,
        b: String,
        ma: String,
        mb: String,
        gcd: String,
    },
    #[error("marked point {point} lies on three isotropy surfaces {surfaces:?}")]
    ThreeSurfacesThroughPoint { point: String, surfaces: Vec<String> },
    #[error("theorem hypothesis (semi-regular) unmet")]
    NotSemiRegular,
    #[error("H₁(M) may be nonzero: {0}")]
    H1Nonzero(String),
    #[error("invalid orbit invariant: {0}")]
    InvalidInvariant(String),
    #[error("twist hypothesis unmet: {0}")]
    TwistHypothesis(String),
    #[error("no primitive twist with |a|∞ ≤ {bound} around {centre} ({tried} candidates tried)")]
    TwistSearchExhausted { bound: u32, tried: u64, centre: String },
    #[error("Chern class {chern} differs from the symplectic class {omega}")]
    ClassMismatch { chern: String, omega: String },
    #[error("class has {got} coordinates, basis has {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("cannot certify: {0}")]
    Certification(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn format_vector<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
