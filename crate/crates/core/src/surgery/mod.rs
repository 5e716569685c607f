//! Symbolic 4-manifold ledger and the surgery moves that act on it.
//!
//! A [`ManifoldModel`] tracks the Euler characteristic, a fundamental group
//! state and the Gram matrix of a list of embedded surfaces. Every operation
//! returns a new model and re-checks the ledger invariants.

mod builders;
mod gompf;
pub mod lagrangian;
mod model;
mod ops;
mod surface;

pub use builders::{
    build_manifold_x, build_manifold_z, new_e1, new_t4, stated_generator_discrepancies, GeneratorDiscrepancy,
    STATED_GENERATORS,
};
pub use gompf::{gompf_sum, GluingSpec, Pairing};
pub use model::{AuxiliaryKind, AuxiliaryObject, Manifest, ManifoldModel, MarkedPoint, Pi1State, MANIFEST_SCHEMA};
pub use ops::DisjoinNames;
pub use surface::{SurfaceClass, SurfaceFlag};

use crate::lattice::LatticeError;

#[derive(Debug, thiserror::Error)]
pub enum SurgeryError {
    #[error("invalid surface {id}: {reason}")]
    InvalidSurface { id: String, reason: String },
    #[error("unknown surface {0}")]
    UnknownSurface(String),
    #[error("duplicate surface id {0}")]
    DuplicateId(String),
    #[error("surfaces {a} and {b} do not meet (pairing {pairing}, need at least {needed})")]
    NotMeeting {
        a: String,
        b: String,
        pairing: String,
        needed: String,
    },
    #[error("nothing to resolve: {a}·{b} = 0")]
    NothingToResolve { a: String, b: String },
    #[error("negative intersection {a}·{b} = {value}")]
    NegativeIntersection { a: String, b: String, value: String },
    #[error("surface {0} is not symplectic")]
    NotSymplectic(String),
    #[error("surface {0} is not lagrangian")]
    NotLagrangian(String),
    #[error("no homologous disjoint displacement tracked for {id} (self-intersection {square})")]
    NoDisplacement { id: String, square: String },
    #[error("Lemma hypothesis fails: {0}")]
    LemmaHypothesis(String),
    #[error("blow-up through {0:?} needs a marked point lying on exactly those surfaces")]
    TriplePoint(Vec<String>),
    #[error("neck mismatch: {0}")]
    NeckMismatch(String),
    #[error("pairing count for {id}: listed {listed}, intersection with neck is {actual}")]
    PairingCount { id: String, listed: String, actual: String },
    #[error("class does not survive the sum: {id} meets the neck {neck} ({value} points) but is not enrolled")]
    ClassDoesNotSurvive { id: String, neck: String, value: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ledger invariant violated: {0}")]
    Invariant(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
