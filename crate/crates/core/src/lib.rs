//! Exact bookkeeping for building symplectic 4-manifolds by surgery, for
//! Seifert circle bundles over the resulting orbifolds, and for the
//! arithmetic obstruction that rules out Kähler bases with many disjoint
//! curves.
//!
//! * [`lattice`]: integer matrices, Smith normal form, signatures.
//! * [`surgery`]: the manifold ledger and blow-up / resolution / fiber sum moves.
//! * [`seifert`]: local models, orbit invariants, Chern classes, homology.
//! * [`kahler`]: the Noether / adjunction / slope decision chain.

pub mod decimal;
pub mod kahler;
pub mod lattice;
pub mod seifert;
pub mod surgery;
