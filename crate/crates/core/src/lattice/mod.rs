//! Exact integer linear algebra.
//!
//! Nothing in here touches floating point. Pivots in Smith reductions grow
//! quickly, so all entries are arbitrary precision.

mod arith;
mod matrix;
mod signature;
mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use arith::{gcd_all, is_prime, is_primitive, isqrt, lcm_all, mod_inverse, prime_power, surjects_onto_cyclic_sum};
pub use matrix::IntegerMatrix;
pub use signature::{diagonal_signature, signature, SignatureTriple};
pub use snf::{cokernel, smith_normal_form, Cokernel, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("indeterminate primitivity: zero vector")]
    IndeterminatePrimitivity,
    #[error("orbit invariant not coprime: gcd({value}, {modulus}) != 1")]
    NotCoprime { value: BigInt, modulus: BigInt },
    #[error("modulus {0} is smaller than 2")]
    BadModulus(BigInt),
}
