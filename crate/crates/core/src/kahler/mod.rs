//! The arithmetic chain bounding the number of disjoint complex curves that
//! can span `H²` of a Kähler surface with `b₁ = 0`.
//!
//! Everything is integer or rational arithmetic; the radicals `√(20g + 5)`
//! are compared by squaring.

mod steps;
mod verdict;

pub use steps::{
    canonical_coeffs, k_squared, m1_lower_bound, noether_k_squared, quadratic_check, slope_check, Branch, CurveConfig,
    QuadraticCheck, SlopeCheck,
};
pub use verdict::{
    obstruction_verdict, sasakian_excludability, ChainStep, Hypothesis, ObstructionVerdict, Verdict, VerdictOptions,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KahlerError {
    #[error("invalid curve configuration: {0}")]
    InvalidConfig(String),
    #[error("curve of genus 0 is outside the scope of the bound")]
    GenusZero,
    #[error("b must be at least 1")]
    EmptyConfiguration,
    #[error("second branch not excluded for g₁ = {0}")]
    SecondBranchNotExcluded(u32),
    #[error("genus {0} is below 2, the slope inequality needs g ≥ 2")]
    SlopeGenus(u32),
    #[error("corollary hypotheses unmet: {0}")]
    CorollaryHypotheses(String),
}
