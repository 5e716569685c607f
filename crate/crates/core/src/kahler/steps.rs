use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::KahlerError;
use crate::decimal;

/// Disjoint curves `D₁, …, D_b` spanning `H²`, with `D₁² > 0` and all other
/// squares negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub genera: Vec<u32>,
    #[serde(with = "decimal::bigint_vec")]
    pub self_intersections: Vec<BigInt>,
}

impl CurveConfig {
    pub fn new(genera: Vec<u32>, self_intersections: Vec<BigInt>) -> Result<Self, KahlerError> {
        if genera.is_empty() {
            return Err(KahlerError::EmptyConfiguration);
        }
        if genera.len() != self_intersections.len() {
            return Err(KahlerError::InvalidConfig(format!(
                "{} genera but {} self-intersections",
                genera.len(),
                self_intersections.len()
            )));
        }
        if genera.contains(&0) {
            return Err(KahlerError::GenusZero);
        }
        if !self_intersections[0].is_positive() {
            return Err(KahlerError::InvalidConfig("D₁² must be positive".into()));
        }
        if let Some(i) = self_intersections[1..].iter().position(|d| !d.is_negative()) {
            return Err(KahlerError::InvalidConfig(format!(
                "D{}² must be negative for signature (1, b − 1)",
                i + 2
            )));
        }
        Ok(Self {
            genera,
            self_intersections,
        })
    }

    /// `m₁, …, m_b` with `D₁² = m₁`, `Dᵢ² = −mᵢ`.
    pub fn from_multiplicities(genera: Vec<u32>, m: &[i64]) -> Result<Self, KahlerError> {
        let d = m
            .iter()
            .enumerate()
            .map(|(i, x)| BigInt::from(if i == 0 { *x } else { -*x }))
            .collect();
        Self::new(genera, d)
    }

    pub fn b(&self) -> usize {
        self.genera.len()
    }

    fn adjunction_numerators(&self) -> impl Iterator<Item = (BigInt, &BigInt)> {
        self.genera
            .iter()
            .zip(&self.self_intersections)
            .map(|(g, d)| (BigInt::from(2 * i64::from(*g) - 2) - d, d))
    }
}

/// Coefficients `(2gᵢ − 2 − Dᵢ²)/Dᵢ²` of `K_S` in the curve basis.
pub fn canonical_coeffs(c: &CurveConfig) -> Vec<BigRational> {
    c.adjunction_numerators()
        .map(|(n, d)| BigRational::new(n, d.clone()))
        .collect()
}

/// `K_S² = Σ (2gᵢ − 2 − Dᵢ²)²/Dᵢ²`.
pub fn k_squared(c: &CurveConfig) -> BigRational {
    c.adjunction_numerators()
        .map(|(n, d)| BigRational::new(&n * &n, d.clone()))
        .fold(BigRational::zero(), |a, x| a + x)
}

/// `K_S² = 10 − b` from Noether's formula with `χ(O_S) = 1`, `c₂ = 2 + b`.
pub fn noether_k_squared(b: u64) -> Result<BigInt, KahlerError> {
    if b == 0 {
        return Err(KahlerError::EmptyConfiguration);
    }
    Ok(BigInt::from(10) - BigInt::from(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `m₁ ≥ 2g₁ + 3 + √(20g₁ + 5)`
    Upper,
    /// `m₁ ≤ 2g₁ + 3 − √(20g₁ + 5)`
    Lower,
    Neither,
}

/// `m₁² − (4g₁ + 6)m₁ + 4(g₁ − 1)² ≥ 0` for a specific `m₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCheck {
    #[serde(with = "decimal::u32_str")]
    pub g1: u32,
    #[serde(with = "decimal::bigint")]
    pub m1: BigInt,
    #[serde(with = "decimal::bigint")]
    pub value: BigInt,
    pub feasible: bool,
    pub branch: Branch,
}

/// Decides the quadratic for `m₁` exactly. Comparisons with
/// `2g₁ + 3 ± √(20g₁ + 5)` are done by squaring the integer side.
pub fn quadratic_check(g1: u32, m1: &BigInt) -> QuadraticCheck {
    let g = BigInt::from(g1);
    let centre = BigInt::from(2) * &g + 3;
    let radicand = BigInt::from(20) * &g + 5;
    let value: BigInt = m1 * m1 - (BigInt::from(4) * &g + 6) * m1 + BigInt::from(4) * (&g - 1) * (&g - 1);
    let above: BigInt = m1 - &centre;
    let below: BigInt = &centre - m1;
    let branch = if !above.is_negative() && &above * &above >= radicand {
        Branch::Upper
    } else if !below.is_negative() && &below * &below >= radicand {
        Branch::Lower
    } else {
        Branch::Neither
    };
    let feasible = !value.is_negative();
    debug_assert_eq!(feasible, branch != Branch::Neither);
    QuadraticCheck {
        g1,
        m1: m1.clone(),
        value,
        feasible,
        branch,
    }
}

/// `m₁ ≥ 2g₁ + 3`, valid when the lower branch contains no `m₁ ≥ 1`, which
/// holds exactly for `1 ≤ g₁ ≤ 3`.
pub fn m1_lower_bound(g1: u32) -> Result<BigInt, KahlerError> {
    if g1 == 0 {
        return Err(KahlerError::GenusZero);
    }
    // the lower branch is nonempty in m₁ ≥ 1 iff m₁ = 1 lies in it
    if quadratic_check(g1, &BigInt::from(1)).branch == Branch::Lower {
        return Err(KahlerError::SecondBranchNotExcluded(g1));
    }
    Ok(BigInt::from(2 * u64::from(g1) + 3))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeCheck {
    /// `4g − 4`
    #[serde(with = "decimal::bigint")]
    pub lower: BigInt,
    /// `2 − b − m₁ + 8g`
    #[serde(with = "decimal::bigint")]
    pub relative_k_squared_plus: BigInt,
    /// `K²_{S̃/ℙ¹} = 10 − b − m₁ + 8g − 8`
    #[serde(with = "decimal::bigint")]
    pub relative_k_squared: BigInt,
    /// `χ_π = g`
    #[serde(with = "decimal::bigint")]
    pub chi: BigInt,
    /// `λ_π = (2 − b − m₁ + 8g)/g`
    #[serde(with = "decimal::rational")]
    pub lambda: BigRational,
    pub holds: bool,
}

/// Lower slope bound `4 − 4/g ≤ λ_π` for the pencil fibration, multiplied
/// through by `g`.
pub fn slope_check(b: u64, g: u32, m1: &BigInt) -> Result<SlopeCheck, KahlerError> {
    if g < 2 {
        return Err(KahlerError::SlopeGenus(g));
    }
    let gb = BigInt::from(g);
    let lower = BigInt::from(4) * &gb - 4;
    let rhs = BigInt::from(2) - BigInt::from(b) - m1 + BigInt::from(8) * &gb;
    Ok(SlopeCheck {
        holds: lower <= rhs,
        lambda: BigRational::new(rhs.clone(), gb.clone()),
        relative_k_squared: BigInt::from(10) - BigInt::from(b) - m1 + BigInt::from(8) * &gb - 8,
        chi: gb,
        lower,
        relative_k_squared_plus: rhs,
    })
}
