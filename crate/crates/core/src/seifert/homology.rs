use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::{SeifertBundle, SeifertError};
use crate::decimal;
use crate::lattice::{is_primitive, surjects_onto_cyclic_sum, IntegerMatrix};
use crate::surgery::Pi1State;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub reason: String,
}

/// One summand `(ℤ/m)^e` of the torsion of `H₂(M)`, with `e = 2g(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSummand {
    pub surface: String,
    #[serde(with = "decimal::bigint")]
    pub modulus: BigInt,
    #[serde(with = "decimal::u32_str")]
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub h1_zero: bool,
    pub conditions: Vec<ConditionCheck>,
    pub assumptions: Vec<String>,
    /// Free rank of `H₂(M)`; filled in once `H₁(M) = 0` is established.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<String>,
    #[serde(default)]
    pub torsion: Vec<TorsionSummand>,
}

impl HomologyReport {
    pub fn rank_value(&self) -> Option<u64> {
        self.rank.as_deref().and_then(|r| r.parse().ok())
    }

    /// Order of the torsion subgroup, `∏ mᵢ^{2gᵢ}`.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion
            .iter()
            .fold(BigInt::one(), |acc, t| acc * Pow::pow(&t.modulus, t.exponent))
    }

    /// Human-readable `H₂`, omitting trivial summands.
    pub fn h2_display(&self) -> String {
        let mut parts = Vec::new();
        if let Some(r) = &self.rank {
            parts.push(format!("Z^{r}"));
        }
        for t in self.torsion.iter().filter(|t| t.exponent > 0) {
            parts.push(format!("(Z/{})^{}", t.modulus, t.exponent));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Evaluates the three conditions equivalent to `H₁(M, ℤ) = 0` for a
/// semi-regular bundle: `H₁(X) = 0`, surjectivity of
/// `H²(X, ℤ) → ⊕ H²(Dᵢ, ℤ/mᵢ)`, and primitivity of `c₁(M/μ)`.
pub fn kollar_h1_check(s: &SeifertBundle) -> Result<HomologyReport, SeifertError> {
    let orb = s.orbifold();
    if !orb.semi_regular {
        return Err(SeifertError::NotSemiRegular);
    }
    let base = &orb.base;
    let mut conditions = Vec::new();

    let (holds, reason) = match base.simply_connected() {
        Pi1State::Yes { .. } => (true, "base is simply connected".to_string()),
        Pi1State::No { surviving_generators } => (
            false,
            format!("base π₁ has surviving generators {surviving_generators:?}"),
        ),
        Pi1State::Unknown { reason } => (false, format!("base π₁ unknown: {reason}")),
    };
    conditions.push(ConditionCheck {
        name: "H1(X) = 0".into(),
        holds,
        reason,
    });

    let n = base.surfaces().len();
    let basis_ok = base.gram_is_unimodular() && base.b2() == Some(n as i64);
    let (holds, reason) = if !basis_ok {
        (
            false,
            format!(
                "tracked classes do not form a unimodular basis of H² ({} classes, b₂ = {})",
                n,
                base.b2().map_or("unknown".into(), |b| b.to_string())
            ),
        )
    } else {
        let cols: Vec<usize> = s
            .invariants()
            .iter()
            .map(|inv| base.index_of(&inv.surface))
            .collect::<Result<_, _>>()?;
        let pairing: IntegerMatrix = base.gram().select(&(0..n).collect::<Vec<_>>(), &cols);
        let moduli: Vec<BigInt> = s.invariants().iter().map(|inv| inv.m.clone()).collect();
        if surjects_onto_cyclic_sum(&pairing, &moduli)? {
            (
                true,
                format!(
                    "pairing matrix onto ⊕ ℤ/mᵢ over {} isotropy surfaces has trivial cokernel",
                    moduli.len()
                ),
            )
        } else {
            (false, "pairing matrix is not onto ⊕ ℤ/mᵢ".into())
        }
    };
    conditions.push(ConditionCheck {
        name: "H2(X) onto sum of H2(Di, Z/mi)".into(),
        holds,
        reason,
    });

    let c = s.c1_mu();
    let (holds, reason) = match is_primitive(&c) {
        Ok(true) => (true, "c₁(M/μ) has coordinate gcd 1".to_string()),
        Ok(false) => (
            false,
            format!("c₁(M/μ) has coordinate gcd {}", crate::lattice::gcd_all(&c)),
        ),
        Err(e) => (false, e.to_string()),
    };
    conditions.push(ConditionCheck {
        name: "c1(M/mu) primitive".into(),
        holds,
        reason,
    });

    Ok(HomologyReport {
        h1_zero: conditions.iter().all(|c| c.holds),
        conditions,
        assumptions: vec![
            "H²(X, ℤ) is torsion free and identified with the span of the tracked unimodular basis by Poincaré duality"
                .into(),
            "the homology criterion for semi-regular Seifert bundles is taken as given".into(),
        ],
        rank: None,
        torsion: Vec::new(),
    })
}

/// `H₂(M, ℤ) = ℤ^{b₂−1} ⊕ ⊕ (ℤ/mᵢ)^{2gᵢ}` once `H₁(M) = 0` holds.
pub fn homology_of_total(s: &SeifertBundle) -> Result<HomologyReport, SeifertError> {
    let mut report = kollar_h1_check(s)?;
    if !report.h1_zero {
        let failed: Vec<String> = report
            .conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{}: {}", c.name, c.reason))
            .collect();
        return Err(SeifertError::H1Nonzero(failed.join("; ")));
    }
    let base = &s.orbifold().base;
    let b2 = base.b2().expect("condition (1) gives a simply connected base");
    report.rank = Some((b2 - 1).to_string());
    report.torsion = s
        .invariants()
        .iter()
        .map(|inv| {
            let genus = base.surface(&inv.surface).map(|d| d.genus)?;
            Ok(TorsionSummand {
                surface: inv.surface.clone(),
                modulus: inv.m.clone(),
                exponent: 2 * genus,
            })
        })
        .collect::<Result<_, SeifertError>>()?;
    Ok(report)
}
