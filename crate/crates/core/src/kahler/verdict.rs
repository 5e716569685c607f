use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{m1_lower_bound, noether_k_squared, quadratic_check, slope_check, KahlerError};
use crate::decimal;
use crate::lattice::prime_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepValue {
    pub symbol: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub name: String,
    pub values: Vec<StepValue>,
    pub conclusion: String,
    pub anchor: String,
}

impl ChainStep {
    fn new(name: &str, anchor: &str, values: &[(&str, String)], conclusion: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            values: values
                .iter()
                .map(|(s, v)| StepValue {
                    symbol: s.to_string(),
                    value: v.clone(),
                })
                .collect(),
            conclusion: conclusion.into(),
            anchor: anchor.into(),
        }
    }

    pub fn value(&self, symbol: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|v| v.symbol == symbol)
            .map(|v| v.value.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub verdict: Verdict,
    pub b: String,
    pub g: String,
    pub hypotheses: Vec<Hypothesis>,
    pub chain: Vec<ChainStep>,
    pub reasons: Vec<String>,
}

impl ObstructionVerdict {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn step(&self, name: &str) -> Option<&ChainStep> {
        self.chain.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Accept configurations made only of genus-1 curves, where the bound is
    /// asserted without a complete argument.
    pub genus_one_remark: bool,
}

const ANCHOR_NOETHER: &str = "Noether formula with chi(O_S) = 1 and c2 = 2 + b";
const ANCHOR_ADJUNCTION: &str = "adjunction equality K.D + D^2 = 2g - 2 summed over the curve basis";
const ANCHOR_QUADRATIC: &str = "quadratic bound m1 >= 2g1 + 3 for g1 <= 3";
const ANCHOR_SLOPE: &str = "slope inequality 4 - 4/g <= lambda for relatively minimal fibrations";
const ANCHOR_GENUS_ONE: &str = "genus-one extension of the curve bound, stated without a complete argument";
const ANCHOR_FORCED_BASE: &str = "homology of a semi-regular Seifert bundle forces the ramification curves";

/// Runs the decision chain for `b` disjoint curves of the given genera
/// spanning `H²` of a Kähler surface with `b₁ = 0`. The self-intersections
/// `mᵢ` (`i ≥ 2`) are quantified away. Never reports that a surface exists.
pub fn obstruction_verdict(b: u64, genera: &[u32], opts: VerdictOptions) -> Result<ObstructionVerdict, KahlerError> {
    if b == 0 {
        return Err(KahlerError::EmptyConfiguration);
    }
    if genera.len() as u64 != b {
        return Err(KahlerError::InvalidConfig(format!(
            "b = {b} but {} genera",
            genera.len()
        )));
    }
    if genera.contains(&0) {
        return Err(KahlerError::GenusZero);
    }
    let g = *genera.iter().max().expect("nonempty");
    let above_one = genera.iter().filter(|x| **x > 1).count();
    let hypotheses = vec![
        Hypothesis {
            name: "at least two curves of genus > 1".into(),
            holds: above_one >= 2,
            detail: format!("{above_one} curves of genus > 1"),
        },
        Hypothesis {
            name: "maximal genus at most 3".into(),
            holds: g <= 3,
            detail: format!("g = {g}"),
        },
    ];
    let mut out = ObstructionVerdict {
        verdict: Verdict::Inconclusive,
        b: b.to_string(),
        g: g.to_string(),
        hypotheses,
        chain: Vec::new(),
        reasons: Vec::new(),
    };
    let bound = 2 * u64::from(g) + 3;
    let gate = out.hypotheses.iter().all(|h| h.holds);
    let all_one = g == 1;

    if !gate {
        if all_one && opts.genus_one_remark {
            return Ok(genus_one_chain(out, b));
        }
        for h in out.hypotheses.iter().filter(|h| !h.holds) {
            out.reasons.push(format!("hypothesis fails: {} ({})", h.name, h.detail));
        }
        if all_one {
            out.reasons
                .push("all curves have genus 1; the genus-one extension is opt-in".into());
        }
        return Ok(out);
    }
    if b <= bound {
        out.reasons
            .push(format!("b = {b} ≤ 2g + 3 = {bound}, no contradiction"));
        return Ok(out);
    }

    let k2 = noether_k_squared(b)?;
    out.chain.push(ChainStep::new(
        "noether",
        ANCHOR_NOETHER,
        &[
            ("b", b.to_string()),
            ("c2", (b + 2).to_string()),
            ("K^2", k2.to_string()),
        ],
        format!("K² = 10 − b = {k2}"),
    ));

    // each term with i ≥ 2 is at most −1; a curve of genus ≥ 2 among them
    // (there is one whichever curve is D₁) contributes at most −3
    let rest: BigInt = -(BigInt::from(b) + BigInt::from(1));
    let t1 = &k2 - &rest;
    out.chain.push(ChainStep::new(
        "adjunction",
        ANCHOR_ADJUNCTION,
        &[
            ("sum_{i>=2} upper bound", rest.to_string()),
            ("(2g1-2-m1)^2/m1 lower bound", t1.to_string()),
        ],
        format!("(2g₁ − 2 − m₁)²/m₁ ≥ {t1} ≥ 10, i.e. m₁² − (4g₁ + 6)m₁ + 4(g₁ − 1)² ≥ 0"),
    ));

    let m1 = m1_lower_bound(g)?;
    let at_one = quadratic_check(g, &BigInt::from(1));
    out.chain.push(ChainStep::new(
        "quadratic",
        ANCHOR_QUADRATIC,
        &[
            ("g1", g.to_string()),
            ("20g1+5", (20 * u64::from(g) + 5).to_string()),
            ("(2g1+2)^2", ((2 * u64::from(g) + 2).pow(2)).to_string()),
            ("quadratic at m1=1", at_one.value.to_string()),
            ("m1 lower bound", m1.to_string()),
        ],
        format!("lower branch empty for m₁ ≥ 1, so m₁ ≥ {m1}; the pencil fibres have genus g₁ = g"),
    ));

    let slope = slope_check(b, g, &m1)?;
    out.chain.push(ChainStep::new(
        "slope",
        ANCHOR_SLOPE,
        &[
            ("4g-4", slope.lower.to_string()),
            ("2-b-m1+8g", slope.relative_k_squared_plus.to_string()),
            ("K^2_rel", slope.relative_k_squared.to_string()),
            ("chi_pi", slope.chi.to_string()),
            ("lambda", decimal::format_rational(&slope.lambda)),
        ],
        if slope.holds {
            "slope inequality satisfied".to_string()
        } else {
            format!(
                "{} ≰ {}; the right side only decreases for larger m₁",
                slope.lower, slope.relative_k_squared_plus
            )
        },
    ));
    debug_assert!(!slope.holds, "b > 2g + 3 forces the slope failure");
    if !slope.holds {
        out.verdict = Verdict::Obstructed;
        out.reasons.push(format!("b = {b} > 2g + 3 = {bound}"));
    }
    Ok(out)
}

fn genus_one_chain(mut out: ObstructionVerdict, b: u64) -> ObstructionVerdict {
    let k2 = BigInt::from(10) - BigInt::from(b);
    out.chain.push(ChainStep::new(
        "noether",
        ANCHOR_NOETHER,
        &[
            ("b", b.to_string()),
            ("c2", (b + 2).to_string()),
            ("K^2", k2.to_string()),
        ],
        format!("K² = 10 − b = {k2}"),
    ));
    out.chain.push(ChainStep::new(
        "adjunction",
        ANCHOR_ADJUNCTION,
        &[
            (
                "sum_{i>=2} upper bound",
                (BigInt::from(1) - BigInt::from(b)).to_string(),
            ),
            ("m1 lower bound", "9".into()),
        ],
        "with all gᵢ = 1 the first term is m₁, so m₁ ≥ 9 ≥ 1",
    ));
    out.chain.push(ChainStep::new(
        "genus-one",
        ANCHOR_GENUS_ONE,
        &[("2g+3", "5".into())],
        "b ≤ 2g + 3 taken as stated",
    ));
    if b > 5 {
        out.verdict = Verdict::Obstructed;
        out.reasons
            .push(format!("b = {b} > 5 under the opt-in genus-one extension"));
    } else {
        out.reasons.push(format!("b = {b} ≤ 5, no contradiction"));
    }
    out
}

/// From `H₁(M) = 0` and `H₂(M) = ℤᵏ ⊕ ⊕ᵢ₌₁ᵏ⁺¹ (ℤ/pⁱ)^{2gᵢ}`, derives the
/// curve data any semi-regular Sasakian structure would force on its
/// Kähler base, and runs [`obstruction_verdict`] on it.
pub fn sasakian_excludability(
    h1_zero: bool,
    rank: u64,
    torsion: &[(BigInt, u32)],
    opts: VerdictOptions,
) -> Result<ObstructionVerdict, KahlerError> {
    let fail = |m: String| KahlerError::CorollaryHypotheses(m);
    if !h1_zero {
        return Err(fail("H₁(M) is not known to vanish".into()));
    }
    if torsion.len() as u64 != rank + 1 {
        return Err(fail(format!(
            "{} torsion summands, expected k + 1 = {}",
            torsion.len(),
            rank + 1
        )));
    }
    let mut prime: Option<BigInt> = None;
    let mut genera = vec![0u32; torsion.len()];
    let mut seen = BTreeSet::new();
    for (modulus, exponent) in torsion {
        let (p, i) = prime_power(modulus).ok_or_else(|| fail(format!("{modulus} is not a prime power")))?;
        match &prime {
            None => prime = Some(p.clone()),
            Some(q) if *q != p => return Err(fail(format!("moduli involve both {q} and {p}"))),
            _ => {}
        }
        if i as u64 > rank + 1 || !seen.insert(i) {
            return Err(fail(format!(
                "exponent {i} of {modulus} repeated or outside 1..={}",
                rank + 1
            )));
        }
        if *exponent == 0 || exponent % 2 == 1 {
            return Err(fail(format!(
                "(ℤ/{modulus})^{exponent} is not of the form 2g with g ≥ 1"
            )));
        }
        genera[i as usize - 1] = exponent / 2;
    }
    let p = prime.expect("at least one summand");
    let b = rank + 1;
    let mut verdict = obstruction_verdict(b, &genera, opts)?;
    let listed: Vec<String> = genera.iter().map(|g| g.to_string()).collect();
    verdict.chain.insert(
        0,
        ChainStep::new(
            "forced-base",
            ANCHOR_FORCED_BASE,
            &[("p", p.to_string()), ("b", b.to_string()), ("genera", listed.join(","))],
            format!("a semi-regular Sasakian structure needs a Kähler base with H₁ = 0, b₂ = {b} and {b} disjoint smooth curves of these genera"),
        ),
    );
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_genera() -> Vec<u32> {
        let mut g = Vec::new();
        for _ in 0..3 {
            g.extend([1; 9]);
            g.push(3);
        }
        g.extend([1, 1, 2, 1, 1, 2]);
        g
    }

    #[test]
    fn x_is_obstructed() {
        let v = obstruction_verdict(36, &x_genera(), VerdictOptions::default()).unwrap();
        assert!(v.is_obstructed());
        assert_eq!(v.step("noether").unwrap().value("K^2"), Some("-26"));
        assert_eq!(v.step("quadratic").unwrap().value("m1 lower bound"), Some("9"));
        let slope = v.step("slope").unwrap();
        assert_eq!(
            (slope.value("4g-4"), slope.value("2-b-m1+8g")),
            (Some("8"), Some("-19"))
        );
    }

    #[test]
    fn boundary_is_inconclusive() {
        let v = obstruction_verdict(9, &[3, 3, 1, 1, 1, 1, 1, 1, 1], VerdictOptions::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(v.chain.is_empty());
    }

    #[test]
    fn genus_one_gate() {
        let v = obstruction_verdict(12, &[1; 12], VerdictOptions::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(v.reasons.iter().any(|r| r.contains("opt-in")));
        let w = obstruction_verdict(12, &[1; 12], VerdictOptions { genus_one_remark: true }).unwrap();
        assert!(w.is_obstructed());
        assert!(w.step("genus-one").is_some());
    }

    #[test]
    fn excludability_from_homology() {
        let torsion: Vec<(BigInt, u32)> = x_genera()
            .iter()
            .enumerate()
            .map(|(i, g)| (BigInt::from(2).pow(i as u32 + 1), 2 * g))
            .collect();
        let v = sasakian_excludability(true, 35, &torsion, VerdictOptions::default()).unwrap();
        assert!(v.is_obstructed());
        assert_eq!(v.chain[0].value("b"), Some("36"));

        let single = sasakian_excludability(true, 0, &[(BigInt::from(2), 2)], VerdictOptions::default()).unwrap();
        assert_eq!(single.verdict, Verdict::Inconclusive);
        assert_eq!(single.b, "1");

        let repeated = [(BigInt::from(2), 2), (BigInt::from(2), 2)];
        assert!(matches!(
            sasakian_excludability(true, 1, &repeated, VerdictOptions::default()),
            Err(KahlerError::CorollaryHypotheses(_))
        ));
        let mixed = [(BigInt::from(2), 2), (BigInt::from(9), 2)];
        assert!(sasakian_excludability(true, 1, &mixed, VerdictOptions::default()).is_err());
        assert!(sasakian_excludability(false, 0, &[(BigInt::from(2), 2)], VerdictOptions::default()).is_err());
    }

    #[test]
    fn genus_zero_is_out_of_scope() {
        assert_eq!(
            obstruction_verdict(2, &[0, 1], VerdictOptions::default()),
            Err(KahlerError::GenusZero)
        );
    }
}
