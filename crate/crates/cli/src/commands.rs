use std::path::Path;

use kcontact_core::kahler::{obstruction_verdict, sasakian_excludability, ObstructionVerdict, VerdictOptions};
use kcontact_core::lattice::SignatureTriple;
use kcontact_core::seifert::{classify_local_model, prime_power_pipeline, HomologyReport};
use kcontact_core::surgery::lagrangian::verify_lagrangian_config;
use kcontact_core::surgery::{build_manifold_x, build_manifold_z, stated_generator_discrepancies, ManifoldModel};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::report::{read_json, to_value, unwrap_report, Check, CliError, RunReport, PLUMBING};

const ANCHOR_X: &str = "construction of X = Z # 2 CP2-bar with 36 disjoint symplectic generators";
const ANCHOR_Z: &str = "triple fiber sum of T4 with E(1) along T12, T13, T14";
const ANCHOR_LAGRANGIAN: &str = "Lagrangian cylinders and tori in the T4 coordinate model";
const ANCHOR_ORBIFOLD: &str = "smooth orbifold structure from disjoint or coprime isotropy surfaces";
const ANCHOR_HOMOLOGY: &str = "homology criterion for semi-regular Seifert bundles";
const ANCHOR_TWIST: &str = "primitive twist of the Seifert bundle by density of admissible classes";
const ANCHOR_KCONTACT: &str = "K-contact structure on Seifert bundles over symplectic orbifolds";
const ANCHOR_LOCAL: &str = "local models of cyclic quotient points";

/// Echo of the base manifold carried through the pipeline.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct BaseSummary {
    name: String,
    euler_characteristic: String,
    b2: Option<String>,
    surfaces: String,
}

impl BaseSummary {
    fn of(m: &ManifoldModel) -> Self {
        Self {
            name: m.name().to_string(),
            euler_characteristic: m.euler_characteristic().to_string(),
            b2: m.b2().map(|b| b.to_string()),
            surfaces: m.surfaces().len().to_string(),
        }
    }
}

pub fn build_x(stop_after_z: bool, verify_lagrangian: bool) -> RunReport {
    let inputs = json!({
        "stop_after": if stop_after_z { "z" } else { "x" },
        "verify_lagrangian": verify_lagrangian,
    });
    let built = if stop_after_z {
        build_manifold_z()
    } else {
        build_manifold_x()
    };
    let anchor = if stop_after_z { ANCHOR_Z } else { ANCHOR_X };
    let m = match built {
        Ok(m) => m,
        Err(e) => {
            let check = Check::new("construction", false, anchor, e.to_string());
            return RunReport::new("build-x", inputs, Value::Null, vec![check]);
        }
    };

    let chi = m.euler_characteristic();
    let b2 = m.b2();
    let n = m.surfaces().len();
    let mut checks = Vec::new();
    let mut results = json!({ "base": BaseSummary::of(&m) });
    if stop_after_z {
        checks.push(Check::new("chi(Z) = 36", chi == 36, ANCHOR_Z, format!("chi = {chi}")));
        checks.push(Check::new(
            "b2(Z) = 34",
            b2 == Some(34),
            ANCHOR_Z,
            format!("b2 = {b2:?}"),
        ));
        checks.push(Check::new(
            "Z simply connected",
            m.simply_connected().is_yes(),
            ANCHOR_Z,
            "",
        ));
        checks.push(Check::new(
            "tracked Gram of Z unimodular",
            m.gram_is_unimodular(),
            ANCHOR_Z,
            format!("{n} surfaces"),
        ));
    } else {
        let sig = m.gram_signature();
        checks.push(Check::new("chi(X) = 38", chi == 38, ANCHOR_X, format!("chi = {chi}")));
        checks.push(Check::new(
            "b2(X) = 36",
            b2 == Some(36),
            ANCHOR_X,
            format!("b2 = {b2:?}"),
        ));
        checks.push(Check::new(
            "36 symplectic surfaces",
            n == 36 && m.surfaces().iter().all(|s| s.is_symplectic()),
            ANCHOR_X,
            format!("{n} surfaces"),
        ));
        checks.push(Check::new(
            "pairwise disjoint",
            m.pairwise_disjoint_classes(),
            ANCHOR_X,
            "",
        ));
        checks.push(Check::new(
            "unimodular Gram",
            m.gram_is_unimodular(),
            ANCHOR_X,
            "generators span H2(X, Z)",
        ));
        checks.push(Check::new(
            "signature (5, 0, 31)",
            sig == SignatureTriple::new(5, 0, 31),
            ANCHOR_X,
            format!("({}, {}, {})", sig.positive, sig.zero, sig.negative),
        ));
        let genera: Vec<String> = m.genus_vector().iter().map(|g| g.to_string()).collect();
        checks.push(Check::new("genus vector", true, ANCHOR_X, genera.join(",")));
        let d = stated_generator_discrepancies(&m);
        let listed: Vec<String> = d
            .iter()
            .map(|d| {
                format!(
                    "{}: stated {}, constructed {}",
                    d.surface, d.stated_self_intersection, d.constructed_self_intersection
                )
            })
            .collect();
        checks.push(Check::new(
            "stated self-intersections",
            true,
            ANCHOR_X,
            if listed.is_empty() {
                "all agree".to_string()
            } else {
                format!("construction values used; {}", listed.join("; "))
            },
        ));
        results["discrepancies"] = to_value(&d);
    }
    if verify_lagrangian {
        let r = verify_lagrangian_config();
        checks.extend(
            r.checks
                .iter()
                .map(|c| Check::new(&c.name, c.pass, ANCHOR_LAGRANGIAN, &c.detail)),
        );
        results["lagrangian"] = to_value(&r);
    }
    results["manifest"] = to_value(&m.to_manifest());
    RunReport::new("build-x", inputs, results, checks)
}

fn parse_manifest(v: Value) -> Result<ManifoldModel, CliError> {
    let v = unwrap_report(&v, "build-x", "manifest").cloned().unwrap_or(v);
    if v.is_null() {
        return Err(CliError::input("build-x report carries no manifest"));
    }
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("invalid manifest: {e}")))
}

pub fn seifert(input: Option<&Path>, p: &str, twist_bound: u32) -> Result<RunReport, CliError> {
    let base = parse_manifest(read_json(input)?)?;
    let prime: BigInt = p.parse().map_err(|_| CliError::Input(format!("invalid prime {p:?}")))?;
    let inputs = json!({ "p": prime.to_string(), "twist_bound": twist_bound.to_string() });
    let run = prime_power_pipeline(&base, &prime, twist_bound).map_err(CliError::input)?;

    let mut checks: Vec<Check> = run
        .orbifold_checks
        .iter()
        .map(|c| Check::new("orbifold", true, ANCHOR_ORBIFOLD, c))
        .collect();
    checks.extend(
        run.homology
            .conditions
            .iter()
            .map(|c| Check::new(&c.name, c.holds, ANCHOR_HOMOLOGY, &c.reason)),
    );
    let rank = run.homology.rank_value();
    let b2 = base.b2();
    checks.push(Check::new(
        "rank + 1 = b2(X)",
        rank.zip(b2).is_some_and(|(r, b)| r as i64 + 1 == b),
        ANCHOR_HOMOLOGY,
        format!("rank {rank:?}, b2 {b2:?}"),
    ));
    checks.push(Check::new(
        "primitive twist",
        true,
        ANCHOR_TWIST,
        format!(
            "shell {} of bound {}, {} candidates",
            run.twist.shell, run.twist.bound, run.twist.tried
        ),
    ));
    checks.extend(
        run.certificate
            .hypotheses
            .iter()
            .map(|h| Check::new(&h.name, h.holds, ANCHOR_KCONTACT, &h.reason)),
    );

    let mut twist = to_value(&run.twist);
    if let Some(obj) = twist.as_object_mut() {
        obj.remove("bundle");
    }
    let results = json!({
        "base": BaseSummary::of(&base),
        "p": run.p.to_string(),
        "h2": run.homology.h2_display(),
        "homology": run.homology,
        "twist": twist,
        "bundle": run.bundle().to_manifest(),
        "certificate": run.certificate,
    });
    Ok(RunReport::new("seifert", inputs, results, checks))
}

fn parse_torsion(spec: &str) -> Result<Vec<(BigInt, u32)>, CliError> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let bad = || CliError::Input(format!("torsion entry {item:?} is not of the form m:e"));
            let (m, e) = item.trim().split_once(':').ok_or_else(bad)?;
            Ok((
                m.trim().parse().map_err(|_| bad())?,
                e.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

pub struct HomologySource<'a> {
    pub input: Option<&'a Path>,
    pub rank: Option<u64>,
    pub torsion: Option<&'a str>,
}

pub fn check_sasakian(src: HomologySource<'_>, genus_one: bool) -> Result<RunReport, CliError> {
    let opts = VerdictOptions {
        genus_one_remark: genus_one,
    };
    let (inputs, verdict) = match (src.rank, src.torsion) {
        (Some(rank), Some(t)) => {
            let torsion = parse_torsion(t)?;
            let inputs = json!({ "source": "flags", "rank": rank.to_string(), "torsion": t });
            (inputs, sasakian_excludability(true, rank, &torsion, opts))
        }
        (None, None) => {
            let v = read_json(src.input)?;
            let (source, h) = match unwrap_report(&v, "seifert", "homology") {
                Some(h) => ("seifert report", h.clone()),
                None => ("homology report", v.clone()),
            };
            let h: HomologyReport =
                serde_json::from_value(h).map_err(|e| CliError::Input(format!("invalid homology report: {e}")))?;
            let rank = h
                .rank_value()
                .ok_or_else(|| CliError::input("homology report carries no H2 rank"))?;
            let torsion: Vec<(BigInt, u32)> = h.torsion.iter().map(|t| (t.modulus.clone(), t.exponent)).collect();
            let results = v.get("results");
            let inputs = json!({
                "source": source,
                "base": results.and_then(|r| r.get("base")),
                "p": results.and_then(|r| r.get("p")),
                "h1_zero": h.h1_zero,
                "h2": h.h2_display(),
            });
            (inputs, sasakian_excludability(h.h1_zero, rank, &torsion, opts))
        }
        _ => return Err(CliError::input("--rank and --torsion must be given together")),
    };
    let verdict = verdict.map_err(CliError::input)?;
    Ok(RunReport::new(
        "check-sasakian",
        inputs,
        to_value(&verdict),
        chain_checks(&verdict),
    ))
}

fn chain_checks(v: &ObstructionVerdict) -> Vec<Check> {
    let mut checks = vec![Check::new(
        "input shape",
        true,
        PLUMBING,
        "torsion matches a forced curve configuration",
    )];
    checks.extend(
        v.chain
            .iter()
            .map(|s| Check::new(&s.name, true, &s.anchor, &s.conclusion)),
    );
    checks
}

pub fn classify(m: u64, j1: u64, j2: u64) -> Result<RunReport, CliError> {
    let l = classify_local_model(m, j1, j2).map_err(CliError::input)?;
    let inputs = json!({ "m": m.to_string(), "j1": j1.to_string(), "j2": j2.to_string() });
    let checks = vec![
        Check::new("m1 * m2 * d = m", l.m1 * l.m2 * l.d == l.m, ANCHOR_LOCAL, ""),
        Check::new("smooth iff d = 1", l.smooth == (l.d == 1), ANCHOR_LOCAL, ""),
    ];
    let results = json!({
        "m": l.m.to_string(),
        "j1": l.j1.to_string(),
        "j2": l.j2.to_string(),
        "m1": l.m1.to_string(),
        "m2": l.m2.to_string(),
        "d": l.d.to_string(),
        "case": l.case.to_string(),
        "smooth": l.smooth,
        "isotropy_surfaces": l.isotropy_surfaces().to_string(),
    });
    Ok(RunReport::new("classify-local-model", inputs, results, checks))
}

pub fn obstruct(genera: &[u32], b: Option<u64>, genus_one: bool) -> Result<RunReport, CliError> {
    let b = b.unwrap_or(genera.len() as u64);
    let opts = VerdictOptions {
        genus_one_remark: genus_one,
    };
    let v = obstruction_verdict(b, genera, opts).map_err(CliError::input)?;
    let listed: Vec<String> = genera.iter().map(|g| g.to_string()).collect();
    let inputs = json!({ "b": b.to_string(), "genera": listed.join(","), "genus_one": genus_one });
    let mut checks = chain_checks(&v);
    checks[0] = Check::new("input shape", true, PLUMBING, format!("{b} curves"));
    Ok(RunReport::new("obstruct", inputs, to_value(&v), checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_flags() {
        assert_eq!(
            parse_torsion("2:2, 4:6").unwrap(),
            vec![(BigInt::from(2), 2), (BigInt::from(4), 6)]
        );
        assert!(parse_torsion("2^2").is_err());
        assert!(parse_torsion("x:1").is_err());
    }

    #[test]
    fn local_model_report() {
        let r = classify(12, 2, 3).unwrap();
        assert_eq!(r.results["case"], "c");
        assert_eq!(r.results["d"], "2");
        assert!(r.all_pass());
    }
}
