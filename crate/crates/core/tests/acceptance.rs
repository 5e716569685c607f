//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

mod common;

use std::process::ExitCode;

use common::*;
use kcontact_core::kahler::{
    m1_lower_bound, obstruction_verdict, quadratic_check, sasakian_excludability, Branch, Verdict, VerdictOptions,
};
use kcontact_core::lattice::{cokernel, smith_normal_form, surjects_onto_cyclic_sum, SignatureTriple};
use kcontact_core::seifert::{classify_local_model, prime_power_pipeline, LocalCase, DEFAULT_TWIST_BOUND};
use kcontact_core::surgery::lagrangian::verify_lagrangian_config;
use kcontact_core::surgery::{build_manifold_x, build_manifold_z, stated_generator_discrepancies};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn rebuild_z() -> Outcome {
    let z = build_manifold_z().map_err(|e| e.to_string())?;
    ensure(z.euler_characteristic() == 36, || {
        format!("χ(Z) = {}", z.euler_characteristic())
    })?;
    ensure(z.b2() == Some(34), || format!("b₂(Z) = {:?}", z.b2()))?;
    ensure(z.simply_connected().is_yes(), || "Z not simply connected".into())?;
    Ok("χ(Z) = 36, b₂(Z) = 34, simply connected".into())
}

fn rebuild_x() -> Outcome {
    let x = build_manifold_x().map_err(|e| e.to_string())?;
    ensure(x.b2() == Some(36), || format!("b₂(X) = {:?}", x.b2()))?;
    ensure(x.surfaces().len() == 36, || format!("{} surfaces", x.surfaces().len()))?;
    ensure(x.surfaces().iter().all(|s| s.is_symplectic()), || {
        "non-symplectic surface".into()
    })?;
    ensure(x.gram().is_diagonal(), || "Gram not diagonal".into())?;
    ensure(x.gram_is_unimodular(), || "Gram not unimodular".into())?;
    ensure(x.genus_vector() == x_genera(), || {
        format!("genus vector {:?}", x.genus_vector())
    })?;
    let sig = x.gram_signature();
    ensure(sig == SignatureTriple::new(5, 0, 31), || format!("signature {sig:?}"))?;
    let d = stated_generator_discrepancies(&x);
    let listed: Vec<String> = d
        .iter()
        .map(|d| {
            format!(
                "{} {}→{}",
                d.surface, d.stated_self_intersection, d.constructed_self_intersection
            )
        })
        .collect();
    ensure(listed == ["S10 -1→1", "S20 -1→1", "S30 -1→1"], || {
        format!("discrepancies {listed:?}")
    })?;
    Ok(format!(
        "b₂ = 36, signature (5,0,31), unimodular diagonal; stated sign differs at {}",
        listed.join(", ")
    ))
}

fn seifert_homology() -> Outcome {
    let x = build_manifold_x().map_err(|e| e.to_string())?;
    let genera = x_genera();
    for p in [2i64, 3, 5] {
        let run =
            prime_power_pipeline(&x, &BigInt::from(p), DEFAULT_TWIST_BOUND).map_err(|e| format!("p = {p}: {e}"))?;
        let h = &run.homology;
        ensure(h.h1_zero, || format!("p = {p}: H₁ ≠ 0"))?;
        ensure(h.rank_value() == Some(35), || format!("p = {p}: rank {:?}", h.rank))?;
        let shape: Vec<(BigInt, u32)> = h.torsion.iter().map(|t| (t.modulus.clone(), t.exponent)).collect();
        let want: Vec<(BigInt, u32)> = genera
            .iter()
            .enumerate()
            .map(|(i, g)| (Pow::pow(&BigInt::from(p), i as u32 + 1), 2 * g))
            .collect();
        ensure(shape == want, || format!("p = {p}: torsion {shape:?}"))?;
    }
    Ok("H₁ = 0, H₂ = Z^35 ⊕ ⊕ (Z/p^i)^{2g_i} for p = 2, 3, 5".into())
}

fn obstruction_endgame() -> Outcome {
    let mut torsion = Vec::new();
    let mut m = BigInt::one();
    for g in x_genera() {
        m *= 2;
        torsion.push((m.clone(), 2 * g));
    }
    let v = sasakian_excludability(true, 35, &torsion, VerdictOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::Obstructed, || format!("verdict {:?}", v.verdict))?;
    let value = |step: &str, sym: &str| v.step(step).and_then(|s| s.value(sym)).map(str::to_string);
    ensure(value("noether", "K^2").as_deref() == Some("-26"), || {
        format!("K² = {:?}", value("noether", "K^2"))
    })?;
    let m1 = value("quadratic", "m1 lower bound");
    ensure(m1.as_deref() == Some("9"), || format!("m₁ bound {m1:?}"))?;
    let (lhs, rhs) = (value("slope", "4g-4"), value("slope", "2-b-m1+8g"));
    ensure(lhs.as_deref() == Some("8") && rhs.as_deref() == Some("-19"), || {
        format!("slope {lhs:?} vs {rhs:?}")
    })?;
    let edge =
        obstruction_verdict(9, &[3, 3, 1, 1, 1, 1, 1, 1, 1], VerdictOptions::default()).map_err(|e| e.to_string())?;
    ensure(edge.verdict == Verdict::Inconclusive, || {
        "b = 9, g = 3 not inconclusive".into()
    })?;
    Ok("obstructed: K² = -26, m₁ ≥ 9, 8 ≰ -19; b = 9, g = 3 inconclusive".into())
}

fn local_models() -> Outcome {
    let mut counts = [0usize; 5];
    let mut violations = Vec::new();
    for m in 2..=60u64 {
        for j1 in 0..m {
            for j2 in 0..m {
                if gcd(gcd(j1 as i64, j2 as i64), m as i64) != 1 {
                    if classify_local_model(m, j1, j2).is_ok() {
                        violations.push(format!("({m},{j1},{j2}) accepted"));
                    }
                    continue;
                }
                let l = match classify_local_model(m, j1, j2) {
                    Ok(l) => l,
                    Err(e) => {
                        violations.push(format!("({m},{j1},{j2}): {e}"));
                        continue;
                    }
                };
                let slot = match l.case {
                    LocalCase::A => 0,
                    LocalCase::B => 1,
                    LocalCase::C => 2,
                    LocalCase::D => 3,
                    LocalCase::E => 4,
                    LocalCase::Regular => {
                        violations.push(format!("({m},{j1},{j2}) regular"));
                        continue;
                    }
                };
                counts[slot] += 1;
                let ok = l.m1 * l.m2 * l.d == m
                    && gcd(l.m1 as i64, l.m2 as i64) == 1
                    && l.smooth == (l.d == 1)
                    && l.smooth == matches!(l.case, LocalCase::B | LocalCase::D);
                if !ok {
                    violations.push(format!("({m},{j1},{j2}) -> {l:?}"));
                }
            }
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first {}", violations.len(), violations[0])
    })?;
    Ok(format!(
        "0 violations; a/b/c/d/e = {}/{}/{}/{}/{}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cosets = 0;
    for k in 0..500 {
        let a = random_matrix(&mut rng, 5, 9);
        let m = to_matrix(&a);
        let lib = small(&smith_normal_form(&m).invariant_factors());
        let oracle = invariant_factors_by_minors(&a);
        ensure(lib == oracle, || {
            format!("matrix {k} {a:?}: SNF {lib:?} vs minors {oracle:?}")
        })?;
        let c = cokernel(&m);
        if c.free_rank == 0 && c.torsion_order() <= BigInt::from(200) {
            if let Some(profile) = cokernel_torsion_profile(&a, 200_000) {
                let n = i64::try_from(c.torsion_order()).unwrap();
                ensure(profile == profile_of(&small(&c.torsion), n), || {
                    format!("cokernel mismatch on {a:?}")
                })?;
                cosets += 1;
            }
        }
    }
    let mut onto = 0;
    for k in 0..500 {
        let (a, moduli) = random_surjection_case(&mut rng, 10_000);
        let lib = surjects_onto_cyclic_sum(&to_matrix(&a), &big(&moduli)).map_err(|e| e.to_string())?;
        let oracle = surjects_by_enumeration(&a, &moduli);
        ensure(lib == oracle, || {
            format!("case {k}: {a:?} onto {moduli:?}: {lib} vs {oracle}")
        })?;
        onto += usize::from(lib);
    }
    for g1 in 1..=3u32 {
        let bound = m1_lower_bound(g1).map_err(|e| e.to_string())?;
        for m1 in 1..=1000i64 {
            let c = quadratic_check(g1, &BigInt::from(m1));
            let feasible = quadratic_value(i64::from(g1), m1) >= 0;
            ensure(c.feasible == feasible && c.branch != Branch::Lower, || {
                format!("g₁ = {g1}, m₁ = {m1}")
            })?;
            ensure(!feasible || BigInt::from(m1) >= bound, || {
                format!("g₁ = {g1}, m₁ = {m1} below bound")
            })?;
        }
    }
    Ok(format!(
        "500 SNF ({cosets} coset-enumerated), 500 surjectivity ({onto} onto), quadratic scan g₁ ≤ 3: 0 mismatches"
    ))
}

fn lagrangian_config() -> Outcome {
    let r = verify_lagrangian_config();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed checks {failed:?}"))?;
    for name in ["lagrangian-C1", "lagrangian-C2", "lagrangian-T1", "lagrangian-T2"] {
        ensure(r.check(name).is_some(), || format!("missing {name}"))?;
    }
    for name in [
        "single-transverse-point-C1-T1",
        "single-transverse-point-C2-T2",
        "disjoint-C1-C2",
    ] {
        ensure(r.check(name).is_some(), || format!("missing {name}"))?;
    }
    let c1t1 = r
        .intersections
        .iter()
        .find(|p| p.first == "C1" && p.second == "T1")
        .ok_or("no C1 ∩ T1 point")?;
    let t = ("t".to_string(), "1".to_string());
    let theta = ("θ".to_string(), "−π/2".to_string());
    ensure(c1t1.parameters.contains(&t) && c1t1.parameters.contains(&theta), || {
        format!("C1 ∩ T1 at {:?}", c1t1.parameters)
    })?;
    ensure(r.intersections.len() == 2, || {
        format!("{} intersection points", r.intersections.len())
    })?;
    Ok(format!(
        "{} exact checks pass; C1 ∩ T1 at t = 1, θ = −π/2",
        r.checks.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("rebuild Z", rebuild_z),
        ("rebuild X", rebuild_x),
        ("Seifert homology", seifert_homology),
        ("obstruction endgame", obstruction_endgame),
        ("local-model classifier", local_models),
        ("oracle equivalence", oracle_equivalence),
        ("Lagrangian configuration", lagrangian_config),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
