mod common;

use common::*;
use kcontact_core::seifert::*;
use kcontact_core::surgery::{build_manifold_x, new_t4, ManifoldModel, Pi1State, SurfaceClass, SurfaceFlag};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use proptest::prelude::*;

fn base_from_gram(g: &[Vec<i64>], genera: &[u32]) -> ManifoldModel {
    let surfaces = genera
        .iter()
        .enumerate()
        .map(|(i, genus)| SurfaceClass::new(format!("D{}", i + 1), *genus, &[SurfaceFlag::Symplectic]))
        .collect();
    ManifoldModel::from_parts(
        "random",
        g.len() as i64 + 2,
        Pi1State::Yes {
            provenance: vec!["test base".into()],
        },
        surfaces,
        to_matrix(g),
        Some("test form".into()),
    )
    .unwrap()
}

fn iso(list: &[(&str, i64)]) -> Vec<(String, BigInt)> {
    list.iter().map(|(s, m)| (s.to_string(), BigInt::from(*m))).collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Elements `k` fixing a coordinate axis pointwise generate the reflection
/// subgroup; the quotient is smooth exactly when that subgroup is everything.
fn local_oracle(m: u64, j1: u64, j2: u64) -> Option<(u64, u64, u64)> {
    let faithful = (1..m).all(|k| !(k * j1).is_multiple_of(m) || !(k * j2).is_multiple_of(m));
    if !faithful {
        return None;
    }
    let m1 = (0..m).filter(|k| (k * j1).is_multiple_of(m)).count() as u64;
    let m2 = (0..m).filter(|k| (k * j2).is_multiple_of(m)).count() as u64;
    let reflections: Vec<Vec<i64>> = (1..m)
        .filter(|k| (k * j1).is_multiple_of(m) || (k * j2).is_multiple_of(m))
        .map(|k| vec![k as i64])
        .collect();
    let generated = generated_subgroup(&reflections, &[m as i64]).len() as u64;
    Some((m1, m2, m / generated))
}

#[test]
fn local_models_match_the_reflection_oracle() {
    for m in 1..=60u64 {
        for j1 in 0..m {
            for j2 in 0..m {
                let lib = classify_local_model(m, j1, j2);
                if m == 1 {
                    assert_eq!(lib.unwrap().case, LocalCase::Regular);
                    continue;
                }
                match local_oracle(m, j1, j2) {
                    None => assert!(
                        matches!(lib, Err(SeifertError::NonEffective { .. })),
                        "({m}, {j1}, {j2})"
                    ),
                    Some((m1, m2, d)) => {
                        let l = lib.unwrap();
                        assert_eq!((l.m1, l.m2, l.d), (m1, m2, d), "({m}, {j1}, {j2})");
                        assert_eq!(l.m1 * l.m2 * l.d, m);
                        assert_eq!(l.smooth, d == 1);
                        assert_eq!(l.smooth, matches!(l.case, LocalCase::B | LocalCase::D));
                        let expected = match (m1 > 1, m2 > 1, d > 1) {
                            (false, false, _) => LocalCase::A,
                            (true, true, false) => LocalCase::B,
                            (true, true, true) => LocalCase::C,
                            (_, _, false) => LocalCase::D,
                            (_, _, true) => LocalCase::E,
                        };
                        assert_eq!(l.case, expected);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn surjectivity_condition_matches_enumeration(
        seed in any::<u64>(),
        n in 3usize..=4,
        moduli in prop::collection::vec(2i64..=12, 1..=3),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let signs: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i != j { 0 } else if rng.random_bool(0.3) { 1 } else { -1 }).collect())
            .collect();
        let p = random_unimodular(&mut rng, n, 4);
        let g = congruent(&signs, &p);
        let base = base_from_gram(&g, &vec![1; n]);
        let k = moduli.len().min(n);
        let list: Vec<(String, BigInt)> = (0..k).map(|i| (format!("D{}", i + 1), BigInt::from(moduli[i]))).collect();
        let orbifold = validate_orbifold(&base, &list);
        prop_assume!(orbifold.is_ok());
        let bundle = SeifertBundle::new(orbifold.unwrap(), None, big(&vec![0; n])).unwrap();
        let report = kollar_h1_check(&bundle).unwrap();
        let columns: Vec<Vec<i64>> = g.iter().map(|row| row[..k].to_vec()).collect();
        prop_assert_eq!(report.conditions[1].holds, surjects_by_enumeration(&columns, &moduli[..k]));
    }

    #[test]
    fn twisting_adds_the_class_exactly(a in prop::collection::vec(-20i64..=20, 3), j in 1i64..=4) {
        let base = base_from_gram(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]], &[1, 2, 1]);
        let orb = validate_orbifold(&base, &iso(&[("D1", 5), ("D3", 7)])).unwrap();
        let s = SeifertBundle::new(orb, Some(&big(&[j, j])), big(&[0, 0, 0])).unwrap();
        let t = s.twisted(&big(&a)).unwrap();
        let expect: Vec<BigRational> = s
            .chern_class()
            .iter()
            .zip(&a)
            .map(|(c, x)| c + BigRational::from_integer(BigInt::from(*x)))
            .collect();
        prop_assert_eq!(t.chern_class(), expect);
        let mu: Vec<BigInt> = t.chern_class().iter().map(|c| (c * BigRational::from_integer(t.m_x().clone())).to_integer()).collect();
        prop_assert_eq!(t.c1_mu(), mu);
    }
}

#[test]
fn chern_class_examples() {
    let base = base_from_gram(&[vec![1, 0], vec![0, -1]], &[1, 1]);
    let one = SeifertBundle::new(
        validate_orbifold(&base, &iso(&[("D1", 3)])).unwrap(),
        None,
        big(&[0, 0]),
    )
    .unwrap();
    assert_eq!(one.chern_class(), vec![q(1, 3), q(0, 1)]);
    assert_eq!(one.c1_mu(), big(&[1, 0]));

    let honest = SeifertBundle::new(validate_orbifold(&base, &[]).unwrap(), None, big(&[2, 5])).unwrap();
    assert_eq!(honest.chern_class(), vec![q(2, 1), q(5, 1)]);

    let two = validate_orbifold(&base, &iso(&[("D1", 2), ("D2", 3)])).unwrap();
    let two = SeifertBundle::new(two, Some(&big(&[1, 2])), big(&[0, 0])).unwrap();
    assert_eq!(two.chern_class(), vec![q(1, 2), q(2, 3)]);
    assert_eq!(two.c1_mu(), big(&[3, 4]));
}

#[test]
fn gcd_clash_names_the_pair() {
    let base = base_from_gram(&[vec![1, 1], vec![1, -1]], &[1, 1]);
    assert!(validate_orbifold(&base, &iso(&[("D1", 2), ("D2", 3)])).is_ok());
    let err = validate_orbifold(&base, &iso(&[("D1", 2), ("D2", 4)])).unwrap_err();
    assert_eq!(err.to_string(), "gcd clash: D1 (m = 2) meets D2 (m = 4) but gcd = 2");
}

#[test]
fn non_simply_connected_base_fails_condition_one() {
    let t = new_t4().forget(&["T34", "T24", "T23", "T14", "T13"]).unwrap();
    let orb = validate_orbifold(&t, &iso(&[("T12", 2)])).unwrap();
    let s = SeifertBundle::new(orb, None, big(&[0])).unwrap();
    let report = kollar_h1_check(&s).unwrap();
    assert!(!report.conditions[0].holds);
    assert!(!report.h1_zero);
    assert!(matches!(homology_of_total(&s), Err(SeifertError::H1Nonzero(_))));
}

#[test]
fn small_base_homology() {
    let base = base_from_gram(&[vec![1, 0], vec![0, -1]], &[1, 0]);
    let s = SeifertBundle::new(
        validate_orbifold(&base, &iso(&[("D1", 2)])).unwrap(),
        None,
        big(&[0, 0]),
    )
    .unwrap();
    let h = homology_of_total(&s).unwrap();
    assert_eq!(h.h2_display(), "Z^1 + (Z/2)^2");
    assert!(matches!(
        choose_primitive_twist(&s, None, 8),
        Err(SeifertError::TwistHypothesis(_))
    ));
}

#[test]
fn prime_power_pipeline_over_x() {
    let x = build_manifold_x().unwrap();
    let genera = x.genus_vector();
    for p in [2i64, 3, 5, 7] {
        let run = prime_power_pipeline(&x, &BigInt::from(p), DEFAULT_TWIST_BOUND).unwrap();
        let h = &run.homology;
        assert!(h.h1_zero);
        assert_eq!(h.rank_value(), Some(35));
        assert_eq!(h.rank_value().unwrap() + 1, x.b2().unwrap() as u64);
        assert_eq!(h.torsion.len(), 36);
        let mut order = BigInt::from(1);
        for (i, t) in h.torsion.iter().enumerate() {
            let m = Pow::pow(&BigInt::from(p), i as u32 + 1);
            assert_eq!((t.modulus.clone(), t.exponent), (m.clone(), 2 * genera[i]));
            order *= Pow::pow(&m, 2 * genera[i]);
        }
        assert_eq!(h.torsion_order(), order);
        assert!(run.twist.shell <= 1);
        assert!(run.certificate.hypotheses.iter().all(|c| c.holds));
    }
    assert!(prime_power_pipeline(&x, &BigInt::from(4), 8).is_err());
}
