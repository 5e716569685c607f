use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gompf::vanishing_cycles_on;
use super::{
    gompf_sum, AuxiliaryKind, AuxiliaryObject, DisjoinNames, GluingSpec, ManifoldModel, Pi1State, SurfaceClass,
    SurfaceFlag, SurgeryError,
};
use crate::lattice::{IntegerMatrix, SignatureTriple};

pub const T4_FORM_TAG: &str = "T4: dx1^dx2 + dx3^dx4 + dx2^dx3 + δ dx1^dx4 + dx2^dx4 − δ dx1^dx3";

const T4_TORI: [(&str, [&str; 2]); 6] = [
    ("T12", ["x1", "x2"]),
    ("T34", ["x3", "x4"]),
    ("T23", ["x2", "x3"]),
    ("T14", ["x1", "x4"]),
    ("T13", ["x1", "x3"]),
    ("T24", ["x2", "x4"]),
];

/// The four-torus with its six coordinate 2-tori. Complementary tori meet
/// once; all others are disjoint for generic offsets.
pub fn new_t4() -> ManifoldModel {
    let surfaces: Vec<SurfaceClass> = T4_TORI
        .iter()
        .map(|(id, gens)| {
            let mut s = SurfaceClass::new(*id, 1, &[SurfaceFlag::Symplectic])
                .with_pi1_image(gens)
                .with_provenance("coordinate torus in T4");
            if *id == "T13" {
                s = s.with_provenance("oriented opposite to dx1^dx3");
            }
            s
        })
        .collect();
    let mut gram = IntegerMatrix::zeros(6, 6);
    for (a, b) in [(0, 1), (2, 3), (4, 5)] {
        gram[(a, b)] = BigInt::one();
        gram[(b, a)] = BigInt::one();
    }
    let mut m = ManifoldModel::from_parts(
        "T4",
        0,
        Pi1State::No {
            surviving_generators: ["x1", "x2", "x3", "x4"].map(String::from).to_vec(),
        },
        surfaces,
        gram,
        Some(T4_FORM_TAG.into()),
    )
    .expect("T4 ledger is consistent");
    let aux = |id: &str, kind, attached: &[&str], meets: &[&str], note: &str| AuxiliaryObject {
        id: id.into(),
        kind,
        attached_to: attached.iter().map(|s| s.to_string()).collect(),
        meets: meets.iter().map(|s| s.to_string()).collect(),
        used: false,
        note: note.into(),
    };
    m.add_auxiliary(aux(
        "C1",
        AuxiliaryKind::LagrangianCylinder,
        &["T12", "T13"],
        &["T1"],
        "boundary circles on the tubes around T12 and T13",
    ));
    m.add_auxiliary(aux(
        "C2",
        AuxiliaryKind::LagrangianCylinder,
        &["T12", "T14"],
        &["T2"],
        "boundary circles on the tubes around T12 and T14",
    ));
    m.add_auxiliary(aux(
        "T1",
        AuxiliaryKind::LagrangianTorus,
        &["T13"],
        &[],
        "lies on the tube around T13",
    ));
    m.add_auxiliary(aux(
        "T2",
        AuxiliaryKind::LagrangianTorus,
        &["T14"],
        &[],
        "lies on the tube around T14",
    ));
    m.log("new_t4");
    m
}

/// The rational elliptic surface `CP² # 9 CP̄²` with the classes `h`,
/// `e₁…e₉`, the fiber `F = 3h − Σeᵢ` and a generic line `L`.
pub fn new_e1() -> ManifoldModel {
    // Coordinates over (h, e1..e9) with form diag(1, -1, ..., -1).
    let unit = |k: usize| {
        let mut v = [0i64; 10];
        v[k] = 1;
        v
    };
    let mut fiber = [-1i64; 10];
    fiber[0] = 3;
    let mut classes: Vec<(SurfaceClass, [i64; 10])> = vec![(
        SurfaceClass::new("h", 0, &[SurfaceFlag::Symplectic]).with_provenance("line class"),
        unit(0),
    )];
    for i in 1..=9 {
        classes.push((
            SurfaceClass::new(
                format!("e{i}"),
                0,
                &[SurfaceFlag::Symplectic, SurfaceFlag::Section, SurfaceFlag::Exceptional],
            )
            .with_provenance("exceptional sphere of the pencil, a section"),
            unit(i),
        ));
    }
    let mut f = SurfaceClass::new("F", 1, &[SurfaceFlag::Symplectic, SurfaceFlag::Fiber])
        .with_provenance("generic fiber 3h − e1 − … − e9");
    f.complement_simply_connected = true;
    classes.push((f, fiber));
    classes.push((
        SurfaceClass::new("L", 0, &[SurfaceFlag::Symplectic]).with_provenance("generic line missing the base points"),
        unit(0),
    ));

    let form = |a: &[i64; 10], b: &[i64; 10]| a[0] * b[0] - (1..10).map(|k| a[k] * b[k]).sum::<i64>();
    let n = classes.len();
    let mut gram = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = BigInt::from(form(&classes[i].1, &classes[j].1));
        }
    }
    let mut m = ManifoldModel::from_parts(
        "E(1)",
        12,
        Pi1State::Yes {
            provenance: vec!["CP2 blown up at nine points".into()],
        },
        classes.into_iter().map(|(s, _)| s).collect(),
        gram,
        Some("Kähler form of E(1)".into()),
    )
    .expect("E(1) ledger is consistent");
    for k in 1..=12 {
        let packet = if k <= 6 { "a" } else { "b" };
        m.add_auxiliary(AuxiliaryObject {
            id: format!("v{k}"),
            kind: AuxiliaryKind::VanishingCycle { packet: packet.into() },
            attached_to: vec!["F".into()],
            meets: vec![],
            used: false,
            note: format!("vanishing cycle in packet {packet}, bounds a Lagrangian disk of square −1"),
        });
    }
    m.log("new_e1");
    m
}

impl ManifoldModel {
    /// Caps each Lagrangian cylinder with one vanishing disk at each end,
    /// giving a Lagrangian sphere of square −2, and starts tracking the
    /// Lagrangian torus it meets once.
    pub fn cap_lagrangian_cylinders(&self, caps: &[(&str, &str)]) -> Result<Self, SurgeryError> {
        let mut out = self.clone();
        let mut packet_at: Vec<(String, String)> = Vec::new();
        for &(cyl, sphere) in caps {
            let ci = out
                .auxiliary
                .iter()
                .position(|a| a.id == cyl && a.kind == AuxiliaryKind::LagrangianCylinder && !a.used)
                .ok_or_else(|| SurgeryError::Precondition(format!("no unused Lagrangian cylinder {cyl}")))?;
            let cylinder = out.auxiliary[ci].clone();
            let mut disks = Vec::new();
            for neck in &cylinder.attached_to {
                let want = packet_at.iter().find(|(n, _)| n == neck).map(|(_, p)| p.clone());
                let pick = vanishing_cycles_on(&out, neck)
                    .find(|(_, p)| want.as_deref().is_none_or(|w| w == *p))
                    .map(|(i, p)| (i, p.to_string()))
                    .ok_or_else(|| {
                        SurgeryError::Precondition(format!("no unused vanishing cycle along {neck} for {cyl}"))
                    })?;
                if want.is_none() {
                    packet_at.push((neck.clone(), pick.1.clone()));
                }
                out.auxiliary[pick.0].used = true;
                disks.push(out.auxiliary[pick.0].id.clone());
            }
            out.auxiliary[ci].used = true;

            let n = out.surfaces.len();
            out.gram.push_symmetric(&vec![BigInt::zero(); n], BigInt::from(-2));
            out.surfaces.push(
                SurfaceClass::new(sphere, 0, &[SurfaceFlag::Lagrangian])
                    .with_provenance(format!("{cyl} capped by vanishing disks [{}]", disks.join(", "))),
            );
            for torus in &cylinder.meets {
                let ti = match out.surfaces.iter().position(|s| s.id == *torus) {
                    Some(i) => i,
                    None => {
                        let aux = out
                            .auxiliary
                            .iter_mut()
                            .find(|a| a.id == *torus && a.kind == AuxiliaryKind::LagrangianTorus)
                            .ok_or_else(|| SurgeryError::Precondition(format!("{cyl} meets unknown {torus}")))?;
                        aux.used = true;
                        let n = out.surfaces.len();
                        out.gram.push_symmetric(&vec![BigInt::zero(); n], BigInt::zero());
                        out.surfaces.push(
                            SurfaceClass::new(torus.as_str(), 1, &[SurfaceFlag::Lagrangian])
                                .with_provenance("Lagrangian torus on a tube boundary"),
                        );
                        n
                    }
                };
                let si = out.index_of(sphere)?;
                out.gram[(si, ti)] = BigInt::one();
                out.gram[(ti, si)] = BigInt::one();
            }
        }
        out.sync_diagonal();
        out.log(format!(
            "cap cylinders [{}]",
            caps.iter()
                .map(|(c, s)| format!("{c}->{s}"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.check_invariants()?;
        Ok(out)
    }
}

const SUMS: [(&str, &str, &str, usize); 3] = [
    ("T12", "E2.", "T34", 0),
    ("T13", "E3.", "T24", 10),
    ("T14", "E4.", "T23", 20),
];

fn check(ok: bool, what: &str) -> Result<(), SurgeryError> {
    if ok {
        Ok(())
    } else {
        Err(SurgeryError::Invariant(what.to_string()))
    }
}

/// `T⁴` summed with three copies of `E(1)` along `T12`, `T13`, `T14`,
/// tracking `S1…S30`, the capped spheres `L1`, `L2` and the tori `T1`, `T2`.
pub fn build_manifold_z() -> Result<ManifoldModel, SurgeryError> {
    let mut z = new_t4();
    for (_, _, src, _) in SUMS {
        for k in 1..=12 {
            z = z.parallel_copy(src, &format!("{src}.{k}"))?;
        }
    }
    z = z.forget(&["T34", "T24", "T23"])?;

    for (neck, prefix, copies, base) in SUMS {
        let e1 = new_e1().with_prefix(prefix).forget(&[&format!("{prefix}h")])?;
        let mut spec = GluingSpec::new(neck, &format!("{prefix}F"));
        for k in 1..=9 {
            let left = format!("{copies}.{k}");
            spec = spec
                .pair(&left, &format!("{prefix}e{k}"), 1)
                .name(&left, &format!("S{}", base + k));
        }
        let line = format!("{prefix}L");
        for k in 10..=12 {
            spec = spec.pair(&format!("{copies}.{k}"), &line, 1);
        }
        spec = spec.name(&line, &format!("S{}", base + 10));
        z = gompf_sum(&z, &e1, &spec)?;
    }
    z.name = "Z".into();
    let z = z.cap_lagrangian_cylinders(&[("C1", "L1"), ("C2", "L2")])?;

    check(z.euler_characteristic() == 36, "χ(Z) = 36")?;
    check(z.b2() == Some(34), "Z simply connected with b₂ = 34")?;
    check(z.surfaces().len() == 34, "34 tracked surfaces in Z")?;
    check(z.gram_is_unimodular(), "tracked surfaces of Z have unimodular Gram")?;
    Ok(z)
}

/// Makes the four Lagrangians of Z symplectic and separates both
/// sphere-torus pairs, producing 36 disjoint symplectic surfaces in
/// `X = Z # 2CP̄²`.
pub fn build_manifold_x() -> Result<ManifoldModel, SurgeryError> {
    let z = build_manifold_z()?;
    let mut x = z
        .make_symplectic(&["L1", "L2", "T1", "T2"])?
        .disjoin_pair("L1", "T1", &DisjoinNames::new("S31", "S32", "S33"))?
        .disjoin_pair("L2", "T2", &DisjoinNames::new("S34", "S35", "S36"))?;
    let order: Vec<String> = (1..=36).map(|i| format!("S{i}")).collect();
    let order: Vec<&str> = order.iter().map(String::as_str).collect();
    x = x.reorder(&order)?;
    x.name = "X".into();

    check(x.euler_characteristic() == 38, "χ(X) = 38")?;
    check(x.b2() == Some(36), "X simply connected with b₂ = 36")?;
    check(x.surfaces().len() == 36, "36 tracked surfaces in X")?;
    check(
        x.surfaces().iter().all(|s| s.is_symplectic()),
        "all surfaces symplectic",
    )?;
    check(x.pairwise_disjoint_classes(), "pairwise Gram entries vanish")?;
    check(x.gram_is_unimodular(), "Gram of X is unimodular")?;
    check(x.genus_vector() == expected_genus_vector(), "genus vector of X")?;
    check(
        x.gram_signature() == SignatureTriple::new(5, 0, 31),
        "signature (5, 0, 31)",
    )?;
    Ok(x)
}

pub(crate) fn expected_genus_vector() -> Vec<u32> {
    STATED_GENERATORS.iter().map(|g| g.1).collect()
}

/// `(index, genus, self-intersection)` of the 36 generators as listed in the
/// published statement of the construction.
pub const STATED_GENERATORS: [(usize, u32, i64); 36] = {
    let mut t = [(0usize, 1u32, -1i64); 36];
    let mut i = 0;
    while i < 36 {
        t[i].0 = i + 1;
        i += 1;
    }
    t[9].1 = 3;
    t[19].1 = 3;
    t[29].1 = 3;
    t[32] = (33, 2, 1);
    t[35] = (36, 2, 1);
    t
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDiscrepancy {
    pub surface: String,
    pub stated_self_intersection: String,
    pub constructed_self_intersection: String,
    pub stated_genus: String,
    pub constructed_genus: String,
}

/// Compares a built model against [`STATED_GENERATORS`]. The published list
/// gives −1 for S10, S20, S30 while the gluing produces +1; the construction
/// values are kept.
pub fn stated_generator_discrepancies(x: &ManifoldModel) -> Vec<GeneratorDiscrepancy> {
    STATED_GENERATORS
        .iter()
        .filter_map(|&(i, g, sq)| {
            let s = x.surface(&format!("S{i}")).ok()?;
            (s.genus != g || s.self_intersection != BigInt::from(sq)).then(|| GeneratorDiscrepancy {
                surface: s.id.clone(),
                stated_self_intersection: sq.to_string(),
                constructed_self_intersection: s.self_intersection.to_string(),
                stated_genus: g.to_string(),
                constructed_genus: s.genus.to_string(),
            })
        })
        .collect()
}
