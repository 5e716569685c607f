use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AuxiliaryKind, ManifoldModel, Pi1State, SurfaceClass, SurfaceFlag, SurgeryError};
use crate::lattice::IntegerMatrix;

/// One point-matching between a surface on the left and one on the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub left: String,
    pub right: String,
    pub points: u32,
}

/// Gluing data for a symplectic sum `M₁ #_{N₁=N₂} M₂`.
///
/// Surfaces joined through pairings form connected components; each
/// component becomes one glued surface, named through `glued_names` by any
/// of its members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub left_neck: String,
    pub right_neck: String,
    pub pairings: Vec<Pairing>,
    pub glued_names: Vec<(String, String)>,
}

impl GluingSpec {
    pub fn new(left_neck: &str, right_neck: &str) -> Self {
        Self {
            left_neck: left_neck.into(),
            right_neck: right_neck.into(),
            pairings: Vec::new(),
            glued_names: Vec::new(),
        }
    }

    pub fn pair(mut self, left: &str, right: &str, points: u32) -> Self {
        self.pairings.push(Pairing {
            left: left.into(),
            right: right.into(),
            points,
        });
        self
    }

    pub fn name(mut self, member: &str, glued: &str) -> Self {
        self.glued_names.push((member.into(), glued.into()));
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Left,
    Right,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let root = find(parent, parent[x]);
        parent[x] = root;
    }
    parent[x]
}

/// Symplectic sum along `N₁ ⊂ M₁` and `N₂ ⊂ M₂`.
///
/// `χ = χ₁ + χ₂ − 2χ(N)`. Glued surfaces get `χ(S) = Σχ(pieces) − 2Σd` and
/// self-intersection and pairings as side-wise sums of their pieces. Classes
/// surviving on opposite sides pair to zero.
pub fn gompf_sum(m1: &ManifoldModel, m2: &ManifoldModel, spec: &GluingSpec) -> Result<ManifoldModel, SurgeryError> {
    let n1 = m1.index_of(&spec.left_neck)?;
    let n2 = m2.index_of(&spec.right_neck)?;
    let (neck1, neck2) = (&m1.surfaces()[n1], &m2.surfaces()[n2]);
    if neck1.genus != neck2.genus {
        return Err(SurgeryError::NeckMismatch(format!(
            "genus {} vs {}",
            neck1.genus, neck2.genus
        )));
    }
    if neck1.self_intersection != -&neck2.self_intersection {
        return Err(SurgeryError::NeckMismatch(format!(
            "{}² = {} but {}² = {}",
            neck1.id, neck1.self_intersection, neck2.id, neck2.self_intersection
        )));
    }
    if !neck1.is_symplectic() || !neck2.is_symplectic() {
        return Err(SurgeryError::NeckMismatch("necks must be symplectic".into()));
    }

    let models = [m1, m2];
    let necks = [n1, n2];
    let side_of = |s: Side| models[s as usize];

    // Nodes are (side, index) and every enrolled surface is one.
    let mut nodes: Vec<(Side, usize)> = Vec::new();
    let mut node_of: BTreeMap<(Side, usize), usize> = BTreeMap::new();
    let mut listed: BTreeMap<(Side, usize), u64> = BTreeMap::new();
    let mut edges = Vec::new();
    for p in &spec.pairings {
        if p.points == 0 {
            return Err(SurgeryError::Precondition(format!(
                "pairing {} ~ {} has zero points",
                p.left, p.right
            )));
        }
        let ends = [
            (Side::Left, m1.index_of(&p.left)?),
            (Side::Right, m2.index_of(&p.right)?),
        ];
        for (side, i) in ends {
            if i == necks[side as usize] {
                return Err(SurgeryError::Precondition("a neck cannot be paired".into()));
            }
            *listed.entry((side, i)).or_default() += u64::from(p.points);
            node_of.entry((side, i)).or_insert_with(|| {
                nodes.push((side, i));
                nodes.len() - 1
            });
        }
        edges.push((node_of[&ends[0]], node_of[&ends[1]], p.points));
    }

    for (side, model) in [(Side::Left, m1), (Side::Right, m2)] {
        let neck = necks[side as usize];
        for (i, s) in model.surfaces().iter().enumerate() {
            if i == neck {
                continue;
            }
            let meets = &model.gram()[(i, neck)];
            match listed.get(&(side, i)) {
                None if !meets.is_zero() => {
                    return Err(SurgeryError::ClassDoesNotSurvive {
                        id: s.id.clone(),
                        neck: model.surfaces()[neck].id.clone(),
                        value: meets.to_string(),
                    })
                }
                None => {}
                Some(&n) => {
                    if BigInt::from(n) != *meets {
                        return Err(SurgeryError::PairingCount {
                            id: s.id.clone(),
                            listed: n.to_string(),
                            actual: meets.to_string(),
                        });
                    }
                    if !s.is_symplectic() {
                        return Err(SurgeryError::NotSymplectic(s.id.clone()));
                    }
                }
            }
        }
    }

    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    for &(a, b, _) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..nodes.len() {
        let r = find(&mut parent, k);
        components.entry(r).or_default().push(k);
    }

    let mut comp_name: BTreeMap<usize, String> = BTreeMap::new();
    let mut name_order = Vec::new();
    for (member, glued) in &spec.glued_names {
        let key = m1
            .index_of(member)
            .ok()
            .and_then(|i| node_of.get(&(Side::Left, i)))
            .or_else(|| m2.index_of(member).ok().and_then(|i| node_of.get(&(Side::Right, i))))
            .ok_or_else(|| SurgeryError::Precondition(format!("{member} is not enrolled in a pairing")))?;
        let root = find(&mut parent, *key);
        if comp_name.insert(root, glued.clone()).is_some() {
            return Err(SurgeryError::Precondition(format!("component of {member} named twice")));
        }
        name_order.push(root);
    }
    // Unnamed components sort last and are reported below.
    let rank = |r: &usize| name_order.iter().position(|x| x == r).unwrap_or(usize::MAX);
    let mut ordered: Vec<(&usize, &Vec<usize>)> = components.iter().collect();
    ordered.sort_by_key(|(r, _)| rank(r));

    struct Glued {
        id: String,
        members: Vec<(Side, usize)>,
        genus: u32,
    }
    let mut glued = Vec::new();
    for (root, members) in ordered {
        let id = comp_name.get(root).cloned().ok_or_else(|| {
            let (side, i) = nodes[members[0]];
            SurgeryError::Precondition(format!(
                "glued component containing {} has no name",
                side_of(side).surfaces()[i].id
            ))
        })?;
        let pts: i64 = edges
            .iter()
            .filter(|(a, _, _)| parent[*a] == *root)
            .map(|(_, _, d)| i64::from(*d))
            .sum();
        let chi: i64 = members
            .iter()
            .map(|&k| {
                let (side, i) = nodes[k];
                side_of(side).surfaces()[i].euler_characteristic()
            })
            .sum::<i64>()
            - 2 * pts;
        if chi > 2 || chi % 2 != 0 {
            return Err(SurgeryError::Invariant(format!("glued surface {id} has χ = {chi}")));
        }
        glued.push(Glued {
            id,
            members: members.iter().map(|&k| nodes[k]).collect(),
            genus: u32::try_from((2 - chi) / 2).expect("χ ≤ 2"),
        });
    }

    // Coefficient vectors over the left and right tracked bases.
    let (l_len, r_len) = (m1.surfaces().len(), m2.surfaces().len());
    let mut classes: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut surfaces: Vec<SurfaceClass> = Vec::new();
    for (side, model) in [(Side::Left, m1), (Side::Right, m2)] {
        for (i, s) in model.surfaces().iter().enumerate() {
            if i == necks[side as usize] || listed.contains_key(&(side, i)) {
                continue;
            }
            let mut l = vec![0; l_len];
            let mut r = vec![0; r_len];
            match side {
                Side::Left => l[i] = 1,
                Side::Right => r[i] = 1,
            }
            classes.push((l, r));
            surfaces.push(s.clone());
        }
    }
    for g in &glued {
        let mut l = vec![0; l_len];
        let mut r = vec![0; r_len];
        let mut flags = BTreeSet::from([SurfaceFlag::Symplectic]);
        let mut pieces = Vec::new();
        for &(side, i) in &g.members {
            match side {
                Side::Left => l[i] += 1,
                Side::Right => r[i] += 1,
            }
            let s = &side_of(side).surfaces()[i];
            pieces.push(s.id.clone());
            flags.extend(s.flags.iter().filter(|f| **f == SurfaceFlag::Symplectic));
        }
        classes.push((l, r));
        let mut s = SurfaceClass::new(g.id.clone(), g.genus, &flags.into_iter().collect::<Vec<_>>())
            .with_provenance(format!("glued across the sum from [{}]", pieces.join(", ")));
        s.pi1_image = BTreeSet::new();
        surfaces.push(s);
    }

    let pair = |g: &IntegerMatrix, a: &[i64], b: &[i64]| -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc += &g[(i, j)] * BigInt::from(x * y);
                }
            }
        }
        acc
    };
    let n = classes.len();
    let mut gram = IntegerMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = pair(m1.gram(), &classes[a].0, &classes[b].0) + pair(m2.gram(), &classes[a].1, &classes[b].1);
            gram[(a, b)] = v.clone();
            gram[(b, a)] = v;
        }
    }

    let chi = m1.euler_characteristic() + m2.euler_characteristic() - 2 * neck1.euler_characteristic();
    let pi1 = sum_pi1(m1, neck1, m2, neck2);

    let mut out = ManifoldModel::from_parts(
        format!("{}#{}", m1.name(), m2.name()),
        chi,
        pi1,
        surfaces,
        gram,
        Some(format!(
            "sum({}, {})",
            m1.symplectic_form_tag().unwrap_or("?"),
            m2.symplectic_form_tag().unwrap_or("?")
        )),
    )?;
    out.history = m1.history().to_vec();
    for h in m2.history() {
        out.history.push(format!("[{}] {h}", m2.name()));
    }
    out.log(format!(
        "gompf_sum along {} = {} ({} glued surfaces)",
        neck1.id,
        neck2.id,
        glued.len()
    ));

    let mut aux = m1.auxiliary().to_vec();
    for a in m2.auxiliary() {
        let mut a = a.clone();
        for t in &mut a.attached_to {
            if *t == neck2.id {
                *t = neck1.id.clone();
            }
        }
        aux.push(a);
    }
    out.auxiliary = aux;
    let removed: BTreeSet<&str> = [neck1.id.as_str(), neck2.id.as_str()]
        .into_iter()
        .chain(listed.keys().map(|&(s, i)| side_of(s).surfaces()[i].id.as_str()))
        .collect();
    out.marked_points = m1
        .marked_points()
        .iter()
        .chain(m2.marked_points())
        .filter(|p| !p.surfaces.iter().any(|s| removed.contains(s.as_str())))
        .cloned()
        .collect();
    out.check_invariants()?;
    Ok(out)
}

/// Kill-the-image rule: summing with a simply connected piece whose neck has
/// simply connected complement divides π₁ of the other side by the image of
/// its neck, provided that neck is a square-zero torus.
fn sum_pi1(m1: &ManifoldModel, n1: &SurfaceClass, m2: &ManifoldModel, n2: &SurfaceClass) -> Pi1State {
    let qualifies =
        |m: &ManifoldModel, n: &SurfaceClass| m.simply_connected().is_yes() && n.complement_simply_connected;
    let torus_zero = |n: &SurfaceClass| n.genus == 1 && n.self_intersection.is_zero();
    let (other, other_neck, killer, killer_neck) = if qualifies(m2, n2) && torus_zero(n1) {
        (m1, n1, m2, n2)
    } else if qualifies(m1, n1) && torus_zero(n2) {
        (m2, n2, m1, n1)
    } else if m1.simply_connected().is_yes() && m2.simply_connected().is_yes() {
        return Pi1State::Unknown {
            reason: "sum of simply connected pieces without a simply connected neck complement".into(),
        };
    } else {
        return Pi1State::Unknown {
            reason: "no summand kills the image of the neck".into(),
        };
    };
    let note = format!(
        "π₁ divided by image of π₁({}) since {} − {} is simply connected",
        other_neck.id,
        killer.name(),
        killer_neck.id
    );
    match other.simply_connected() {
        Pi1State::Yes { provenance } => {
            let mut provenance = provenance.clone();
            provenance.push(note);
            Pi1State::Yes { provenance }
        }
        Pi1State::No { surviving_generators } => {
            let rest: Vec<String> = surviving_generators
                .iter()
                .filter(|g| !other_neck.pi1_image.contains(*g))
                .cloned()
                .collect();
            if rest.is_empty() {
                Pi1State::Yes { provenance: vec![note] }
            } else {
                Pi1State::No {
                    surviving_generators: rest,
                }
            }
        }
        Pi1State::Unknown { reason } => Pi1State::Unknown { reason: reason.clone() },
    }
}

pub(crate) fn vanishing_cycles_on<'a>(m: &'a ManifoldModel, neck: &str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    let neck = neck.to_string();
    m.auxiliary()
        .iter()
        .enumerate()
        .filter_map(move |(i, a)| match &a.kind {
            AuxiliaryKind::VanishingCycle { packet } if !a.used && a.attached_to.contains(&neck) => {
                Some((i, packet.as_str()))
            }
            _ => None,
        })
}
