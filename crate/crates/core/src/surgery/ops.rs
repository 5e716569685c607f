use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ManifoldModel, MarkedPoint, SurfaceClass, SurfaceFlag, SurgeryError};

/// Output ids for [`ManifoldModel::disjoin_pair`]: proper transforms of
/// `T`, of `T''` and of the genus-2 surface `Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjoinNames {
    pub t: String,
    pub t_double_prime: String,
    pub sigma: String,
}

impl DisjoinNames {
    pub fn new(t: impl Into<String>, t2: impl Into<String>, sigma: impl Into<String>) -> Self {
        Self {
            t: t.into(),
            t_double_prime: t2.into(),
            sigma: sigma.into(),
        }
    }
}

impl ManifoldModel {
    fn require_fresh(&self, id: &str) -> Result<(), SurgeryError> {
        if self.surfaces.iter().any(|s| s.id == id) {
            return Err(SurgeryError::DuplicateId(id.to_string()));
        }
        Ok(())
    }

    fn finish(mut self, entry: String) -> Result<Self, SurgeryError> {
        self.log(entry);
        self.check_invariants()?;
        Ok(self)
    }

    pub(crate) fn sync_diagonal(&mut self) {
        for (i, s) in self.surfaces.iter_mut().enumerate() {
            s.self_intersection = self.gram[(i, i)].clone();
        }
    }

    /// Blows up one point lying on the listed surfaces, with the given
    /// multiplicities. Each listed class `S` becomes `S − m·e`.
    ///
    /// Through two or more surfaces, each pair must meet at least `mᵢmⱼ`
    /// times. Through three or more, a marked point lying on exactly those
    /// surfaces must exist; it is consumed.
    pub fn blow_up(&self, through: &[(&str, u32)], exceptional: &str) -> Result<Self, SurgeryError> {
        self.require_fresh(exceptional)?;
        let mut idx = Vec::with_capacity(through.len());
        let mut seen = BTreeSet::new();
        for &(id, m) in through {
            if m == 0 {
                return Err(SurgeryError::Precondition(format!("multiplicity 0 on {id}")));
            }
            if !seen.insert(id) {
                return Err(SurgeryError::DuplicateId(id.to_string()));
            }
            idx.push((self.index_of(id)?, BigInt::from(m)));
        }
        for (a, (i, mi)) in idx.iter().enumerate() {
            for (j, mj) in &idx[a + 1..] {
                let needed = mi * mj;
                if self.gram[(*i, *j)] < needed {
                    return Err(SurgeryError::NotMeeting {
                        a: self.surfaces[*i].id.clone(),
                        b: self.surfaces[*j].id.clone(),
                        pairing: self.gram[(*i, *j)].to_string(),
                        needed: needed.to_string(),
                    });
                }
            }
        }
        let mut out = self.clone();
        if through.len() >= 3 {
            let wanted: BTreeSet<&str> = through.iter().map(|(id, _)| *id).collect();
            let pos = out
                .marked_points
                .iter()
                .position(|p| p.surfaces.iter().map(String::as_str).collect::<BTreeSet<_>>() == wanted)
                .ok_or_else(|| SurgeryError::TriplePoint(wanted.iter().map(|s| s.to_string()).collect()))?;
            out.marked_points.remove(pos);
        }

        for (a, (i, mi)) in idx.iter().enumerate() {
            for (j, mj) in &idx[a..] {
                let d = mi * mj;
                out.gram[(*i, *j)] -= &d;
                if i != j {
                    out.gram[(*j, *i)] -= &d;
                }
            }
        }
        let mut row = vec![BigInt::zero(); out.surfaces.len()];
        for (i, m) in &idx {
            row[*i] = m.clone();
        }
        out.gram.push_symmetric(&row, -BigInt::one());
        for (i, _) in &idx {
            out.surfaces[*i]
                .provenance
                .push(format!("proper transform under blow-up {exceptional}"));
        }
        out.surfaces.push(
            SurfaceClass::new(exceptional, 0, &[SurfaceFlag::Symplectic, SurfaceFlag::Exceptional])
                .with_provenance("exceptional sphere of blow-up"),
        );
        out.euler_characteristic += 1;
        out.sync_diagonal();
        let desc: Vec<String> = through.iter().map(|(id, m)| format!("{id}×{m}")).collect();
        out.finish(format!("blow_up [{}] -> {exceptional}", desc.join(", ")))
    }

    fn resolved_class(
        &self,
        a: &str,
        b: &str,
        into: &str,
    ) -> Result<(Vec<BigInt>, BigInt, SurfaceClass), SurgeryError> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        if ia == ib {
            return Err(SurgeryError::Precondition(format!("cannot resolve {a} with itself")));
        }
        let d = self.gram[(ia, ib)].clone();
        if d.is_zero() {
            return Err(SurgeryError::NothingToResolve {
                a: a.into(),
                b: b.into(),
            });
        }
        if d.is_negative() {
            return Err(SurgeryError::NegativeIntersection {
                a: a.into(),
                b: b.into(),
                value: d.to_string(),
            });
        }
        for i in [ia, ib] {
            if !self.surfaces[i].is_symplectic() {
                return Err(SurgeryError::NotSymplectic(self.surfaces[i].id.clone()));
            }
        }
        let (sa, sb) = (&self.surfaces[ia], &self.surfaces[ib]);
        let extra = u32::try_from(&d - 1u32)
            .map_err(|_| SurgeryError::Precondition(format!("intersection {d} too large for a genus")))?;
        let genus = sa.genus + sb.genus + extra;
        let row: Vec<BigInt> = (0..self.surfaces.len())
            .map(|k| &self.gram[(ia, k)] + &self.gram[(ib, k)])
            .collect();
        let square = &self.gram[(ia, ia)] + &self.gram[(ib, ib)] + BigInt::from(2) * &d;
        let mut s = SurfaceClass::new(into, genus, &[SurfaceFlag::Symplectic])
            .with_provenance(format!("resolution of {a} ∪ {b} at {d} point(s)"));
        s.pi1_image = sa.pi1_image.union(&sb.pi1_image).cloned().collect();
        Ok((row, square, s))
    }

    /// Smooths the transverse intersections of `a` and `b`. The result has
    /// class `[a] + [b]`, genus `g(a) + g(b) + d − 1`, and takes `a`'s slot.
    pub fn resolve(&self, a: &str, b: &str, into: &str) -> Result<Self, SurgeryError> {
        if into != a && into != b {
            self.require_fresh(into)?;
        }
        let (row, square, s) = self.resolved_class(a, b, into)?;
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        let mut out = self.clone();
        for k in 0..out.surfaces.len() {
            out.gram[(ia, k)] = row[k].clone();
            out.gram[(k, ia)] = row[k].clone();
        }
        out.gram[(ia, ia)] = square;
        out.surfaces[ia] = s;
        out.gram.remove_symmetric(&[ib]);
        out.surfaces.remove(ib);
        out.sync_diagonal();
        out.finish(format!("resolve {a} ∪ {b} -> {into}"))
    }

    /// Adds a surface in class `[a] + [b]` obtained by smoothing a push-off
    /// of `a ∪ b`, keeping `a` and `b` themselves.
    pub fn add_resolved_copy(&self, a: &str, b: &str, into: &str) -> Result<Self, SurgeryError> {
        self.require_fresh(into)?;
        let (row, square, s) = self.resolved_class(a, b, into)?;
        let mut out = self.clone();
        out.gram.push_symmetric(&row, square);
        out.surfaces.push(s);
        out.sync_diagonal();
        out.finish(format!("add smoothing of {a} + {b} as {into}"))
    }

    /// Pushes `s` off itself along a trivial normal bundle.
    pub fn parallel_copy(&self, s: &str, new_id: &str) -> Result<Self, SurgeryError> {
        self.require_fresh(new_id)?;
        let i = self.index_of(s)?;
        if !self.gram[(i, i)].is_zero() {
            return Err(SurgeryError::NoDisplacement {
                id: s.to_string(),
                square: self.gram[(i, i)].to_string(),
            });
        }
        let mut out = self.clone();
        let row: Vec<BigInt> = (0..self.surfaces.len()).map(|k| self.gram[(i, k)].clone()).collect();
        out.gram.push_symmetric(&row, BigInt::zero());
        let mut copy = self.surfaces[i].clone();
        copy.id = new_id.to_string();
        copy.provenance.push(format!("parallel copy of {s}, disjoint from it"));
        out.surfaces.push(copy);
        out.sync_diagonal();
        out.finish(format!("parallel_copy {s} -> {new_id}"))
    }

    /// Stops tracking the listed surfaces. The ambient manifold is unchanged.
    pub fn forget(&self, ids: &[&str]) -> Result<Self, SurgeryError> {
        let mut drop = Vec::with_capacity(ids.len());
        for id in ids {
            drop.push(self.index_of(id)?);
        }
        let mut out = self.clone();
        out.gram.remove_symmetric(&drop);
        let mut k = 0;
        out.surfaces.retain(|_| {
            k += 1;
            !drop.contains(&(k - 1))
        });
        out.marked_points
            .retain(|p| !p.surfaces.iter().any(|s| ids.contains(&s.as_str())));
        out.finish(format!("forget [{}]", ids.join(", ")))
    }

    pub fn rename(&self, from: &str, to: &str) -> Result<Self, SurgeryError> {
        if from == to {
            self.index_of(from)?;
            return Ok(self.clone());
        }
        self.require_fresh(to)?;
        let i = self.index_of(from)?;
        let mut out = self.clone();
        out.surfaces[i].id = to.to_string();
        for p in &mut out.marked_points {
            for s in &mut p.surfaces {
                if s == from {
                    *s = to.to_string();
                }
            }
        }
        for a in &mut out.auxiliary {
            for s in &mut a.attached_to {
                if s == from {
                    *s = to.to_string();
                }
            }
        }
        out.finish(format!("rename {from} -> {to}"))
    }

    /// Prefixes every surface, auxiliary object and marked point id.
    pub fn with_prefix(&self, prefix: &str) -> Self {
        let p = |s: &str| format!("{prefix}{s}");
        let mut out = self.clone();
        out.name = p(&self.name);
        for s in &mut out.surfaces {
            s.id = p(&s.id);
        }
        for a in &mut out.auxiliary {
            a.id = p(&a.id);
            a.attached_to.iter_mut().for_each(|s| *s = p(s));
            a.meets.iter_mut().for_each(|s| *s = p(s));
        }
        for m in &mut out.marked_points {
            m.id = p(&m.id);
            m.surfaces.iter_mut().for_each(|s| *s = p(s));
        }
        out.log(format!("prefix ids with {prefix}"));
        out
    }

    /// Permutes tracked surfaces into the given order, which must list every
    /// surface exactly once.
    pub fn reorder(&self, order: &[&str]) -> Result<Self, SurgeryError> {
        if order.len() != self.surfaces.len() {
            return Err(SurgeryError::Precondition(format!(
                "reorder lists {} ids for {} surfaces",
                order.len(),
                self.surfaces.len()
            )));
        }
        let mut perm = Vec::with_capacity(order.len());
        for id in order {
            let i = self.index_of(id)?;
            if perm.contains(&i) {
                return Err(SurgeryError::DuplicateId(id.to_string()));
            }
            perm.push(i);
        }
        let mut out = self.clone();
        out.gram = self.gram.select(&perm, &perm);
        out.surfaces = perm.iter().map(|&i| self.surfaces[i].clone()).collect();
        out.finish("reorder surfaces".to_string())
    }

    pub fn add_marked_point(&self, id: &str, surfaces: &[&str], note: &str) -> Result<Self, SurgeryError> {
        for s in surfaces {
            self.index_of(s)?;
        }
        if self.marked_points.iter().any(|p| p.id == id) {
            return Err(SurgeryError::DuplicateId(id.to_string()));
        }
        let mut out = self.clone();
        out.marked_points.push(MarkedPoint {
            id: id.to_string(),
            surfaces: surfaces.iter().map(|s| s.to_string()).collect(),
            note: note.to_string(),
        });
        out.finish(format!("mark point {id} on [{}]", surfaces.join(", ")))
    }

    /// Perturbs the symplectic form so the listed Lagrangian surfaces become
    /// symplectic. Needs independent classes and no point on three targets.
    pub fn make_symplectic(&self, targets: &[&str]) -> Result<Self, SurgeryError> {
        let mut idx = Vec::with_capacity(targets.len());
        for id in targets {
            let i = self.index_of(id)?;
            if !self.surfaces[i].is_lagrangian() {
                return Err(SurgeryError::NotLagrangian(id.to_string()));
            }
            if idx.contains(&i) {
                return Err(SurgeryError::DuplicateId(id.to_string()));
            }
            idx.push(i);
        }
        let all: Vec<usize> = (0..self.surfaces.len()).collect();
        let rank = self.gram.select(&idx, &all).rank();
        if rank != idx.len() {
            return Err(SurgeryError::LemmaHypothesis(format!(
                "classes of [{}] have rank {rank} in the tracked pairings, need {}",
                targets.join(", "),
                idx.len()
            )));
        }
        for p in &self.marked_points {
            let on = p.surfaces.iter().filter(|s| targets.contains(&s.as_str())).count();
            if on >= 3 {
                return Err(SurgeryError::LemmaHypothesis(format!(
                    "marked point {} lies on {on} targets",
                    p.id
                )));
            }
        }
        let mut out = self.clone();
        for &i in &idx {
            let s = &mut out.surfaces[i];
            s.flags.remove(&SurfaceFlag::Lagrangian);
            s.flags.insert(SurfaceFlag::Symplectic);
            s.provenance.push("made symplectic by perturbing the form".into());
        }
        out.symplectic_form_tag = Some(match &self.symplectic_form_tag {
            Some(t) => format!("{t}+perturbed"),
            None => "perturbed".to_string(),
        });
        out.finish(format!("make_symplectic [{}]", targets.join(", ")))
    }

    /// Replaces a sphere `L` (`L² = −2`) and torus `T` (`T² = 0`, `L·T = 1`)
    /// by three pairwise disjoint symplectic surfaces of genus 1, 1, 2 and
    /// self-intersection −1, −1, 1, at the cost of one blow-up.
    pub fn disjoin_pair(&self, l: &str, t: &str, names: &DisjoinNames) -> Result<Self, SurgeryError> {
        let (sl, st) = (self.surface(l)?, self.surface(t)?);
        let gate = |ok: bool, why: &str| {
            if ok {
                Ok(())
            } else {
                Err(SurgeryError::Precondition(format!("disjoin_pair({l}, {t}): {why}")))
            }
        };
        gate(sl.genus == 0, "L must be a sphere")?;
        gate(sl.self_intersection == BigInt::from(-2), "L² must be −2")?;
        gate(st.genus == 1, "T must be a torus")?;
        gate(st.self_intersection.is_zero(), "T² must be 0")?;
        gate(self.pairing(l, t)?.is_one(), "L·T must be 1")?;
        gate(sl.is_symplectic() && st.is_symplectic(), "L and T must be symplectic")?;

        let t1 = format!("{t}'");
        let t2 = format!("{t}''");
        let sigma = format!("Σ({t})");
        let p = format!("p({t})");
        let e = format!("E({t})");
        let m = self
            .parallel_copy(t, &t1)?
            .resolve(&t1, l, &t2)?
            .add_resolved_copy(t, &t2, &sigma)?;
        for (a, b) in [(t, t2.as_str()), (t, sigma.as_str()), (t2.as_str(), sigma.as_str())] {
            if !m.pairing(a, b)?.is_one() {
                return Err(SurgeryError::Invariant(format!("{a}·{b} should be 1")));
            }
        }
        let m = m
            .add_marked_point(&p, &[t, &t2, &sigma], "the single common point of T, T'' and Σ")?
            .blow_up(&[(t, 1), (&t2, 1), (&sigma, 1)], &e)?
            .forget(&[&e])?
            .rename(t, &names.t)?
            .rename(&t2, &names.t_double_prime)?
            .rename(&sigma, &names.sigma)?;
        let mut m = m;
        m.log(format!("disjoin_pair({l}, {t}) complete"));
        Ok(m)
    }
}
