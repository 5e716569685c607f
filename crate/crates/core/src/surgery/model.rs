use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{SurfaceClass, SurgeryError};
use crate::decimal;
use crate::lattice::{signature, IntegerMatrix, SignatureTriple};

pub const MANIFEST_SCHEMA: u32 = 1;

/// Fundamental group bookkeeping.
///
/// `No` carries the surviving generators of an abelian π₁ so that the
/// kill-the-image rule for fiber sums with E(1) can be applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Pi1State {
    Yes { provenance: Vec<String> },
    No { surviving_generators: Vec<String> },
    Unknown { reason: String },
}

impl Pi1State {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxiliaryKind {
    LagrangianCylinder,
    LagrangianTorus,
    VanishingCycle { packet: String },
}

/// Objects that are not homology classes of the ambient manifold but are
/// consumed by later steps (Lagrangian cylinders, vanishing cycles).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryObject {
    pub id: String,
    pub kind: AuxiliaryKind,
    /// Neck surfaces (or fibers) this object is attached to.
    pub attached_to: Vec<String>,
    /// Other auxiliary objects met transversely in exactly one point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub meets: Vec<String>,
    #[serde(default)]
    pub used: bool,
    pub note: String,
}

/// A distinguished point lying on the listed surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub id: String,
    pub surfaces: Vec<String>,
    pub note: String,
}

/// Symbolic ledger for a closed oriented 4-manifold: Euler characteristic,
/// π₁ state and the Gram matrix of the tracked surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub(crate) name: String,
    pub(crate) euler_characteristic: i64,
    pub(crate) simply_connected: Pi1State,
    pub(crate) surfaces: Vec<SurfaceClass>,
    pub(crate) gram: IntegerMatrix,
    pub(crate) symplectic_form_tag: Option<String>,
    pub(crate) auxiliary: Vec<AuxiliaryObject>,
    pub(crate) marked_points: Vec<MarkedPoint>,
    pub(crate) history: Vec<String>,
}

impl ManifoldModel {
    /// Assembles a model and checks every ledger invariant. Surface
    /// self-intersections are overwritten from the Gram diagonal.
    pub fn from_parts(
        name: impl Into<String>,
        euler_characteristic: i64,
        simply_connected: Pi1State,
        mut surfaces: Vec<SurfaceClass>,
        gram: IntegerMatrix,
        symplectic_form_tag: Option<String>,
    ) -> Result<Self, SurgeryError> {
        if gram.rows() != surfaces.len() {
            return Err(SurgeryError::Invariant(format!(
                "{} surfaces but a {}x{} Gram matrix",
                surfaces.len(),
                gram.rows(),
                gram.cols()
            )));
        }
        for (i, s) in surfaces.iter_mut().enumerate() {
            s.self_intersection = gram[(i, i)].clone();
        }
        let model = Self {
            name: name.into(),
            euler_characteristic,
            simply_connected,
            surfaces,
            gram,
            symplectic_form_tag,
            auxiliary: Vec::new(),
            marked_points: Vec::new(),
            history: Vec::new(),
        };
        model.check_invariants()?;
        Ok(model)
    }

    pub fn check_invariants(&self) -> Result<(), SurgeryError> {
        let n = self.surfaces.len();
        if !self.gram.is_symmetric() || self.gram.rows() != n {
            return Err(SurgeryError::Invariant(
                "Gram matrix not symmetric of surface dimension".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for (i, s) in self.surfaces.iter().enumerate() {
            s.validate()?;
            if !seen.insert(s.id.as_str()) {
                return Err(SurgeryError::DuplicateId(s.id.clone()));
            }
            if s.self_intersection != self.gram[(i, i)] {
                return Err(SurgeryError::Invariant(format!(
                    "self-intersection of {} disagrees with the Gram diagonal",
                    s.id
                )));
            }
        }
        if let Pi1State::No { surviving_generators } = &self.simply_connected {
            if surviving_generators.is_empty() {
                return Err(SurgeryError::Invariant(
                    "non-simply-connected state without generators".into(),
                ));
            }
        }
        if let Some(b2) = self.b2() {
            if b2 < 0 {
                return Err(SurgeryError::Invariant(format!(
                    "simply connected with χ = {} gives negative b₂",
                    self.euler_characteristic
                )));
            }
            if n as i64 > b2 && !self.gram.determinant().map_or(true, |d| d.is_zero()) {
                return Err(SurgeryError::Invariant(format!(
                    "{n} surfaces with nondegenerate Gram exceed b₂ = {b2}"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    pub fn simply_connected(&self) -> &Pi1State {
        &self.simply_connected
    }

    /// `b₂ = χ − 2`, known only when the model is simply connected.
    pub fn b2(&self) -> Option<i64> {
        self.simply_connected.is_yes().then_some(self.euler_characteristic - 2)
    }

    pub fn surfaces(&self) -> &[SurfaceClass] {
        &self.surfaces
    }

    pub fn gram(&self) -> &IntegerMatrix {
        &self.gram
    }

    pub fn symplectic_form_tag(&self) -> Option<&str> {
        self.symplectic_form_tag.as_deref()
    }

    pub fn auxiliary(&self) -> &[AuxiliaryObject] {
        &self.auxiliary
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked_points
    }

    pub fn history(&self) -> &[String] {
        &self.history
    }

    pub fn index_of(&self, id: &str) -> Result<usize, SurgeryError> {
        self.surfaces
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| SurgeryError::UnknownSurface(id.to_string()))
    }

    pub fn surface(&self, id: &str) -> Result<&SurfaceClass, SurgeryError> {
        Ok(&self.surfaces[self.index_of(id)?])
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<BigInt, SurgeryError> {
        Ok(self.gram[(self.index_of(a)?, self.index_of(b)?)].clone())
    }

    pub fn genus_vector(&self) -> Vec<u32> {
        self.surfaces.iter().map(|s| s.genus).collect()
    }

    pub fn gram_signature(&self) -> SignatureTriple {
        signature(&self.gram).expect("Gram matrix is symmetric by invariant")
    }

    /// Pairwise Gram entries between distinct tracked surfaces all vanish.
    pub fn pairwise_disjoint_classes(&self) -> bool {
        self.gram.is_diagonal()
    }

    pub fn gram_is_unimodular(&self) -> bool {
        self.gram.determinant().is_ok_and(|d| d.abs() == BigInt::from(1))
    }

    pub(crate) fn log(&mut self, entry: impl Into<String>) {
        self.history.push(entry.into());
    }

    pub fn add_auxiliary(&mut self, obj: AuxiliaryObject) {
        self.auxiliary.push(obj);
    }

    pub fn to_manifest(&self) -> Manifest {
        Manifest {
            schema: MANIFEST_SCHEMA,
            name: self.name.clone(),
            euler_characteristic: self.euler_characteristic,
            b2: self.b2().map(|b| b.to_string()),
            simply_connected: self.simply_connected.clone(),
            symplectic_form_tag: self.symplectic_form_tag.clone(),
            surfaces: self.surfaces.clone(),
            gram: self.gram.clone(),
            auxiliary: self.auxiliary.clone(),
            marked_points: self.marked_points.clone(),
            history: self.history.clone(),
        }
    }

    pub fn from_manifest(m: Manifest) -> Result<Self, SurgeryError> {
        if m.schema != MANIFEST_SCHEMA {
            return Err(SurgeryError::Manifest(format!(
                "unsupported schema {} (expected {MANIFEST_SCHEMA})",
                m.schema
            )));
        }
        for (i, s) in m.surfaces.iter().enumerate() {
            if i < m.gram.rows() && m.gram.is_square() && s.self_intersection != m.gram[(i, i)] {
                return Err(SurgeryError::Manifest(format!(
                    "surface {} lists self-intersection {} but the Gram diagonal is {}",
                    s.id,
                    s.self_intersection,
                    m.gram[(i, i)]
                )));
            }
        }
        let mut model = Self::from_parts(
            m.name,
            m.euler_characteristic,
            m.simply_connected,
            m.surfaces,
            m.gram,
            m.symplectic_form_tag,
        )?;
        if let (Some(listed), Some(b2)) = (m.b2.as_deref(), model.b2()) {
            if listed != b2.to_string() {
                return Err(SurgeryError::Manifest(format!(
                    "manifest lists b₂ = {listed}, ledger gives {b2}"
                )));
            }
        }
        model.auxiliary = m.auxiliary;
        model.marked_points = m.marked_points;
        model.history = m.history;
        Ok(model)
    }
}

/// JSON form of a [`ManifoldModel`]. Integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    pub name: String,
    #[serde(with = "decimal::i64_str")]
    pub euler_characteristic: i64,
    pub b2: Option<String>,
    pub simply_connected: Pi1State,
    pub symplectic_form_tag: Option<String>,
    pub surfaces: Vec<SurfaceClass>,
    pub gram: IntegerMatrix,
    #[serde(default)]
    pub auxiliary: Vec<AuxiliaryObject>,
    #[serde(default)]
    pub marked_points: Vec<MarkedPoint>,
    #[serde(default)]
    pub history: Vec<String>,
}

impl Serialize for ManifoldModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_manifest().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ManifoldModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = Manifest::deserialize(d)?;
        ManifoldModel::from_manifest(m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::SurfaceFlag;

    fn toy() -> ManifoldModel {
        let s = vec![
            SurfaceClass::new("a", 1, &[SurfaceFlag::Symplectic]),
            SurfaceClass::new("b", 0, &[SurfaceFlag::Symplectic]),
        ];
        let g = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
        ManifoldModel::from_parts(
            "toy",
            4,
            Pi1State::Yes {
                provenance: vec!["given".into()],
            },
            s,
            g,
            None,
        )
        .unwrap()
    }

    #[test]
    fn self_intersections_come_from_gram() {
        let m = toy();
        assert_eq!(m.surface("a").unwrap().self_intersection, BigInt::from(1));
        assert_eq!(m.surface("b").unwrap().self_intersection, BigInt::from(-1));
        assert_eq!(m.b2(), Some(2));
    }

    #[test]
    fn manifest_round_trip_and_schema_gate() {
        let m = toy();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains(r#""schema":1"#));
        assert!(json.contains(r#""euler_characteristic":"4""#));
        let back: ManifoldModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);

        let mut manifest = m.to_manifest();
        manifest.schema = 2;
        assert!(ManifoldModel::from_manifest(manifest).is_err());

        let mut manifest = m.to_manifest();
        manifest.surfaces[0].self_intersection = BigInt::from(5);
        assert!(ManifoldModel::from_manifest(manifest).is_err());
    }

    #[test]
    fn too_many_independent_surfaces_rejected() {
        let s = vec![
            SurfaceClass::new("a", 1, &[]),
            SurfaceClass::new("b", 1, &[]),
            SurfaceClass::new("c", 1, &[]),
        ];
        let err = ManifoldModel::from_parts(
            "bad",
            4,
            Pi1State::Yes { provenance: vec![] },
            s,
            IntegerMatrix::diagonal(&[1, -1, -1]),
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let s = vec![SurfaceClass::new("a", 1, &[]), SurfaceClass::new("a", 1, &[])];
        let err = ManifoldModel::from_parts(
            "bad",
            4,
            Pi1State::Unknown { reason: "test".into() },
            s,
            IntegerMatrix::zeros(2, 2),
            None,
        );
        assert!(matches!(err, Err(SurgeryError::DuplicateId(_))));
    }
}
