//! JSON model files, so that builder output and hand-written models are
//! interchangeable inputs.
//!
//! ```json
//! {
//!   "name": "…",
//!   "group": "A2",
//!   "fixed_points": [{"label": "p", "det_weight": ["2","-2"], "tangent_weights": [["2","-1"]]}],
//!   "generic_stabilizer": [[1], [2]],
//!   "kirwan": [{"face": [2], "segment": ["0","2"]}, {"face": [], "vertices": [["1","1"]]}],
//!   "metadata": {"key": "value"}
//! }
//! ```
//!
//! Faces are vanishing sets with 1-based simple-root labels. `group` may also
//! be a Cartan matrix, and `generic_stabilizer` may be `{"roots": [...]}`
//! for a semisimple part given by explicit positive roots.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::lie::{cartan_from_label, Face, LieError, RootSystem, StabilizerClass};
use crate::localization::{
    FixedPointDatum, GenericStabilizer, KirwanPiece, KirwanSet, KirwanShape, LocalizationError, ManifoldModel,
};
use crate::rational::{rational_string, Weight, Q};

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error("invalid model file: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Label(String),
    Cartan(Vec<Vec<i64>>),
}

#[derive(Serialize, Deserialize)]
struct FixedPointSpec {
    label: String,
    det_weight: Weight,
    tangent_weights: Vec<Weight>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StabilizerSpec {
    Roots { roots: Vec<Weight> },
    Faces(Vec<Vec<usize>>),
}

#[derive(Serialize, Deserialize)]
struct Endpoint(#[serde(with = "rational_string")] Q);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PieceSpec {
    Segment { face: Vec<usize>, segment: (Endpoint, Endpoint) },
    Hull { face: Vec<usize>, vertices: Vec<Weight> },
}

#[derive(Serialize, Deserialize)]
struct ModelSpec {
    name: String,
    group: GroupSpec,
    fixed_points: Vec<FixedPointSpec>,
    generic_stabilizer: StabilizerSpec,
    #[serde(default)]
    kirwan: Vec<PieceSpec>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

fn face_from_labels(rs: &RootSystem, labels: &[usize]) -> Result<Face, ModelFileError> {
    let mut zero_based = Vec::with_capacity(labels.len());
    for &l in labels {
        if l == 0 || l > rs.rank() {
            return Err(ModelFileError::Invalid(format!("face label {l} outside 1..={}", rs.rank())));
        }
        zero_based.push(l - 1);
    }
    zero_based.sort_unstable();
    zero_based.dedup();
    Ok(rs.face(&zero_based))
}

/// Serializes a model; keys come out sorted.
pub fn model_to_json(model: &ManifoldModel) -> Value {
    let rs = &model.root_system;
    let group = if cartan_from_label(rs.label()).is_ok() {
        GroupSpec::Label(rs.label().to_string())
    } else {
        GroupSpec::Cartan(rs.cartan_matrix().to_vec())
    };
    let generic_stabilizer = match &model.generic_stabilizer {
        GenericStabilizer::Class(c) => StabilizerSpec::Faces(c.faces().iter().map(Face::label).collect()),
        GenericStabilizer::Roots(r) => StabilizerSpec::Roots { roots: r.clone() },
    };
    let kirwan = model
        .kirwan
        .pieces
        .iter()
        .map(|p| match &p.shape {
            KirwanShape::Segment { lo, hi } => {
                PieceSpec::Segment { face: p.face.label(), segment: (Endpoint(*lo), Endpoint(*hi)) }
            }
            KirwanShape::Hull { vertices } => PieceSpec::Hull { face: p.face.label(), vertices: vertices.clone() },
        })
        .collect();
    let spec = ModelSpec {
        name: model.name.clone(),
        group,
        fixed_points: model
            .fixed_points
            .iter()
            .map(|p| FixedPointSpec {
                label: p.label.clone(),
                det_weight: p.det_weight.clone(),
                tangent_weights: p.tangent_weights.clone(),
            })
            .collect(),
        generic_stabilizer,
        kirwan,
        metadata: model.metadata.clone(),
    };
    serde_json::to_value(spec).expect("model specs always serialize")
}

/// Parses and validates a model file.
pub fn model_from_json(text: &str) -> Result<ManifoldModel, ModelFileError> {
    let spec: ModelSpec = serde_json::from_str(text)?;
    let rs = match spec.group {
        GroupSpec::Label(l) => RootSystem::from_label(&l)?,
        GroupSpec::Cartan(c) => RootSystem::from_cartan(c)?,
    };
    let generic_stabilizer = match spec.generic_stabilizer {
        StabilizerSpec::Roots { roots } => GenericStabilizer::Roots(roots),
        StabilizerSpec::Faces(sets) => {
            if sets.is_empty() {
                return Err(ModelFileError::Invalid("generic_stabilizer lists no faces".into()));
            }
            let faces = sets.iter().map(|s| face_from_labels(&rs, s)).collect::<Result<Vec<_>, _>>()?;
            let class = rs.class_of(&faces[0]);
            if let Some(f) = faces.iter().find(|f| !class.faces().contains(f)) {
                return Err(ModelFileError::Invalid(format!(
                    "face {f} is not Levi-conjugate to {}",
                    faces[0]
                )));
            }
            GenericStabilizer::Class(StabilizerClass::new(class.faces().to_vec()))
        }
    };
    let mut pieces = Vec::with_capacity(spec.kirwan.len());
    for p in spec.kirwan {
        pieces.push(match p {
            PieceSpec::Segment { face, segment: (lo, hi) } => KirwanPiece {
                face: face_from_labels(&rs, &face)?,
                shape: KirwanShape::Segment { lo: lo.0, hi: hi.0 },
            },
            PieceSpec::Hull { face, vertices } => KirwanPiece {
                face: face_from_labels(&rs, &face)?,
                shape: KirwanShape::Hull { vertices },
            },
        });
    }
    let fixed_points = spec
        .fixed_points
        .into_iter()
        .map(|p| FixedPointDatum::new(p.label, p.det_weight, p.tangent_weights))
        .collect();
    let mut model = ManifoldModel::new(spec.name, rs, fixed_points, generic_stabilizer, KirwanSet::new(pieces))?;
    model.metadata = spec.metadata;
    Ok(model)
}
