//! Quantization commutes with reduction: contributing faces, reduced-index
//! providers, the vanishing lemmas and the multiplicity formula
//!
//! ```text
//! m_λ = Σ_{σ ∈ F(h), λ − ρ_σ ∈ σ} Q(M_{λ−ρ_σ})
//! ```
//!
//! checked against an independent localization computation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{decompose, CharacterError, Decomposition};
use crate::lie::{Face, RootSystem};
use crate::localization::{
    localized_index, ExpansionConfig, GenericStabilizer, KirwanPiece, KirwanShape, LocalizationError,
    ManifoldModel,
};
use crate::orbits::{admissible_orbits_on_face, is_admissible, orbit_spin_index, CoadjointOrbit, OrbitError, OrbitIndex, Region};
use crate::rational::Weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QrError {
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("provider has no value for orbit through {0}")]
    ProviderMissingOrbit(Weight),
    #[error("from-multiplicities provider needs an abelian generic stabilizer")]
    ProviderRequiresAbelian,
    #[error("{0} is not strictly dominant in Λ+ρ")]
    NotRegularDominant(Weight),
    #[error("reduction is only implemented without central coordinates (torus dim {dim}, rank {rank})")]
    CentralCoordinates { dim: usize, rank: usize },
}

/// Per-chamber reduced indices, used only for the wall-consistency check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberTable {
    pub name: String,
    #[serde(with = "entry_list")]
    pub entries: BTreeMap<Weight, i64>,
}

/// Source of the reduced indices `Q(M_O)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedIndexProvider {
    Constant(i64),
    /// Values keyed by the dominant point `μ` of each orbit `K·μ`.
    Table { entries: BTreeMap<Weight, i64>, chambers: Vec<ChamberTable> },
    /// Abelian case: `Q(M_{K·μ})` is the multiplicity of `μ + ρ_σ` in `source`.
    FromMultiplicities(Decomposition),
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    #[serde(default, with = "entry_list")]
    entries: BTreeMap<Weight, i64>,
    #[serde(default)]
    chambers: Vec<ChamberTable>,
}

mod entry_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        mu: Weight,
        value: i64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Weight, i64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(mu, &value)| Entry { mu: mu.clone(), value })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Weight, i64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.mu, e.value)).collect())
    }
}

impl ReducedIndexProvider {
    pub fn table<I: IntoIterator<Item = (Weight, i64)>>(entries: I) -> Self {
        ReducedIndexProvider::Table { entries: entries.into_iter().collect(), chambers: Vec::new() }
    }

    /// Parses a table file: `{"entries": [{"mu": [..], "value": n}], "chambers": [..]}`.
    pub fn table_from_json(text: &str) -> Result<Self, serde_json::Error> {
        let f: TableFile = serde_json::from_str(text)?;
        Ok(ReducedIndexProvider::Table { entries: f.entries, chambers: f.chambers })
    }

    pub fn describe(&self) -> String {
        match self {
            ReducedIndexProvider::Constant(v) => format!("constant:{v}"),
            ReducedIndexProvider::Table { entries, chambers } => {
                format!("table ({} entries, {} chambers)", entries.len(), chambers.len())
            }
            ReducedIndexProvider::FromMultiplicities(_) => "from-multiplicities".to_string(),
        }
    }

    /// Reduced index of `K·μ` with `μ` on `face`.
    pub fn value(&self, mu: &Weight, face: &Face, model: &ManifoldModel) -> Result<i64, QrError> {
        match self {
            ReducedIndexProvider::Constant(v) => Ok(*v),
            ReducedIndexProvider::Table { entries, chambers } => entries
                .get(mu)
                .or_else(|| chambers.iter().find_map(|c| c.entries.get(mu)))
                .copied()
                .ok_or_else(|| QrError::ProviderMissingOrbit(mu.clone())),
            ReducedIndexProvider::FromMultiplicities(source) => {
                if !model.generic_stabilizer.is_abelian() {
                    return Err(QrError::ProviderRequiresAbelian);
                }
                Ok(source.multiplicity(&(mu + face.rho_sigma())))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProviderWarning {
    NonAdmissibleKey(Weight),
    WallInconsistency { mu: Weight, values: Vec<(String, i64)> },
    NonAbelianStabilizer,
}

impl std::fmt::Display for ProviderWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProviderWarning::NonAdmissibleKey(mu) => write!(f, "NonAdmissibleKey: {mu} is not an admissible orbit"),
            ProviderWarning::WallInconsistency { mu, values } => {
                let vs: Vec<String> = values.iter().map(|(c, v)| format!("{c}={v}")).collect();
                write!(f, "WallInconsistency: K·{mu} has values {}", vs.join(", "))
            }
            ProviderWarning::NonAbelianStabilizer => {
                write!(f, "NonAbelianStabilizer: from-multiplicities needs an abelian generic stabilizer")
            }
        }
    }
}

/// Structural checks: admissible keys, agreement across chamber walls.
pub fn validate_provider(provider: &ReducedIndexProvider, model: &ManifoldModel) -> Vec<ProviderWarning> {
    let rs = &model.root_system;
    let mut warnings = Vec::new();
    match provider {
        ReducedIndexProvider::Constant(_) => {}
        ReducedIndexProvider::FromMultiplicities(_) => {
            if !model.generic_stabilizer.is_abelian() {
                warnings.push(ProviderWarning::NonAbelianStabilizer);
            }
        }
        ReducedIndexProvider::Table { entries, chambers } => {
            let keys: BTreeSet<&Weight> = entries.keys().chain(chambers.iter().flat_map(|c| c.entries.keys())).collect();
            for mu in keys {
                if !matches!(is_admissible(mu, rs), Ok(true)) {
                    warnings.push(ProviderWarning::NonAdmissibleKey(mu.clone()));
                }
            }
            let mut seen: BTreeMap<&Weight, Vec<(String, i64)>> = BTreeMap::new();
            for c in chambers {
                for (mu, &v) in &c.entries {
                    seen.entry(mu).or_default().push((c.name.clone(), v));
                }
            }
            for (mu, values) in seen {
                if values.iter().any(|(_, v)| *v != values[0].1) {
                    warnings.push(ProviderWarning::WallInconsistency { mu: mu.clone(), values });
                }
            }
        }
    }
    warnings
}

/// Faces whose Levi semisimple part is conjugate to the generic stabilizer's.
pub fn realizing_faces(model: &ManifoldModel) -> Vec<Face> {
    let rs = &model.root_system;
    let roots = model.generic_stabilizer.roots();
    rs.faces()
        .into_iter()
        .filter(|f| match &model.generic_stabilizer {
            GenericStabilizer::Class(c) => c.faces().contains(f),
            GenericStabilizer::Roots(_) => rs.conjugate_root_sets(roots, f.levi_positive_roots()).is_some(),
        })
        .collect()
}

/// True when the generic stabilizer is not conjugate to any Levi semisimple
/// part, which forces the index to vanish.
pub fn lemma2_vanishing(model: &ManifoldModel) -> bool {
    realizing_faces(model).is_empty()
}

/// True when the Kirwan set misses every face realizing the generic
/// stabilizer, which forces the index to vanish.
pub fn lemma3_vanishing(model: &ManifoldModel) -> bool {
    let rank = model.root_system.rank();
    realizing_faces(model).iter().all(|f| !model.kirwan.meets(f, rank))
}

/// Faces `σ` with the model's stabilizer type whose relative interior meets
/// the Kirwan set.
pub fn contributing_faces(model: &ManifoldModel) -> Vec<Face> {
    let rank = model.root_system.rank();
    realizing_faces(model).into_iter().filter(|f| model.kirwan.meets(f, rank)).collect()
}

fn check_no_center(model: &ManifoldModel) -> Result<(), QrError> {
    let (dim, rank) = (model.torus_dim(), model.root_system.rank());
    if dim != rank {
        return Err(QrError::CentralCoordinates { dim, rank });
    }
    Ok(())
}

/// Multiplicity of `π_λ` predicted from the reduced spaces.
pub fn multiplicity(model: &ManifoldModel, lambda: &Weight, provider: &ReducedIndexProvider) -> Result<i64, QrError> {
    check_no_center(model)?;
    let rs = &model.root_system;
    rs.check_len(lambda).map_err(OrbitError::from)?;
    if !rs.is_strictly_dominant(lambda) || !(lambda - rs.rho()).is_integral() {
        return Err(QrError::NotRegularDominant(lambda.clone()));
    }
    let rank = rs.rank();
    let mut total = 0;
    for face in contributing_faces(model) {
        let nu = lambda - face.rho_sigma();
        if face.contains(&nu, rank) && model.kirwan.contains(&nu, rank) {
            total += provider.value(&nu, &face, model)?;
        }
    }
    Ok(total)
}

/// Bounding box of `piece` along the free coordinates of `face`.
fn piece_box(piece: &KirwanPiece, face: &Face, rank: usize) -> Region {
    let free = face.free_coords(rank);
    let bounds = match &piece.shape {
        KirwanShape::Segment { lo, hi } => {
            if free.is_empty() { Vec::new() } else { vec![(*lo, *hi)] }
        }
        KirwanShape::Hull { vertices } => free
            .iter()
            .map(|&i| {
                let vals = vertices.iter().map(|v| v.coord(i));
                (vals.clone().min().unwrap_or_default(), vals.max().unwrap_or_default())
            })
            .collect(),
    };
    Region::new(bounds)
}

/// Admissible orbits on `face` inside the Kirwan set, ascending.
pub fn kirwan_orbits(model: &ManifoldModel, face: &Face) -> Result<Vec<CoadjointOrbit>, QrError> {
    let rs = &model.root_system;
    let rank = rs.rank();
    let mut out = BTreeSet::new();
    for piece in &model.kirwan.pieces {
        if !piece.meets(face, rank) {
            continue;
        }
        let region = piece_box(piece, face, rank);
        for o in admissible_orbits_on_face(face, &region, rs)? {
            if piece.contains(o.mu(), rank) {
                out.insert(o);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTerm {
    pub orbit: CoadjointOrbit,
    pub reduced_index: i64,
    pub index: OrbitIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    /// `(λ, lhs multiplicity, rhs multiplicity)` wherever the sides differ.
    Mismatch(Vec<(Weight, i64, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRReport {
    pub model: String,
    pub provider: String,
    pub lhs: Decomposition,
    pub contributing_faces: Vec<Face>,
    pub orbit_terms: Vec<OrbitTerm>,
    pub rhs: Decomposition,
    pub verdict: Verdict,
}

impl QRReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }

    pub fn to_json(&self) -> Value {
        let decomp = |d: &Decomposition| -> Value {
            d.iter()
                .map(|(l, m)| json!({"lambda": l, "multiplicity": m}))
                .collect()
        };
        let verdict = match &self.verdict {
            Verdict::Match => json!({"status": "match"}),
            Verdict::Mismatch(diffs) => json!({
                "status": "mismatch",
                "differences": diffs
                    .iter()
                    .map(|(l, a, b)| json!({"lambda": l, "lhs": a, "rhs": b}))
                    .collect::<Vec<_>>(),
            }),
        };
        json!({
            "model": self.model,
            "provider": self.provider,
            "lhs": decomp(&self.lhs),
            "contributing_faces": self.contributing_faces.iter().map(Face::label).collect::<Vec<_>>(),
            "orbit_terms": self
                .orbit_terms
                .iter()
                .map(|t| json!({
                    "mu": t.orbit.mu(),
                    "face": t.orbit.face().label(),
                    "reduced_index": t.reduced_index,
                    "orbit_index": t.index,
                }))
                .collect::<Vec<_>>(),
            "rhs": decomp(&self.rhs),
            "verdict": verdict,
        })
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let faces: Vec<String> = self.contributing_faces.iter().map(Face::to_string).collect();
        let _ = writeln!(s, "model:    {}", self.model);
        let _ = writeln!(s, "provider: {}", self.provider);
        let _ = writeln!(s, "contributing faces: {}", faces.join(" "));
        s.push('\n');
        let rows: Vec<[String; 4]> = self
            .orbit_terms
            .iter()
            .map(|t| [t.orbit.mu().to_string(), t.orbit.face().to_string(), t.reduced_index.to_string(), t.index.to_string()])
            .collect();
        s.push_str(&align(&["orbit μ", "face", "Q(M_O)", "Q_K(O)"], &rows));
        s.push('\n');
        let mut lambdas: BTreeSet<&Weight> = self.lhs.iter().map(|(l, _)| l).collect();
        lambdas.extend(self.rhs.iter().map(|(l, _)| l));
        let rows: Vec<[String; 3]> = lambdas
            .into_iter()
            .map(|l| [l.to_string(), self.lhs.multiplicity(l).to_string(), self.rhs.multiplicity(l).to_string()])
            .collect();
        s.push_str(&align(&["λ", "m_λ (index)", "m_λ (orbits)"], &rows));
        let _ = writeln!(s, "\nverdict: {}", if self.is_match() { "MATCH" } else { "MISMATCH" });
        s
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths = header.map(|h| h.chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for row in rows {
        s.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    s
}

/// Both sides of the reduction formula for `model`.
pub fn verify_qr(model: &ManifoldModel, provider: &ReducedIndexProvider, cfg: &ExpansionConfig) -> Result<QRReport, QrError> {
    check_no_center(model)?;
    let rs: &RootSystem = &model.root_system;
    let lhs = decompose(&localized_index(model, cfg)?, rs)?;
    let faces = contributing_faces(model);

    let mut orbit_terms = Vec::new();
    let mut rhs = Decomposition::default();
    for face in &faces {
        for orbit in kirwan_orbits(model, face)? {
            let reduced_index = provider.value(orbit.mu(), face, model)?;
            let index = orbit_spin_index(&orbit, rs)?;
            if let OrbitIndex::Irreducible(lambda) = &index {
                rhs.add(lambda.clone(), reduced_index);
            }
            orbit_terms.push(OrbitTerm { orbit, reduced_index, index });
        }
    }
    let diffs = lhs.differences(&rhs);
    let verdict = if diffs.is_empty() { Verdict::Match } else { Verdict::Mismatch(diffs) };
    Ok(QRReport {
        model: model.name.clone(),
        provider: provider.describe(),
        lhs,
        contributing_faces: faces,
        orbit_terms,
        rhs,
        verdict,
    })
}

/// `ν = λ − ρ_σ` on each contributing face, for tracing a multiplicity.
pub fn shifted_points(model: &ManifoldModel, lambda: &Weight) -> Vec<(Face, Weight, bool)> {
    let rank = model.root_system.rank();
    contributing_faces(model)
        .into_iter()
        .map(|f| {
            let nu = lambda - f.rho_sigma();
            let hit = f.contains(&nu, rank) && model.kirwan.contains(&nu, rank);
            (f, nu, hit)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::{orbit_model, su3_flag_bundle, FixedPointDatum, KirwanSet};
    use crate::rational::Q;
    use num_traits::Zero;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn h(a: i64, b: i64) -> Weight {
        Weight::new(vec![Q::new(a, 2), Q::new(b, 2)])
    }

    fn a2() -> RootSystem {
        RootSystem::from_label("A2").unwrap()
    }

    #[test]
    fn flag_bundle_contributing_faces() {
        let labels: Vec<Vec<usize>> = contributing_faces(&su3_flag_bundle(1, 3)).iter().map(Face::label).collect();
        assert_eq!(labels, vec![vec![1], vec![2]]);
        for (a, b) in [(3, 1), (2, 2), (4, 0)] {
            assert_eq!(contributing_faces(&su3_flag_bundle(a, b)).len(), 1, "a={a} b={b}");
        }
        let m = orbit_model(&a2(), &w(&[1, 1])).unwrap();
        let faces = contributing_faces(&m);
        assert_eq!(faces.len(), 1);
        assert!(faces[0].vanishing_set().is_empty());
    }

    #[test]
    fn multiplicity_examples() {
        let m = su3_flag_bundle(1, 3);
        let one = ReducedIndexProvider::Constant(1);
        assert_eq!(multiplicity(&m, &w(&[1, 1]), &one).unwrap(), 2);
        assert_eq!(multiplicity(&m, &w(&[3, 1]), &one).unwrap(), 0);
        assert_eq!(multiplicity(&m, &w(&[2, 2]), &one).unwrap(), 0);
        assert!(matches!(multiplicity(&m, &w(&[0, 1]), &one), Err(QrError::NotRegularDominant(_))));
        let points = shifted_points(&m, &w(&[1, 1]));
        assert!(points.iter().all(|(_, _, hit)| *hit));
    }

    #[test]
    fn verify_flag_bundle_1_3() {
        let report = verify_qr(&su3_flag_bundle(1, 3), &ReducedIndexProvider::Constant(1), &ExpansionConfig::default()).unwrap();
        assert!(report.is_match());
        let mus: Vec<Weight> = report.orbit_terms.iter().map(|t| t.orbit.mu().clone()).collect();
        assert_eq!(mus, vec![h(0, 1), h(0, 3), h(1, 0), h(3, 0)]);
        let zeros = report.orbit_terms.iter().filter(|t| t.index == OrbitIndex::Zero).count();
        assert_eq!(zeros, 2);
        // both (3/2)ω_i feed π_ρ
        assert_eq!(report.rhs, Decomposition::from_pairs([(w(&[1, 1]), 2)]));
        let table = report.to_table();
        assert!(table.contains("MATCH"));
        assert_eq!(report.to_json()["verdict"]["status"], "match");
    }

    #[test]
    fn verify_orbit_with_table() {
        let m = orbit_model(&a2(), &h(3, 0)).unwrap();
        let p = ReducedIndexProvider::table([(h(3, 0), 1)]);
        assert!(validate_provider(&p, &m).is_empty());
        let report = verify_qr(&m, &p, &ExpansionConfig::default()).unwrap();
        assert!(report.is_match());
        assert_eq!(report.rhs, Decomposition::from_pairs([(w(&[1, 1]), 1)]));

        let missing = ReducedIndexProvider::table([]);
        assert!(matches!(
            verify_qr(&m, &missing, &ExpansionConfig::default()),
            Err(QrError::ProviderMissingOrbit(_))
        ));
    }

    #[test]
    fn wrong_provider_is_a_mismatch() {
        let report = verify_qr(&su3_flag_bundle(1, 3), &ReducedIndexProvider::Constant(2), &ExpansionConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Mismatch(vec![(w(&[1, 1]), 2, 4)]));
    }

    #[test]
    fn multiplicity_is_the_rhs_coefficient() {
        let one = ReducedIndexProvider::Constant(1);
        for (a, b) in [(1, 3), (2, 5), (0, 4), (3, 1)] {
            let m = su3_flag_bundle(a, b);
            let report = verify_qr(&m, &one, &ExpansionConfig::default()).unwrap();
            for x in 1..9 {
                for y in 1..9 {
                    let lambda = w(&[x, y]);
                    assert_eq!(multiplicity(&m, &lambda, &one).unwrap(), report.rhs.multiplicity(&lambda), "{lambda}");
                }
            }
        }
    }

    #[test]
    fn lemma2_on_realizable_and_synthetic_stabilizers() {
        assert!(!lemma2_vanishing(&su3_flag_bundle(1, 3)));

        let rs = a2();
        let base = orbit_model(&rs, &h(1, 0)).unwrap();
        let full = GenericStabilizer::Class(rs.class_of(&rs.face(&[0, 1])));
        let trivial_action = ManifoldModel::new("point", rs.clone(), Vec::new(), full, KirwanSet::default()).unwrap();
        assert!(!lemma2_vanishing(&trivial_action));

        // {α1, α2} without α1+α2 is not the root set of any Levi
        let fake = GenericStabilizer::Roots(vec![w(&[2, -1]), w(&[-1, 2])]);
        let m = ManifoldModel::new("fake", rs.clone(), base.fixed_points.clone(), fake, base.kirwan.clone()).unwrap();
        assert!(lemma2_vanishing(&m));
        assert!(rs.faces().iter().all(|f| rs.conjugate_root_sets(m.generic_stabilizer.roots(), f.levi_positive_roots()).is_none()));
        assert!(decompose(&localized_index(&m, &ExpansionConfig::default()).unwrap(), &rs).unwrap().is_empty());
    }

    #[test]
    fn lemma2_long_root_subsystem_of_b2() {
        let rs = RootSystem::from_label("B2").unwrap();
        // the highest root and the root orthogonal to it span a long-root A1×A1
        let roots = rs.positive_roots();
        let top = (0..roots.len()).max_by_key(|&k| rs.height(&roots[k])).unwrap();
        let long: Vec<Weight> = (0..roots.len())
            .filter(|&k| k == top || rs.coroot_pairing(&roots[k], top).is_zero())
            .map(|k| roots[k].clone())
            .collect();
        assert_eq!(long.len(), 2);
        let mu = Weight::new(vec![Q::new(1, 2), Q::zero()]);
        let base = orbit_model(&rs, &mu).unwrap();
        let m = ManifoldModel::new("A1xA1", rs.clone(), base.fixed_points, GenericStabilizer::Roots(long), base.kirwan).unwrap();
        assert!(lemma2_vanishing(&m));
        assert!(decompose(&localized_index(&m, &ExpansionConfig::default()).unwrap(), &rs).unwrap().is_empty());
    }

    #[test]
    fn lemma3_examples() {
        assert!(!lemma3_vanishing(&su3_flag_bundle(1, 3)));

        let rs = a2();
        let sub = GenericStabilizer::Class(rs.class_of(&rs.face(&[0])));
        let origin = KirwanSet::new(vec![KirwanPiece {
            face: rs.face(&[0, 1]),
            shape: KirwanShape::Hull { vertices: vec![w(&[0, 0])] },
        }]);
        let m = ManifoldModel::new("origin", rs.clone(), Vec::new(), sub.clone(), origin).unwrap();
        assert!(lemma3_vanishing(&m));

        let vertex = KirwanSet::new(vec![KirwanPiece {
            face: rs.face(&[1]),
            shape: KirwanShape::Segment { lo: Q::zero(), hi: Q::zero() },
        }]);
        let m = ManifoldModel::new("vertex", rs, Vec::new(), sub, vertex).unwrap();
        assert!(lemma3_vanishing(&m));
    }

    #[test]
    fn provider_warnings() {
        let m = su3_flag_bundle(1, 3);
        assert!(validate_provider(&ReducedIndexProvider::Constant(1), &m).is_empty());
        let bad = ReducedIndexProvider::table([(w(&[1, 0]), 1)]);
        assert_eq!(validate_provider(&bad, &m), vec![ProviderWarning::NonAdmissibleKey(w(&[1, 0]))]);

        let chambers = vec![
            ChamberTable { name: "C1".into(), entries: [(h(3, 0), 1)].into_iter().collect() },
            ChamberTable { name: "C2".into(), entries: [(h(3, 0), 2)].into_iter().collect() },
        ];
        let p = ReducedIndexProvider::Table { entries: BTreeMap::new(), chambers };
        let warnings = validate_provider(&p, &m);
        assert!(matches!(&warnings[..], [ProviderWarning::WallInconsistency { mu, .. }] if *mu == h(3, 0)));
        assert_eq!(
            validate_provider(&ReducedIndexProvider::FromMultiplicities(Decomposition::default()), &m),
            vec![ProviderWarning::NonAbelianStabilizer]
        );
    }

    #[test]
    fn table_json_round_trip() {
        let text = r#"{"entries":[{"mu":["3/2","0"],"value":1}],"chambers":[{"name":"C1","entries":[{"mu":["1/2","0"],"value":0}]}]}"#;
        let p = ReducedIndexProvider::table_from_json(text).unwrap();
        let ReducedIndexProvider::Table { entries, chambers } = &p else { panic!() };
        assert_eq!(entries[&h(3, 0)], 1);
        assert_eq!(chambers[0].entries[&h(1, 0)], 0);
    }

    #[test]
    fn abelian_from_multiplicities_round_trips() {
        let rs = RootSystem::from_label("A1").unwrap();
        let parts: Vec<ManifoldModel> = [1, 2, 4].iter().map(|&k| orbit_model(&rs, &w(&[k])).unwrap()).collect();
        let m = ManifoldModel::disjoint_union("three spheres", &parts).unwrap();
        assert!(m.generic_stabilizer.is_abelian());
        let lhs = decompose(&localized_index(&m, &ExpansionConfig::default()).unwrap(), &rs).unwrap();
        assert_eq!(lhs, Decomposition::from_pairs([(w(&[1]), 1), (w(&[2]), 1), (w(&[4]), 1)]));
        let report = verify_qr(&m, &ReducedIndexProvider::FromMultiplicities(lhs), &ExpansionConfig::default()).unwrap();
        assert!(report.is_match());
        assert_eq!(report.orbit_terms.len(), 3);
    }

    #[test]
    fn from_multiplicities_rejects_non_abelian() {
        let p = ReducedIndexProvider::FromMultiplicities(Decomposition::default());
        assert!(matches!(
            verify_qr(&su3_flag_bundle(1, 3), &p, &ExpansionConfig::default()),
            Err(QrError::ProviderRequiresAbelian)
        ));
    }

    #[test]
    fn central_coordinates_are_rejected() {
        let rs = RootSystem::from_label("A1").unwrap();
        let fp = FixedPointDatum::new("p", w(&[0, 2]), vec![w(&[2, 0])]);
        let fq = FixedPointDatum::new("q", w(&[0, 2]), vec![w(&[-2, 0])]);
        let class = GenericStabilizer::Class(rs.class_of(&rs.face(&[])));
        let m = ManifoldModel::new("u2", rs, vec![fp, fq], class, KirwanSet::default()).unwrap();
        assert!(matches!(
            verify_qr(&m, &ReducedIndexProvider::Constant(1), &ExpansionConfig::default()),
            Err(QrError::CentralCoordinates { dim: 2, rank: 1 })
        ));
    }
}
