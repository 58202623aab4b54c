//! Atiyah–Bott localization for spin^c indices of torus manifolds with
//! isolated fixed points, plus builders for orbit models and the SU(3)
//! flag-bundle family.
//!
//! A fixed point `p` with determinant weight `η_p` and tangent weights
//! `α_{p,j}` contributes
//!
//! ```text
//! t^{η_p/2} / Π_j (t^{α_{p,j}/2} − t^{−α_{p,j}/2})
//! ```
//!
//! and the index is the sum over fixed points, a Laurent polynomial. Each
//! contribution is expanded as a series decreasing along a generic direction
//! `ξ`; terms below the support of the true answer cancel between fixed
//! points.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{q_to_f64, VirtualCharacter};
use crate::lie::{Face, LieError, RootSystem, StabilizerClass};
use crate::orbits::{is_admissible, OrbitError};
use crate::rational::{Weight, Q};

pub const DEFAULT_STABILITY_MARGIN: u64 = 5;
const SAMPLE_RETRIES: usize = 10_000;
const MIN_DENOMINATOR: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("parity violation at fixed point `{label}`: η − Σα = {residual} is not in 2Λ")]
    ParityViolation { label: String, residual: Weight },
    #[error("fixed point `{label}` has a zero tangent weight")]
    ZeroTangentWeight { label: String },
    #[error("fixed point `{label}` has non-integral weight {weight}")]
    NonIntegralWeight { label: String, weight: Weight },
    #[error("weight {weight} at `{label}` has {got} coordinates, expected {expected}")]
    DimensionMismatch { label: String, weight: Weight, got: usize, expected: usize },
    #[error("direction ξ pairs to zero with tangent weight {weight} at `{label}`")]
    NonGenericDirection { label: String, weight: Weight },
    #[error("cutoff {cutoff} is unstable: depth {cutoff} and {cutoff}+{margin} disagree")]
    UnstableCutoff { cutoff: u64, margin: u64 },
    #[error("could not find a regular sample point after {0} tries")]
    SingularSamplePoint(usize),
    #[error("invalid Kirwan data: {0}")]
    InvalidKirwan(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

/// Local data at an isolated torus-fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub label: String,
    pub det_weight: Weight,
    pub tangent_weights: Vec<Weight>,
}

impl FixedPointDatum {
    pub fn new(label: impl Into<String>, det_weight: Weight, tangent_weights: Vec<Weight>) -> Self {
        FixedPointDatum { label: label.into(), det_weight, tangent_weights }
    }

    /// `η − Σα`, which must lie in `2Λ`.
    pub fn parity_residual(&self) -> Weight {
        let mut r = self.det_weight.clone();
        for a in &self.tangent_weights {
            r = &r - a;
        }
        r
    }

    /// Moment value `η/2`.
    pub fn moment(&self) -> Weight {
        self.det_weight.scale(Q::new(1, 2))
    }

    fn validate(&self, dim: usize) -> Result<(), LocalizationError> {
        for w in std::iter::once(&self.det_weight).chain(&self.tangent_weights) {
            if w.len() != dim {
                return Err(LocalizationError::DimensionMismatch {
                    label: self.label.clone(),
                    weight: w.clone(),
                    got: w.len(),
                    expected: dim,
                });
            }
            if !w.is_integral() {
                return Err(LocalizationError::NonIntegralWeight {
                    label: self.label.clone(),
                    weight: w.clone(),
                });
            }
        }
        if self.tangent_weights.iter().any(Weight::is_zero) {
            return Err(LocalizationError::ZeroTangentWeight { label: self.label.clone() });
        }
        let residual = self.parity_residual();
        if !residual.is_even() {
            return Err(LocalizationError::ParityViolation { label: self.label.clone(), residual });
        }
        Ok(())
    }
}

/// Shape of one piece of a declared Kirwan set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KirwanShape {
    /// `{t·ω_i : lo ≤ t ≤ hi}` along the ray face whose free coordinate is `i`.
    Segment { lo: Q, hi: Q },
    /// Convex hull of finitely many points in the closure of the face.
    Hull { vertices: Vec<Weight> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirwanPiece {
    pub face: Face,
    pub shape: KirwanShape,
}

impl KirwanPiece {
    fn validate(&self, rs: &RootSystem) -> Result<(), LocalizationError> {
        let rank = rs.rank();
        match &self.shape {
            KirwanShape::Segment { lo, hi } => {
                if self.face.free_coords(rank).len() != 1 {
                    return Err(LocalizationError::InvalidKirwan(format!(
                        "segment on face {} which is not a ray",
                        self.face
                    )));
                }
                if lo.is_negative() || hi < lo {
                    return Err(LocalizationError::InvalidKirwan(format!(
                        "bad segment [{lo}, {hi}] on face {}",
                        self.face
                    )));
                }
            }
            KirwanShape::Hull { vertices } => {
                if vertices.is_empty() {
                    return Err(LocalizationError::InvalidKirwan("empty vertex list".into()));
                }
                for v in vertices {
                    let in_closure = v.len() >= rank
                        && (0..rank).all(|i| {
                            let c = v.coord(i);
                            if self.face.vanishes_on(i) { c.is_zero() } else { !c.is_negative() }
                        });
                    if !in_closure {
                        return Err(LocalizationError::InvalidKirwan(format!(
                            "vertex {v} is not in the closure of face {}",
                            self.face
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the piece meets the relative interior of its own face.
    pub fn meets_open_face(&self, rank: usize) -> bool {
        self.meets(&self.face, rank)
    }

    /// Whether the piece meets the relative interior of `face`, which must
    /// lie in the closure of the piece's face to be reachable at all.
    pub fn meets(&self, face: &Face, rank: usize) -> bool {
        if !self.face.vanishing_set().iter().all(|&i| face.vanishes_on(i)) {
            return false;
        }
        let free = face.free_coords(rank);
        match &self.shape {
            KirwanShape::Segment { lo, hi } => {
                if free.is_empty() {
                    lo.is_zero()
                } else {
                    face == &self.face && hi.is_positive()
                }
            }
            KirwanShape::Hull { vertices } => {
                // the closure of `face` is an exposed face of the cone, so the
                // hull meets it in the hull of the vertices lying on it
                let on: Vec<&Weight> = vertices
                    .iter()
                    .filter(|v| (0..rank).all(|i| !face.vanishes_on(i) || v.coord(i).is_zero()))
                    .collect();
                !on.is_empty() && free.iter().all(|&i| on.iter().any(|v| v.coord(i).is_positive()))
            }
        }
    }

    pub fn contains(&self, point: &Weight, rank: usize) -> bool {
        match &self.shape {
            KirwanShape::Segment { lo, hi } => {
                let i = self.face.free_coords(rank)[0];
                (0..rank).all(|j| j == i || point.coord(j).is_zero())
                    && point.coord(i) >= *lo
                    && point.coord(i) <= *hi
            }
            KirwanShape::Hull { vertices } => in_convex_hull(point, vertices),
        }
    }

    /// Coordinate box `[min, max]` of the piece along each free coordinate.
    pub fn bounding_box(&self, rank: usize) -> Vec<(Q, Q)> {
        let free = self.face.free_coords(rank);
        match &self.shape {
            KirwanShape::Segment { lo, hi } => vec![(*lo, *hi)],
            KirwanShape::Hull { vertices } => free
                .iter()
                .map(|&i| {
                    let vals = vertices.iter().map(|v| v.coord(i));
                    (vals.clone().min().unwrap(), vals.max().unwrap())
                })
                .collect(),
        }
    }
}

/// Exact convex-hull membership: `p` is a convex combination of some
/// affinely independent subset of at most `dim + 1` vertices.
fn in_convex_hull(p: &Weight, vertices: &[Weight]) -> bool {
    if vertices.iter().any(|v| v == p) {
        return true;
    }
    let dim = p.len();
    let n = vertices.len();
    let max_size = (dim + 1).min(n);
    for size in 2..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if let Some(coeffs) = solve_affine(p, &idx.iter().map(|&i| &vertices[i]).collect::<Vec<_>>()) {
                if coeffs.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

/// Solves `Σ c_i v_i = p, Σ c_i = 1` exactly; `None` unless the solution is unique.
fn solve_affine(p: &Weight, vs: &[&Weight]) -> Option<Vec<Q>> {
    let m = vs.len();
    let dim = p.len();
    // rows: dim coordinate equations plus the affine constraint
    let mut rows: Vec<Vec<Q>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Q> = vs.iter().map(|v| v.coord(r)).collect();
            row.push(p.coord(r));
            row
        })
        .collect();
    let mut last = vec![Q::from_integer(1); m];
    last.push(Q::from_integer(1));
    rows.push(last);

    let mut pivot_row = 0;
    for col in 0..m {
        let r = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, r);
        let inv = Q::from_integer(1) / rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for c in 0..=m {
                    let delta = f * rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    // inconsistent system
    if rows[pivot_row..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    Some((0..m).map(|i| rows[i][m]).collect())
}

/// Declared image of the moment map in the closed chamber.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KirwanSet {
    pub pieces: Vec<KirwanPiece>,
}

impl KirwanSet {
    pub fn new(pieces: Vec<KirwanPiece>) -> Self {
        KirwanSet { pieces }
    }

    /// The set meets the relative interior of `face`.
    pub fn meets(&self, face: &Face, rank: usize) -> bool {
        self.pieces.iter().any(|p| p.meets(face, rank))
    }

    pub fn contains(&self, point: &Weight, rank: usize) -> bool {
        self.pieces.iter().any(|p| p.contains(point, rank))
    }

    pub fn pieces_on<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a KirwanPiece> + 'a {
        self.pieces.iter().filter(move |p| &p.face == face)
    }
}

/// Generic infinitesimal stabilizer of a model, up to conjugacy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericStabilizer {
    /// Realized by the Levi subalgebras of these faces.
    Class(StabilizerClass),
    /// Semisimple part given by explicit positive roots; may fail to be a Levi.
    Roots(Vec<Weight>),
}

impl GenericStabilizer {
    /// Positive roots of the semisimple part.
    pub fn roots(&self) -> &[Weight] {
        match self {
            GenericStabilizer::Class(c) => c.faces()[0].levi_positive_roots(),
            GenericStabilizer::Roots(r) => r,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.roots().is_empty()
    }
}

/// Spin^c K-manifold described by its torus-fixed-point data.
#[derive(Debug, Clone)]
pub struct ManifoldModel {
    pub name: String,
    pub root_system: RootSystem,
    pub fixed_points: Vec<FixedPointDatum>,
    pub generic_stabilizer: GenericStabilizer,
    pub kirwan: KirwanSet,
    pub metadata: BTreeMap<String, String>,
}

impl ManifoldModel {
    /// Validates the fixed-point parity condition and the Kirwan metadata.
    pub fn new(
        name: impl Into<String>,
        root_system: RootSystem,
        fixed_points: Vec<FixedPointDatum>,
        generic_stabilizer: GenericStabilizer,
        kirwan: KirwanSet,
    ) -> Result<Self, LocalizationError> {
        let model = ManifoldModel {
            name: name.into(),
            root_system,
            fixed_points,
            generic_stabilizer,
            kirwan,
            metadata: BTreeMap::new(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Torus dimension: rank plus any central coordinates.
    pub fn torus_dim(&self) -> usize {
        self.fixed_points
            .first()
            .map_or(self.root_system.rank(), |p| p.det_weight.len())
    }

    pub fn validate(&self) -> Result<(), LocalizationError> {
        let dim = self.torus_dim();
        if dim < self.root_system.rank() {
            return Err(LocalizationError::InvalidModel(format!(
                "torus dimension {dim} is below the rank {}",
                self.root_system.rank()
            )));
        }
        for p in &self.fixed_points {
            p.validate(dim)?;
        }
        for piece in &self.kirwan.pieces {
            piece.validate(&self.root_system)?;
        }
        Ok(())
    }

    /// Disjoint union of models over the same group.
    pub fn disjoint_union(name: &str, parts: &[ManifoldModel]) -> Result<Self, LocalizationError> {
        let first = parts
            .first()
            .ok_or_else(|| LocalizationError::InvalidModel("empty union".into()))?;
        let mut fixed_points = Vec::new();
        let mut pieces = Vec::new();
        for (k, m) in parts.iter().enumerate() {
            if m.generic_stabilizer != first.generic_stabilizer {
                return Err(LocalizationError::InvalidModel(
                    "union components have different generic stabilizers".into(),
                ));
            }
            fixed_points.extend(m.fixed_points.iter().map(|p| FixedPointDatum {
                label: format!("{k}:{}", p.label),
                ..p.clone()
            }));
            pieces.extend(m.kirwan.pieces.iter().cloned());
        }
        ManifoldModel::new(
            name,
            first.root_system.clone(),
            fixed_points,
            first.generic_stabilizer.clone(),
            KirwanSet::new(pieces),
        )
    }
}

/// Expansion parameters for [`localized_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionConfig {
    /// Generic direction in dual coordinates; `None` picks a perturbed `ρ^∨`.
    pub direction: Option<Vec<Q>>,
    /// Depth below the highest contribution, in units of `ξ`; `None` uses the
    /// exact support bound.
    pub cutoff: Option<u64>,
    pub stability_margin: u64,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig { direction: None, cutoff: None, stability_margin: DEFAULT_STABILITY_MARGIN }
    }
}

impl ExpansionConfig {
    pub fn with_cutoff(cutoff: u64) -> Self {
        ExpansionConfig { cutoff: Some(cutoff), ..Self::default() }
    }
}

/// `ρ^∨ + Σ_k ε^k e_k` with `ε = 1/97`.
pub fn default_direction(rs: &RootSystem, dim: usize) -> Vec<Q> {
    let eps = Q::new(1, 97);
    let mut pow = eps;
    (0..dim)
        .map(|k| {
            let base = if k < rs.rank() { rs.rho_check()[k] } else { Q::zero() };
            let v = base + pow;
            pow *= eps;
            v
        })
        .collect()
}

/// One fixed point's contribution, oriented along `ξ`.
struct OrientedContribution {
    sign: i64,
    base: Vec<i64>,
    steps: Vec<(Vec<i64>, i64)>,
    top: i64,
    bottom: i64,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orient(p: &FixedPointDatum, xi: &[i64]) -> Result<OrientedContribution, LocalizationError> {
    let eta = p.det_weight.to_ints().expect("validated integral");
    let mut sign = 1;
    let mut sum = vec![0i64; eta.len()];
    let mut steps = Vec::with_capacity(p.tangent_weights.len());
    for a in &p.tangent_weights {
        let mut beta = a.to_ints().expect("validated integral");
        let pairing = dot(&beta, xi);
        if pairing == 0 {
            return Err(LocalizationError::NonGenericDirection {
                label: p.label.clone(),
                weight: a.clone(),
            });
        }
        if pairing < 0 {
            sign = -sign;
            beta.iter_mut().for_each(|x| *x = -*x);
        }
        for (s, b) in sum.iter_mut().zip(&beta) {
            *s += b;
        }
        let step = pairing.abs();
        steps.push((beta, step));
    }
    // t^{η/2} Π (t^{β/2} − t^{−β/2})^{-1} = ± t^{(η−Σβ)/2} Π Σ_k t^{−kβ}
    let base: Vec<i64> = eta
        .iter()
        .zip(&sum)
        .map(|(e, s)| {
            debug_assert!((e - s).is_even());
            (e - s) / 2
        })
        .collect();
    let top = dot(&base, xi);
    let bottom = top + steps.iter().map(|(_, s)| s).sum::<i64>();
    Ok(OrientedContribution { sign, base, steps, top, bottom })
}

/// Dense encoding of exponent vectors as single integers. Encoding is
/// linear, so subtracting `β` from an exponent subtracts `encode(β)` from its
/// key as long as both stay inside the box.
struct Packing {
    min: Vec<i64>,
    stride: Vec<i64>,
}

impl Packing {
    /// Box containing every exponent reachable above `floor`; `None` if it
    /// does not fit in 62 bits.
    fn new(contributions: &[OrientedContribution], floor: i64, dim: usize) -> Option<Packing> {
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for c in contributions {
            let budget = (c.top - floor).max(0);
            for i in 0..dim {
                let (mut down, mut up) = (0i64, 0i64);
                for (beta, step) in &c.steps {
                    let k = budget / step;
                    let b = beta[i].checked_mul(k)?;
                    if b > 0 { down += b } else { up -= b }
                }
                lo[i] = lo[i].min(c.base[i].checked_sub(down)?);
                hi[i] = hi[i].max(c.base[i].checked_add(up)?);
            }
        }
        let mut stride = vec![0i64; dim];
        let mut acc: i64 = 1;
        for i in (0..dim).rev() {
            stride[i] = acc;
            acc = acc.checked_mul(hi[i].checked_sub(lo[i])?.checked_add(1)?)?;
            if acc > 1 << 62 {
                return None;
            }
        }
        Some(Packing { min: lo, stride })
    }

    fn encode(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.min).zip(&self.stride).map(|((x, m), s)| (x - m) * s).sum()
    }

    fn delta(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.stride).map(|(x, s)| x * s).sum()
    }

    fn decode(&self, mut key: i64) -> Vec<i64> {
        self.stride
            .iter()
            .zip(&self.min)
            .map(|(s, m)| {
                let q = key / s;
                key %= s;
                q + m
            })
            .collect()
    }
}

/// Series of one contribution restricted to exponents with pairing ≥ `floor`,
/// keyed by packed exponent with value `(pairing, coefficient)`.
fn expand(c: &OrientedContribution, xi: &[i64], floor: i64, pack: &Packing) -> HashMap<i64, (i64, i64)> {
    let mut cur: HashMap<i64, (i64, i64)> = HashMap::new();
    if c.top >= floor {
        cur.insert(pack.encode(&c.base), (dot(&c.base, xi), c.sign));
    }
    for (beta, step) in &c.steps {
        let d = pack.delta(beta);
        let mut next: HashMap<i64, (i64, i64)> = HashMap::with_capacity(cur.len() * 2);
        for (key, (pairing, coeff)) in cur {
            let (mut k, mut p) = (key, pairing);
            while p >= floor {
                next.entry(k).or_insert((p, 0)).1 += coeff;
                k -= d;
                p -= step;
            }
        }
        cur = next;
    }
    cur
}

/// Equivariant spin^c index of `model` by fixed-point localization.
struct Prepared {
    xi: Vec<i64>,
    scale: i64,
    contributions: Vec<OrientedContribution>,
    top: i64,
    bottom: i64,
}

impl Prepared {
    /// Smallest depth, in units of `ξ`, reaching below the lowest possible
    /// term of the true index.
    fn support_depth(&self) -> u64 {
        Integer::div_ceil(&(self.top - self.bottom).max(0), &self.scale) as u64
    }
}

fn prepare(model: &ManifoldModel, cfg: &ExpansionConfig) -> Result<Option<Prepared>, LocalizationError> {
    model.validate()?;
    let dim = model.torus_dim();
    if model.fixed_points.is_empty() {
        return Ok(None);
    }
    let direction = cfg
        .direction
        .clone()
        .unwrap_or_else(|| default_direction(&model.root_system, dim));
    if direction.len() != dim {
        return Err(LocalizationError::InvalidModel(format!(
            "direction has {} coordinates, torus has {dim}",
            direction.len()
        )));
    }
    let scale = direction.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let xi: Vec<i64> = direction.iter().map(|q| (q * scale).to_integer()).collect();

    let contributions = model
        .fixed_points
        .iter()
        .map(|p| orient(p, &xi))
        .collect::<Result<Vec<_>, _>>()?;
    let top = contributions.iter().map(|c| c.top).max().unwrap();
    let bottom = contributions.iter().map(|c| c.bottom).min().unwrap();
    Ok(Some(Prepared { xi, scale, contributions, top, bottom }))
}

/// Cutoff used when none is configured.
///
/// Every fixed-point contribution is `t^{η/2}/Π(t^{β/2} − t^{−β/2})` with
/// `⟨β, ξ⟩ > 0`; its expansion starts at pairing `⟨η/2 − Σβ/2, ξ⟩`, and the
/// expansion in the opposite direction ends at `⟨η/2 + Σβ/2, ξ⟩`. The index
/// is a polynomial, so it lies between the lowest of the latter and the
/// highest of the former, which is exactly this depth.
pub fn default_cutoff(model: &ManifoldModel, cfg: &ExpansionConfig) -> Result<u64, LocalizationError> {
    Ok(prepare(model, cfg)?.map_or(0, |p| p.support_depth()))
}

/// Equivariant spin^c index of `model` by fixed-point localization.
pub fn localized_index(
    model: &ManifoldModel,
    cfg: &ExpansionConfig,
) -> Result<VirtualCharacter, LocalizationError> {
    let Some(prepared) = prepare(model, cfg)? else {
        return Ok(VirtualCharacter::zero());
    };
    let dim = model.torus_dim();
    let cutoff = cfg.cutoff.unwrap_or_else(|| prepared.support_depth());
    let Prepared { xi, scale, contributions, top, .. } = prepared;
    let depth = cutoff as i64 * scale;
    let floor = top - depth;
    let margin = cfg.stability_margin as i64 * scale;
    let extended = floor - margin;

    let pack = Packing::new(&contributions, extended, dim).ok_or_else(|| {
        LocalizationError::InvalidModel("expansion window too large; lower the cutoff".into())
    })?;
    let total = contributions
        .par_iter()
        .map(|c| expand(c, &xi, extended, &pack))
        .reduce(HashMap::new, |mut acc, part| {
            for (k, (p, v)) in part {
                acc.entry(k).or_insert((p, 0)).1 += v;
            }
            acc
        });

    let mut out = VirtualCharacter::zero();
    for (key, (pairing, coeff)) in total {
        if coeff == 0 {
            continue;
        }
        if pairing < floor {
            return Err(LocalizationError::UnstableCutoff {
                cutoff,
                margin: cfg.stability_margin,
            });
        }
        out.add_term(Weight::from_ints(&pack.decode(key)), coeff);
    }
    Ok(out)
}

/// Direct evaluation of the fixed-point sum at `θ`; `None` near a pole.
pub fn fixed_point_sum(model: &ManifoldModel, theta: &[f64]) -> Option<Complex64> {
    let pair = |w: &Weight| -> f64 { w.coords().iter().zip(theta).map(|(q, t)| q_to_f64(q) * t).sum() };
    let mut total = Complex64::zero();
    for p in &model.fixed_points {
        let mut den = Complex64::new(1.0, 0.0);
        for a in &p.tangent_weights {
            // t^{α/2} − t^{−α/2} = 2i sin(⟨α,θ⟩/2)
            den *= Complex64::new(0.0, 2.0 * (pair(a) / 2.0).sin());
        }
        if den.norm() < MIN_DENOMINATOR {
            return None;
        }
        total += Complex64::from_polar(1.0, pair(&p.det_weight) / 2.0) / den;
    }
    Some(total)
}

/// Maximum deviation between the fixed-point sum and `chi` over random
/// regular torus points.
pub fn numeric_cross_check(
    model: &ManifoldModel,
    chi: &VirtualCharacter,
    trials: usize,
    seed: u64,
) -> Result<f64, LocalizationError> {
    let dim = model.torus_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let mut found = None;
        for _ in 0..SAMPLE_RETRIES {
            let theta: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            if let Some(v) = fixed_point_sum(model, &theta) {
                found = Some((theta, v));
                break;
            }
        }
        let (theta, v) = found.ok_or(LocalizationError::SingularSamplePoint(SAMPLE_RETRIES))?;
        worst = worst.max((v - chi.evaluate(&theta)).norm());
    }
    Ok(worst)
}

/// Fixed-point moment value `η_p/2`, its dominant representative, and
/// whether the declared Kirwan set contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentCheck {
    pub label: String,
    pub moment: Weight,
    pub dominant: Weight,
    pub in_kirwan: bool,
}

pub fn moment_report(model: &ManifoldModel) -> Vec<MomentCheck> {
    let rs = &model.root_system;
    model
        .fixed_points
        .iter()
        .map(|p| {
            let moment = p.moment();
            let (dominant, _) = rs.dominant_representative(&moment);
            let in_kirwan = model.kirwan.contains(&dominant, rs.rank());
            MomentCheck { label: p.label.clone(), moment, dominant, in_kirwan }
        })
        .collect()
}

/// Kirwan piece consisting of a single point.
fn point_piece(mu: &Weight, face: Face, rank: usize) -> KirwanPiece {
    let free = face.free_coords(rank);
    let shape = if free.len() == 1 {
        let t = mu.coord(free[0]);
        KirwanShape::Segment { lo: t, hi: t }
    } else {
        KirwanShape::Hull { vertices: vec![mu.clone()] }
    };
    KirwanPiece { face, shape }
}

/// The coadjoint orbit `K·μ` with its canonical spin^c structure: fixed
/// points `wμ` for `w ∈ W/W_S`, determinant weight `2wμ`, tangent weights
/// `w(Δ^+ \ Δ_S^+)`.
pub fn orbit_model(rs: &RootSystem, mu: &Weight) -> Result<ManifoldModel, LocalizationError> {
    rs.check_len(mu)?;
    if !is_admissible(mu, rs)? {
        return Err(OrbitError::NotAdmissible(mu.clone()).into());
    }
    let face = rs.face_of(mu)?;
    let levi: HashSet<&Weight> = face.levi_positive_roots().iter().collect();
    let transverse: Vec<&Weight> = rs.positive_roots().iter().filter(|r| !levi.contains(r)).collect();

    let mut seen = HashSet::new();
    let mut fixed_points = Vec::new();
    for g in rs.weyl_elements() {
        let image = g.apply(mu);
        if !seen.insert(image.clone()) {
            continue;
        }
        let tangent = transverse.iter().map(|r| g.apply(r)).collect();
        fixed_points.push(FixedPointDatum::new(format!("w·μ={image}"), 2 * &image, tangent));
    }
    let class = rs.class_of(&face);
    let kirwan = KirwanSet::new(vec![point_piece(mu, face, rs.rank())]);
    ManifoldModel::new(
        format!("orbit({}; μ={mu})", rs.label()),
        rs.clone(),
        fixed_points,
        GenericStabilizer::Class(class),
        kirwan,
    )
}

/// Determinant line bundle `(2c+δ_1)·L_1 + (2d+δ_2)·L_2 + κ·K^{-1}` in
/// fiber-weight convention for the SU(3) flag bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterminantConvention {
    pub c: i64,
    pub d: i64,
    pub delta1: i64,
    pub delta2: i64,
    pub kappa: i64,
}

impl DeterminantConvention {
    /// `−(2a+2)·L_1 − (2b+2)·L_2`: passes the parity test at every fixed
    /// point and reproduces the announced decompositions.
    pub fn calibrated(a: i64, b: i64) -> Self {
        DeterminantConvention { c: -(a + 1), d: -(b + 1), delta1: 0, delta2: 0, kappa: 0 }
    }

    /// `L_{2a+1, 2b+1}` read literally; fails parity where `ℓ = e_4`.
    pub fn literal(a: i64, b: i64) -> Self {
        DeterminantConvention { c: a, d: b, delta1: 1, delta2: 1, kappa: 0 }
    }

    pub fn l1_coeff(&self) -> i64 {
        2 * self.c + self.delta1
    }

    pub fn l2_coeff(&self) -> i64 {
        2 * self.d + self.delta2
    }

    pub fn describe(&self) -> String {
        format!(
            "det = {}·L1 + {}·L2 + {}·K^-1 (c={}, d={}, δ=({},{}), κ={})",
            self.l1_coeff(),
            self.l2_coeff(),
            self.kappa,
            self.c,
            self.d,
            self.delta1,
            self.delta2,
            self.kappa
        )
    }
}

/// Torus weights `x_1, x_2, x_3` of `C^3` in ω-coordinates, labeled so
/// that the stabilizer of `ω_1` fixes the line `C e_3`.
pub fn su3_standard_weights() -> [Weight; 3] {
    [Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, -1]), Weight::from_ints(&[-1, 0])]
}

/// The `P^1`-bundle over `P^2` of flags `L_2 ⊂ L_3 ⊂ C^4` with `L_2 ⊂ C^3`,
/// with the calibrated determinant convention.
pub fn su3_flag_bundle(a: i64, b: i64) -> ManifoldModel {
    su3_flag_bundle_with(a, b, DeterminantConvention::calibrated(a, b))
        .expect("calibrated convention satisfies parity")
}

pub fn su3_flag_bundle_with(
    a: i64,
    b: i64,
    conv: DeterminantConvention,
) -> Result<ManifoldModel, LocalizationError> {
    let rs = RootSystem::from_label("A2")?;
    let x = su3_standard_weights();
    let zero = Weight::zero(2);
    let mut fixed_points = Vec::with_capacity(6);
    for k in 0..3 {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let xk = &x[k];
        for line_is_ek in [true, false] {
            let l1 = &x[i] + &x[j];
            let l2 = if line_is_ek { xk.clone() } else { zero.clone() };
            let fiber = if line_is_ek { -xk } else { xk.clone() };
            let tangent = vec![xk - &x[i], xk - &x[j], fiber];
            let mut anti = zero.clone();
            for t in &tangent {
                anti += t;
            }
            let det = &(&(conv.l1_coeff() * &l1) + &(conv.l2_coeff() * &l2)) + &(conv.kappa * &anti);
            let label = format!(
                "L2=<e{},e{}>,l={}",
                i + 1,
                j + 1,
                if line_is_ek { format!("e{}", k + 1) } else { "e4".to_string() }
            );
            fixed_points.push(FixedPointDatum::new(label, det, tangent));
        }
    }

    let subregular = rs.class_of(&rs.face(&[0]));
    let ray1 = rs.face(&[1]);
    let ray2 = rs.face(&[0]);
    let q = Q::from_integer;
    let pieces = if b > a {
        vec![
            KirwanPiece { face: ray1, shape: KirwanShape::Segment { lo: q(0), hi: q(b - a) } },
            KirwanPiece { face: ray2, shape: KirwanShape::Segment { lo: q(0), hi: q(a + 1) } },
        ]
    } else {
        vec![KirwanPiece { face: ray2, shape: KirwanShape::Segment { lo: q(a - b), hi: q(a + 1) } }]
    };
    let model = ManifoldModel::new(
        format!("su3-flag-bundle(a={a}, b={b})"),
        rs,
        fixed_points,
        GenericStabilizer::Class(subregular),
        KirwanSet::new(pieces),
    )?;
    Ok(model
        .with_metadata("a", a.to_string())
        .with_metadata("b", b.to_string())
        .with_metadata("determinant_convention", conv.describe())
        .with_metadata("weight_coordinates", "x1=ω2, x2=ω1−ω2, x3=−ω1"))
}
