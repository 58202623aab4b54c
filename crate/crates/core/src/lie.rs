//! Root systems, Weyl groups, chamber faces and Levi conjugacy.
//!
//! Everything is expressed in the fundamental-weight basis: the pairing of a
//! weight with the simple coroot `α_i^∨` is its `i`-th coordinate, and the
//! simple root `α_i` has coordinates `C_{ji}` (column `i` of the Cartan
//! matrix).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{Weight, Q};

pub const DEFAULT_WEYL_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("unknown or unsupported root system type `{0}`")]
    UnknownType(String),
    #[error("not a Cartan matrix of finite type: {0}")]
    InvalidCartan(String),
    #[error("Weyl group has more than {cap} elements")]
    WeylGroupTooLarge { cap: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {weight} has {got} coordinates, expected at least {rank}")]
    WrongLength { weight: Weight, got: usize, rank: usize },
}

/// Element of the Weyl group acting on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank x rank` integer matrix.
    matrix: Vec<i64>,
    sign: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement { rank, matrix, sign: 1 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.matrix[row * self.rank + col]
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let r = self.rank;
        let mut matrix = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                matrix[i * r + j] = (0..r).map(|k| self.entry(i, k) * other.entry(k, j)).sum();
            }
        }
        WeylElement { rank: r, matrix, sign: self.sign * other.sign }
    }

    /// Acts on the first `rank` coordinates; central coordinates are fixed.
    pub fn apply(&self, w: &Weight) -> Weight {
        let r = self.rank;
        let c = w.coords();
        let mut out = c.to_vec();
        for (i, slot) in out.iter_mut().enumerate().take(r) {
            *slot = (0..r).map(|k| c[k] * self.entry(i, k)).sum();
        }
        Weight::new(out)
    }

    /// Integer version of [`apply`](Self::apply) for lattice points.
    pub fn apply_ints(&self, w: &[i64]) -> Vec<i64> {
        let r = self.rank;
        let mut out = w.to_vec();
        for (i, slot) in out.iter_mut().enumerate().take(r) {
            *slot = (0..r).map(|k| w[k] * self.entry(i, k)).sum();
        }
        out
    }
}

/// Relative interior of a face of the closed dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// 0-based indices of the simple roots vanishing on the face.
    vanishing: Vec<usize>,
    rho_sigma: Weight,
    levi_positive_roots: Vec<Weight>,
}

impl Face {
    pub fn vanishing_set(&self) -> &[usize] {
        &self.vanishing
    }

    /// Vanishing set with 1-based labels, as printed to users.
    pub fn label(&self) -> Vec<usize> {
        self.vanishing.iter().map(|i| i + 1).collect()
    }

    pub fn rho_sigma(&self) -> &Weight {
        &self.rho_sigma
    }

    pub fn levi_positive_roots(&self) -> &[Weight] {
        &self.levi_positive_roots
    }

    pub fn vanishes_on(&self, i: usize) -> bool {
        self.vanishing.binary_search(&i).is_ok()
    }

    /// Indices of the coordinates that are strictly positive on the face.
    pub fn free_coords(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|i| !self.vanishes_on(*i)).collect()
    }

    /// Whether `w` lies in the relative interior of this face.
    pub fn contains(&self, w: &Weight, rank: usize) -> bool {
        (0..rank).all(|i| {
            let c = w.coord(i);
            if self.vanishes_on(i) {
                c.is_zero()
            } else {
                c.is_positive()
            }
        })
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.label().iter().map(|i| i.to_string()).collect();
        write!(f, "S={{{}}}", labels.join(","))
    }
}

/// Faces whose Levi root subsystems are pairwise Weyl-conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerClass {
    representative_faces: Vec<Face>,
}

impl StabilizerClass {
    pub fn new(representative_faces: Vec<Face>) -> Self {
        assert!(!representative_faces.is_empty(), "stabilizer class needs a face");
        StabilizerClass { representative_faces }
    }

    pub fn faces(&self) -> &[Face] {
        &self.representative_faces
    }

    pub fn is_abelian(&self) -> bool {
        self.representative_faces[0].levi_positive_roots.is_empty()
    }
}

/// Finite root system together with its Weyl group.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    /// Positive roots in the simple-root basis, aligned with `positive_roots`.
    root_coords: Vec<Vec<i64>>,
    /// Matching coroots in the simple-coroot basis.
    coroot_coords: Vec<Vec<i64>>,
    rho: Weight,
    rho_check: Vec<Q>,
    weyl: Vec<WeylElement>,
}

impl RootSystem {
    /// Builds a root system from a label such as `"A2"`, `"G2"` or `"A1xB2"`.
    pub fn from_label(label: &str) -> Result<Self, LieError> {
        Self::from_label_with_cap(label, DEFAULT_WEYL_CAP)
    }

    pub fn from_label_with_cap(label: &str, cap: usize) -> Result<Self, LieError> {
        let cartan = cartan_from_label(label)?;
        Self::build(label.trim().to_string(), cartan, cap)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, LieError> {
        Self::from_cartan_with_cap(cartan, DEFAULT_WEYL_CAP)
    }

    pub fn from_cartan_with_cap(cartan: Vec<Vec<i64>>, cap: usize) -> Result<Self, LieError> {
        let label = format!("{cartan:?}");
        Self::build(label, cartan, cap)
    }

    fn build(label: String, cartan: Vec<Vec<i64>>, cap: usize) -> Result<Self, LieError> {
        validate_cartan(&cartan)?;
        let rank = cartan.len();
        let simple_roots: Vec<Weight> = (0..rank)
            .map(|i| Weight::from_ints(&(0..rank).map(|j| cartan[j][i]).collect::<Vec<_>>()))
            .collect();

        let weyl = generate_weyl(&cartan, cap)?;
        let (root_coords, coroot_coords) = generate_positive_roots(&cartan, cap)?;

        let positive_roots: Vec<Weight> = root_coords
            .iter()
            .map(|rc| {
                let mut w = Weight::zero(rank);
                for (i, &c) in rc.iter().enumerate() {
                    w += &(c * &simple_roots[i]);
                }
                w
            })
            .collect();

        let rho = Weight::from_ints(&vec![1; rank]);
        let half = Q::new(1, 2);
        let rho_check = (0..rank)
            .map(|i| coroot_coords.iter().map(|c| Q::from_integer(c[i])).sum::<Q>() * half)
            .collect();

        Ok(RootSystem {
            label,
            rank,
            cartan,
            simple_roots,
            positive_roots,
            root_coords,
            coroot_coords,
            rho,
            rho_check,
            weyl,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in the simple-root basis.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `ρ^∨` in the simple-coroot basis; pairing a weight with it gives its height.
    pub fn rho_check(&self) -> &[Q] {
        &self.rho_check
    }

    pub fn weyl_elements(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// `ρ` padded with zeros on central coordinates.
    pub fn rho_padded(&self, len: usize) -> Weight {
        let mut c = vec![Q::zero(); len];
        for slot in c.iter_mut().take(self.rank) {
            *slot = Q::one();
        }
        Weight::new(c)
    }

    /// Height `⟨w, ρ^∨⟩`, computed on the semisimple coordinates only.
    pub fn height(&self, w: &Weight) -> Q {
        (0..self.rank).map(|i| w.coord(i) * self.rho_check[i]).sum()
    }

    /// Pairing `⟨w, α^∨⟩` with the coroot of the `k`-th positive root.
    pub fn coroot_pairing(&self, w: &Weight, k: usize) -> Q {
        self.coroot_coords[k]
            .iter()
            .enumerate()
            .map(|(i, &c)| w.coord(i) * c)
            .sum()
    }

    /// Simple reflection `s_i` applied to `w`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = w.coord(i);
        let mut out = w.coords().to_vec();
        for (j, slot) in out.iter_mut().enumerate().take(self.rank) {
            *slot -= c * self.cartan[j][i];
        }
        Weight::new(out)
    }

    pub fn check_len(&self, w: &Weight) -> Result<(), LieError> {
        if w.len() < self.rank {
            return Err(LieError::WrongLength { weight: w.clone(), got: w.len(), rank: self.rank });
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.rank).all(|i| !w.coord(i).is_negative())
    }

    pub fn is_strictly_dominant(&self, w: &Weight) -> bool {
        (0..self.rank).all(|i| w.coord(i).is_positive())
    }

    /// True iff `⟨w, α^∨⟩ ≠ 0` for every positive root.
    pub fn is_regular(&self, w: &Weight) -> bool {
        (0..self.positive_roots.len()).all(|k| !self.coroot_pairing(w, k).is_zero())
    }

    /// Returns the dominant element of the Weyl orbit of `w` and an element
    /// mapping `w` onto it.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, WeylElement) {
        let mut cur = w.clone();
        let mut elem = WeylElement::identity(self.rank);
        while let Some(i) = (0..self.rank).find(|&i| cur.coord(i).is_negative()) {
            cur = self.reflect(i, &cur);
            elem = self.simple_reflection(i).compose(&elem);
        }
        (cur, elem)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        simple_reflection(&self.cartan, i)
    }

    /// Reflection `s_α` through the `k`-th positive root.
    pub fn root_reflection(&self, k: usize) -> WeylElement {
        let r = self.rank;
        let alpha = &self.positive_roots[k];
        let mut matrix = vec![0; r * r];
        for col in 0..r {
            // image of ω_col is ω_col - ⟨ω_col, α^∨⟩ α
            let pairing = self.coroot_coords[k][col];
            for row in 0..r {
                let delta = i64::from(row == col);
                matrix[row * r + col] = delta - pairing * alpha.coord(row).to_integer();
            }
        }
        WeylElement { rank: r, matrix, sign: -1 }
    }

    /// Face containing the dominant weight `w`.
    pub fn face_of(&self, w: &Weight) -> Result<Face, LieError> {
        self.check_len(w)?;
        if !self.is_dominant(w) {
            return Err(LieError::NotDominant(w.clone()));
        }
        let s: Vec<usize> = (0..self.rank).filter(|&i| w.coord(i).is_zero()).collect();
        Ok(self.face(&s))
    }

    /// Face with the given 0-based vanishing set.
    pub fn face(&self, vanishing: &[usize]) -> Face {
        let mut s = vanishing.to_vec();
        s.sort_unstable();
        s.dedup();
        assert!(s.iter().all(|&i| i < self.rank), "vanishing index out of range");
        let levi: Vec<Weight> = self
            .root_coords
            .iter()
            .zip(&self.positive_roots)
            .filter(|(rc, _)| rc.iter().enumerate().all(|(i, &c)| c == 0 || s.contains(&i)))
            .map(|(_, w)| w.clone())
            .collect();
        let mut rho_sigma = Weight::zero(self.rank);
        for r in &levi {
            rho_sigma += r;
        }
        let rho_sigma = rho_sigma.scale(Q::new(1, 2));
        Face { vanishing: s, rho_sigma, levi_positive_roots: levi }
    }

    /// All `2^rank` faces, ordered by size of the vanishing set, then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut subsets: Vec<Vec<usize>> = (0u32..(1 << self.rank))
            .map(|mask| (0..self.rank).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subsets.iter().map(|s| self.face(s)).collect()
    }

    /// A Weyl element carrying the Levi roots of `f1` onto those of `f2`
    /// (as sets of roots, up to sign), if one exists.
    pub fn levi_conjugate(&self, f1: &Face, f2: &Face) -> Option<WeylElement> {
        self.conjugate_root_sets(&f1.levi_positive_roots, &f2.levi_positive_roots)
    }

    /// Weyl element mapping `±from` onto `±to` as root sets.
    pub fn conjugate_root_sets(&self, from: &[Weight], to: &[Weight]) -> Option<WeylElement> {
        if from.len() != to.len() {
            return None;
        }
        let target: HashSet<Weight> = to.iter().flat_map(|r| [r.clone(), -r]).collect();
        self.weyl
            .iter()
            .find(|w| from.iter().all(|r| target.contains(&w.apply(r))))
            .cloned()
    }

    /// Partition of all faces into Levi-conjugacy classes.
    pub fn stabilizer_classes(&self) -> Vec<StabilizerClass> {
        let mut classes: Vec<Vec<Face>> = Vec::new();
        for face in self.faces() {
            match classes
                .iter_mut()
                .find(|c| self.levi_conjugate(&c[0], &face).is_some())
            {
                Some(c) => c.push(face),
                None => classes.push(vec![face]),
            }
        }
        classes.into_iter().map(StabilizerClass::new).collect()
    }

    /// Class containing the given face.
    pub fn class_of(&self, face: &Face) -> StabilizerClass {
        self.stabilizer_classes()
            .into_iter()
            .find(|c| c.faces().iter().any(|f| f == face))
            .expect("stabilizer classes cover every face")
    }
}

fn simple_reflection(cartan: &[Vec<i64>], i: usize) -> WeylElement {
    let r = cartan.len();
    let mut m = WeylElement::identity(r);
    // s_i(λ) = λ - λ_i α_i, so column i becomes e_i - α_i.
    for j in 0..r {
        m.matrix[j * r + i] -= cartan[j][i];
    }
    m.sign = -1;
    m
}

fn generate_weyl(cartan: &[Vec<i64>], cap: usize) -> Result<Vec<WeylElement>, LieError> {
    let r = cartan.len();
    let gens: Vec<WeylElement> = (0..r).map(|i| simple_reflection(cartan, i)).collect();
    let id = WeylElement::identity(r);
    let mut seen: HashSet<Vec<i64>> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = s.compose(&g);
            if seen.insert(h.matrix.clone()) {
                if out.len() >= cap {
                    return Err(LieError::WeylGroupTooLarge { cap });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// Positive roots (simple-root basis) paired with their coroots
/// (simple-coroot basis), by closure of the simple roots under reflections.
#[allow(clippy::type_complexity)]
fn generate_positive_roots(
    cartan: &[Vec<i64>],
    cap: usize,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), LieError> {
    let r = cartan.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone(), e.clone());
        queue.push_back((e.clone(), e));
    }
    while let Some((root, coroot)) = queue.pop_front() {
        for i in 0..r {
            // ⟨β, α_i^∨⟩ = Σ_j b_j C_{ij};  ⟨α_i, β^∨⟩ = Σ_j c_j C_{ji}
            let p: i64 = (0..r).map(|j| root[j] * cartan[i][j]).sum();
            let q: i64 = (0..r).map(|j| coroot[j] * cartan[j][i]).sum();
            let mut nr = root.clone();
            nr[i] -= p;
            let mut nc = coroot.clone();
            nc[i] -= q;
            if nr.iter().all(|&c| c >= 0) && !seen.contains_key(&nr) {
                if seen.len() > cap * r {
                    return Err(LieError::WeylGroupTooLarge { cap });
                }
                seen.insert(nr.clone(), nc.clone());
                queue.push_back((nr, nc));
            }
        }
    }
    let mut roots: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    Ok(roots.into_iter().unzip())
}

fn validate_cartan(c: &[Vec<i64>]) -> Result<(), LieError> {
    let r = c.len();
    if r == 0 {
        return Err(LieError::InvalidCartan("empty matrix".into()));
    }
    if c.iter().any(|row| row.len() != r) {
        return Err(LieError::InvalidCartan("matrix is not square".into()));
    }
    for i in 0..r {
        if c[i][i] != 2 {
            return Err(LieError::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..r {
            if i != j && (c[i][j] > 0 || ((c[i][j] == 0) != (c[j][i] == 0))) {
                return Err(LieError::InvalidCartan(format!("bad off-diagonal pair ({i},{j})")));
            }
        }
    }
    // finite type: every principal minor is positive
    for mask in 1u32..(1 << r) {
        let idx: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| i128::from(c[i][j])).collect())
            .collect();
        if determinant(sub) <= 0 {
            return Err(LieError::InvalidCartan(format!(
                "principal minor on {:?} is not positive",
                idx.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

/// Fraction-free (Bareiss) determinant.
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Cartan matrix `C_{ij} = ⟨α_j, α_i^∨⟩` for a (possibly product) type label.
pub fn cartan_from_label(label: &str) -> Result<Vec<Vec<i64>>, LieError> {
    let parts: Vec<&str> = label
        .split(['x', 'X', '×', '+'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(LieError::UnknownType(label.to_string()));
    }
    let blocks = parts
        .iter()
        .map(|p| simple_cartan(p))
        .collect::<Result<Vec<_>, _>>()?;
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[off + i][off + j] = v;
            }
        }
        off += b.len();
    }
    Ok(out)
}

fn simple_cartan(label: &str) -> Result<Vec<Vec<i64>>, LieError> {
    let unknown = || LieError::UnknownType(label.to_string());
    let mut chars = label.chars();
    let kind = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let chain = |n: usize| {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        c
    };
    let c = match (kind, n) {
        ('A', n) if n >= 1 => chain(n),
        ('B', n) if n >= 2 => {
            let mut c = chain(n);
            c[n - 1][n - 2] = -2;
            c
        }
        ('C', n) if n >= 2 => {
            let mut c = chain(n);
            c[n - 2][n - 1] = -2;
            c
        }
        ('D', n) if n >= 3 => {
            let mut c = chain(n);
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
            c
        }
        ('E', n) if (6..=8).contains(&n) => {
            // Bourbaki labels: 1-3-4-5-..., with 2 attached to 4.
            let mut c = vec![vec![0i64; n]; n];
            for (i, row) in c.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
            for (a, b) in edges {
                c[a][b] = -1;
                c[b][a] = -1;
            }
            c
        }
        ('F', 4) => {
            let mut c = chain(4);
            c[2][1] = -2;
            c
        }
        ('G', 2) => vec![vec![2, -3], vec![-1, 2]],
        _ => return Err(unknown()),
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    /// Brute-force oracle: the Weyl orbit by repeated simple reflections.
    fn orbit(rs: &RootSystem, x: &Weight) -> Vec<Weight> {
        let mut seen = vec![x.clone()];
        let mut i = 0;
        while i < seen.len() {
            for k in 0..rs.rank() {
                let y = rs.reflect(k, &seen[i]);
                if !seen.contains(&y) {
                    seen.push(y);
                }
            }
            i += 1;
        }
        seen
    }

    #[test]
    fn a2_roots_and_weyl_group() {
        let rs = RootSystem::from_label("A2").unwrap();
        assert_eq!(rs.rank(), 2);
        let mut roots = rs.positive_roots().to_vec();
        roots.sort();
        let mut expected = vec![w(&[2, -1]), w(&[-1, 2]), w(&[1, 1])];
        expected.sort();
        assert_eq!(roots, expected);
        assert_eq!(rs.weyl_order(), 6);
    }

    #[test]
    fn a1_and_a3() {
        let a1 = RootSystem::from_label("A1").unwrap();
        assert_eq!(a1.positive_roots(), &[w(&[2])]);
        assert_eq!(a1.rho(), &w(&[1]));
        assert_eq!(a1.weyl_order(), 2);

        let a3 = RootSystem::from_label("A3").unwrap();
        assert_eq!(a3.positive_roots().len(), 6);
        assert_eq!(a3.weyl_order(), 24);
    }

    #[test]
    fn weyl_orders_of_other_types() {
        for (label, roots, order) in [
            ("B2", 4, 8),
            ("C3", 9, 48),
            ("G2", 6, 12),
            ("D4", 12, 192),
            ("A1xA1", 2, 4),
            ("A1xB2", 5, 16),
        ] {
            let rs = RootSystem::from_label(label).unwrap();
            assert_eq!(rs.positive_roots().len(), roots, "{label}");
            assert_eq!(rs.weyl_order(), order, "{label}");
        }
    }

    #[test]
    fn weyl_cap_and_unknown_types() {
        assert_eq!(
            RootSystem::from_label("F4").unwrap_err(),
            LieError::WeylGroupTooLarge { cap: DEFAULT_WEYL_CAP }
        );
        assert_eq!(RootSystem::from_label_with_cap("F4", 1152).unwrap().weyl_order(), 1152);
        assert!(matches!(RootSystem::from_label("Z3"), Err(LieError::UnknownType(_))));
        assert!(matches!(RootSystem::from_label("B1"), Err(LieError::UnknownType(_))));
        // affine A1
        assert!(matches!(
            RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]]),
            Err(LieError::InvalidCartan(_))
        ));
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A1xA2"] {
            let rs = RootSystem::from_label(label).unwrap();
            let mut sum = Weight::zero(rs.rank());
            for r in rs.positive_roots() {
                sum += r;
            }
            assert_eq!(sum.scale(Q::new(1, 2)), *rs.rho(), "{label}");
        }
    }

    #[test]
    fn weyl_elements_permute_roots() {
        for label in ["A2", "B2", "G2", "A3"] {
            let rs = RootSystem::from_label(label).unwrap();
            let all: HashSet<Weight> =
                rs.positive_roots().iter().flat_map(|r| [r.clone(), -r]).collect();
            for g in rs.weyl_elements() {
                let image: HashSet<Weight> = all.iter().map(|r| g.apply(r)).collect();
                assert_eq!(image, all);
                let inverses = rs
                    .weyl_elements()
                    .iter()
                    .filter(|h| h.compose(g).is_identity())
                    .count();
                assert_eq!(inverses, 1);
            }
        }
    }

    #[test]
    fn dominant_representative_examples() {
        let rs = RootSystem::from_label("A2").unwrap();
        let (d, e) = rs.dominant_representative(&w(&[1, 1]));
        assert_eq!(d, w(&[1, 1]));
        assert!(e.is_identity());

        // oracle: the unique dominant element of the brute-force orbit
        let x = w(&[-1, 2]);
        let dom: Vec<Weight> = orbit(&rs, &x).into_iter().filter(|y| rs.is_dominant(y)).collect();
        assert_eq!(dom, vec![w(&[1, 1])]);
        let (d, e) = rs.dominant_representative(&x);
        assert_eq!(d, dom[0]);
        assert_eq!(e.apply(&x), d);

        let a1 = RootSystem::from_label("A1").unwrap();
        let (d, e) = a1.dominant_representative(&w(&[-3]));
        assert_eq!(d, w(&[3]));
        assert_eq!(e, a1.simple_reflection(0));
    }

    #[test]
    fn face_examples() {
        let rs = RootSystem::from_label("A2").unwrap();
        let f = rs.face_of(&Weight::new(vec![Q::new(3, 2), Q::zero()])).unwrap();
        assert_eq!(f.vanishing_set(), &[1]);
        assert_eq!(f.rho_sigma(), &Weight::new(vec![Q::new(-1, 2), Q::from_integer(1)]));

        let f = rs.face_of(&w(&[1, 1])).unwrap();
        assert!(f.vanishing_set().is_empty());
        assert!(f.rho_sigma().is_zero());

        let f = rs.face_of(&w(&[0, 0])).unwrap();
        assert_eq!(f.vanishing_set(), &[0, 1]);
        assert_eq!(f.rho_sigma(), rs.rho());

        assert!(matches!(rs.face_of(&w(&[-1, 0])), Err(LieError::NotDominant(_))));
    }

    #[test]
    fn regularity_examples() {
        let rs = RootSystem::from_label("A2").unwrap();
        assert!(rs.is_regular(&w(&[1, 1])));
        assert!(!rs.is_regular(&w(&[0, 1])));
        let half = Weight::new(vec![Q::new(1, 2), Q::new(1, 2)]);
        for k in 0..3 {
            assert!(!rs.coroot_pairing(&half, k).is_zero());
        }
        assert!(rs.is_regular(&half));
        // α_1 + α_2 direction: (1,-1) pairs to zero with the highest coroot
        assert!(!rs.is_regular(&w(&[1, -1])));
    }

    #[test]
    fn regular_iff_full_orbit() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::from_label(label).unwrap();
            for a in -2..=2 {
                for b in -2..=2 {
                    let x = w(&[a, b]);
                    assert_eq!(rs.is_regular(&x), orbit(&rs, &x).len() == rs.weyl_order());
                }
            }
        }
    }

    #[test]
    fn root_reflections_fix_their_walls() {
        for label in ["A2", "B2", "G2", "A3"] {
            let rs = RootSystem::from_label(label).unwrap();
            for k in 0..rs.positive_roots().len() {
                let s = rs.root_reflection(k);
                assert_eq!(s.sign(), -1);
                assert!(s.compose(&s).is_identity());
                assert!(rs.weyl_elements().contains(&s));
                let alpha = &rs.positive_roots()[k];
                assert_eq!(s.apply(alpha), -alpha);
                // brute force over a small box of weights
                let r = rs.rank();
                for n in 0..5i64.pow(r as u32) {
                    let c: Vec<i64> = (0..r).map(|i| (n / 5i64.pow(i as u32)) % 5 - 2).collect();
                    let x = w(&c);
                    assert_eq!(s.apply(&x) == x, rs.coroot_pairing(&x, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn weyl_signs_match_reflection_count() {
        let rs = RootSystem::from_label("A3").unwrap();
        let plus = rs.weyl_elements().iter().filter(|g| g.sign() == 1).count();
        assert_eq!(plus, 12);
        for g in rs.weyl_elements() {
            for h in rs.weyl_elements().iter().take(5) {
                assert_eq!(g.compose(h).sign(), g.sign() * h.sign());
            }
        }
    }

    #[test]
    fn levi_conjugacy_examples() {
        let a2 = RootSystem::from_label("A2").unwrap();
        let s1 = a2.face(&[0]);
        let s2 = a2.face(&[1]);
        let wit = a2.levi_conjugate(&s1, &s2).unwrap();
        assert_eq!(wit.apply(&s1.levi_positive_roots()[0]).max_abs(), Q::from_integer(2));
        assert!(a2.levi_conjugate(&s1, &s1).unwrap().is_identity());

        let a3 = RootSystem::from_label("A3").unwrap();
        assert!(a3.levi_conjugate(&a3.face(&[0]), &a3.face(&[0, 2])).is_none());
    }

    #[test]
    fn stabilizer_class_partitions() {
        let labels = |rs: &RootSystem| -> Vec<Vec<Vec<usize>>> {
            rs.stabilizer_classes()
                .iter()
                .map(|c| c.faces().iter().map(Face::label).collect())
                .collect()
        };
        let a1 = RootSystem::from_label("A1").unwrap();
        assert_eq!(labels(&a1), vec![vec![vec![]], vec![vec![1]]]);

        let a2 = RootSystem::from_label("A2").unwrap();
        assert_eq!(
            labels(&a2),
            vec![vec![vec![]], vec![vec![1], vec![2]], vec![vec![1, 2]]]
        );

        // all roots of A3 are conjugate, so the three rank-one Levis merge;
        // the two A2 Levis merge; A1xA1 stays alone
        let a3 = RootSystem::from_label("A3").unwrap();
        assert_eq!(
            labels(&a3),
            vec![
                vec![vec![]],
                vec![vec![1], vec![2], vec![3]],
                vec![vec![1, 2], vec![2, 3]],
                vec![vec![1, 3]],
                vec![vec![1, 2, 3]],
            ]
        );
    }

    #[test]
    fn b2_levis_of_different_lengths_stay_apart() {
        let b2 = RootSystem::from_label("B2").unwrap();
        assert_eq!(b2.stabilizer_classes().len(), 4);
    }

    #[test]
    fn face_regularity_agreement() {
        let rs = RootSystem::from_label("A3").unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let x = w(&[a, b, c]);
                    let f = rs.face_of(&x).unwrap();
                    assert_eq!(f.vanishing_set().is_empty(), rs.is_regular(&x));
                    let mut sum = Weight::zero(3);
                    for r in f.levi_positive_roots() {
                        sum += r;
                    }
                    assert_eq!(sum.scale(Q::new(1, 2)), *f.rho_sigma());
                }
            }
        }
    }
}
