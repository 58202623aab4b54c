//! Admissible coadjoint orbits and their spin^c indices.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lie::{Face, LieError, RootSystem};
use crate::rational::{rational_string, Weight, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("orbit through {0} is not admissible")]
    NotAdmissible(Weight),
    #[error("region does not meet the relative interior of face {0}")]
    EmptyFaceRegion(Face),
    #[error("region has {got} bounds but face {face} has {expected} free coordinates")]
    RegionShape { face: Face, got: usize, expected: usize },
}

/// Coadjoint orbit `K·μ`, identified by its dominant representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoadjointOrbit {
    mu: Weight,
    face: Face,
}

impl CoadjointOrbit {
    pub fn new(mu: Weight, rs: &RootSystem) -> Result<Self, LieError> {
        let face = rs.face_of(&mu)?;
        Ok(CoadjointOrbit { mu, face })
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    pub fn face(&self) -> &Face {
        &self.face
    }
}

impl fmt::Display for CoadjointOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K·{}", self.mu)
    }
}

/// Index of the canonical spin^c structure on an admissible orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "lambda", rename_all = "lowercase")]
pub enum OrbitIndex {
    Zero,
    /// Irreducible with this infinitesimal character.
    Irreducible(Weight),
}

impl fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitIndex::Zero => write!(f, "0"),
            OrbitIndex::Irreducible(l) => write!(f, "π_{l}"),
        }
    }
}

/// `ρ_σ` extended by zeros to the length of `w`.
fn padded(v: &Weight, len: usize) -> Weight {
    let mut c = v.coords().to_vec();
    c.resize(len, Q::zero());
    Weight::new(c)
}

/// `μ − ρ + ρ_σ ∈ Λ` with `σ` the face through the dominant weight `μ`.
pub fn is_admissible(mu: &Weight, rs: &RootSystem) -> Result<bool, OrbitError> {
    let face = rs.face_of(mu)?;
    let shifted = &(mu - &rs.rho_padded(mu.len())) + &padded(face.rho_sigma(), mu.len());
    Ok(shifted.is_integral())
}

/// Zero when `μ + ρ_σ` is singular, otherwise the irreducible `π_{μ+ρ_σ}`.
pub fn orbit_spin_index(o: &CoadjointOrbit, rs: &RootSystem) -> Result<OrbitIndex, OrbitError> {
    if !is_admissible(&o.mu, rs)? {
        return Err(OrbitError::NotAdmissible(o.mu.clone()));
    }
    let lambda = &o.mu + &padded(o.face.rho_sigma(), o.mu.len());
    if !rs.is_regular(&lambda) {
        return Ok(OrbitIndex::Zero);
    }
    // μ + ρ_σ lands in ρ + closure(σ)
    let hw = &lambda - &rs.rho_padded(lambda.len());
    assert!(
        rs.is_dominant(&hw) && o.face.vanishing_set().iter().all(|&i| hw.coord(i).is_zero()),
        "regular μ+ρ_σ = {lambda} outside ρ+σ̄"
    );
    Ok(OrbitIndex::Irreducible(lambda))
}

/// Closed bounds on each free coordinate of a face, intersected with the
/// face's relative interior (free coordinates strictly positive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    bounds: Vec<Bound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    #[serde(with = "rational_string")]
    pub lo: Q,
    #[serde(with = "rational_string")]
    pub hi: Q,
}

impl Region {
    pub fn new(bounds: Vec<(Q, Q)>) -> Self {
        Region { bounds: bounds.into_iter().map(|(lo, hi)| Bound { lo, hi }).collect() }
    }

    /// Segment `[lo, hi]` along a ray.
    pub fn segment(lo: Q, hi: Q) -> Self {
        Self::new(vec![(lo, hi)])
    }

    /// The same interval on every one of `dims` free coordinates.
    pub fn cube(lo: Q, hi: Q, dims: usize) -> Self {
        Self::new(vec![(lo, hi); dims])
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }
}

/// Values in `(shift + ℤ) ∩ [lo, hi] ∩ (0, ∞)`, ascending.
fn lattice_points(shift: Q, lo: Q, hi: Q) -> Vec<Q> {
    let start = (lo - shift).ceil() + shift;
    let mut out = Vec::new();
    let mut x = start;
    while x <= hi {
        if x.is_positive() {
            out.push(x);
        }
        x += Q::from_integer(1);
    }
    out
}

/// Admissible orbits through the part of `region` lying in the face.
///
/// On the face `σ` with vanishing set `S`, admissibility forces each free
/// coordinate `i` into `1 − (ρ_σ)_i + ℤ`; vanishing coordinates always pass.
pub fn admissible_orbits_on_face(
    face: &Face,
    region: &Region,
    rs: &RootSystem,
) -> Result<Vec<CoadjointOrbit>, OrbitError> {
    let rank = rs.rank();
    let free = face.free_coords(rank);
    if free.is_empty() {
        let zero = Weight::zero(rank);
        return Ok(if is_admissible(&zero, rs)? {
            vec![CoadjointOrbit::new(zero, rs)?]
        } else {
            Vec::new()
        });
    }
    if region.bounds.len() != free.len() {
        return Err(OrbitError::RegionShape {
            face: face.clone(),
            got: region.bounds.len(),
            expected: free.len(),
        });
    }
    if region.bounds.iter().any(|b| !b.hi.is_positive() || b.hi < b.lo) {
        return Err(OrbitError::EmptyFaceRegion(face.clone()));
    }

    let axes: Vec<Vec<Q>> = free
        .iter()
        .zip(&region.bounds)
        .map(|(&i, b)| lattice_points(Q::from_integer(1) - face.rho_sigma().coord(i), b.lo, b.hi))
        .collect();

    let mut out = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    if axes.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    'outer: loop {
        let mut c = vec![Q::zero(); rank];
        for (k, &i) in free.iter().enumerate() {
            c[i] = axes[k][idx[k]];
        }
        let mu = Weight::new(c);
        debug_assert!(is_admissible(&mu, rs)?);
        out.push(CoadjointOrbit::new(mu, rs)?);
        // odometer, last free coordinate fastest
        for k in (0..axes.len()).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{decompose, weyl_character, Decomposition};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn a2() -> RootSystem {
        RootSystem::from_label("A2").unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let rs = a2();
        assert!(is_admissible(&Weight::new(vec![q(3, 2), q(0, 1)]), &rs).unwrap());
        assert!(!is_admissible(&w(&[1, 0]), &rs).unwrap());
        assert!(is_admissible(&w(&[1, 1]), &rs).unwrap());
        assert!(matches!(
            is_admissible(&w(&[-1, 1]), &rs),
            Err(OrbitError::Lie(LieError::NotDominant(_)))
        ));
    }

    #[test]
    fn subregular_orbit_indices() {
        let rs = a2();
        let idx = |n: i64| {
            let o = CoadjointOrbit::new(Weight::new(vec![q(n, 2), q(0, 1)]), &rs).unwrap();
            orbit_spin_index(&o, &rs).unwrap()
        };
        assert_eq!(idx(1), OrbitIndex::Zero);
        assert_eq!(idx(3), OrbitIndex::Irreducible(w(&[1, 1])));
        assert_eq!(idx(5), OrbitIndex::Irreducible(w(&[2, 1])));
        assert_eq!(idx(7), OrbitIndex::Irreducible(w(&[3, 1])));

        let bad = CoadjointOrbit::new(w(&[1, 0]), &rs).unwrap();
        assert!(matches!(orbit_spin_index(&bad, &rs), Err(OrbitError::NotAdmissible(_))));
    }

    #[test]
    fn both_three_halves_orbits_give_the_trivial_representation() {
        let rs = a2();
        let o1 = CoadjointOrbit::new(Weight::new(vec![q(3, 2), q(0, 1)]), &rs).unwrap();
        let o2 = CoadjointOrbit::new(Weight::new(vec![q(0, 1), q(3, 2)]), &rs).unwrap();
        assert_ne!(o1, o2);
        assert_eq!(orbit_spin_index(&o1, &rs).unwrap(), orbit_spin_index(&o2, &rs).unwrap());
        assert_eq!(orbit_spin_index(&o1, &rs).unwrap(), OrbitIndex::Irreducible(w(&[1, 1])));
    }

    #[test]
    fn ray_enumeration() {
        let rs = a2();
        let face = rs.face(&[1]);
        let got: Vec<Weight> = admissible_orbits_on_face(&face, &Region::segment(q(0, 1), q(2, 1)), &rs)
            .unwrap()
            .into_iter()
            .map(|o| o.mu().clone())
            .collect();
        assert_eq!(
            got,
            vec![Weight::new(vec![q(1, 2), q(0, 1)]), Weight::new(vec![q(3, 2), q(0, 1)])]
        );
    }

    #[test]
    fn open_face_box() {
        let rs = a2();
        let face = rs.face(&[]);
        let got: Vec<Weight> = admissible_orbits_on_face(&face, &Region::cube(q(0, 1), q(2, 1), 2), &rs)
            .unwrap()
            .into_iter()
            .map(|o| o.mu().clone())
            .collect();
        assert_eq!(got, vec![w(&[1, 1]), w(&[1, 2]), w(&[2, 1]), w(&[2, 2])]);
    }

    #[test]
    fn point_face() {
        let rs = RootSystem::from_label("A1").unwrap();
        let face = rs.face(&[0]);
        let got = admissible_orbits_on_face(&face, &Region::new(vec![]), &rs).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].mu().is_zero());
        assert_eq!(orbit_spin_index(&got[0], &rs).unwrap(), OrbitIndex::Irreducible(w(&[1])));
    }

    #[test]
    fn empty_regions_are_errors() {
        let rs = a2();
        let face = rs.face(&[1]);
        assert!(matches!(
            admissible_orbits_on_face(&face, &Region::segment(q(-2, 1), q(0, 1)), &rs),
            Err(OrbitError::EmptyFaceRegion(_))
        ));
        assert!(matches!(
            admissible_orbits_on_face(&face, &Region::cube(q(0, 1), q(1, 1), 2), &rs),
            Err(OrbitError::RegionShape { .. })
        ));
    }

    #[test]
    fn regular_shifted_weights_are_their_own_index() {
        for label in ["A1", "A2", "B2", "G2", "A3"] {
            let rs = RootSystem::from_label(label).unwrap();
            let face = rs.face(&[]);
            for o in admissible_orbits_on_face(&face, &Region::cube(q(0, 1), q(3, 1), rs.rank()), &rs).unwrap() {
                let idx = orbit_spin_index(&o, &rs).unwrap();
                assert_eq!(idx, OrbitIndex::Irreducible(o.mu().clone()));
            }
        }
    }

    #[test]
    fn admissible_sets_are_closed_under_lattice_translation_within_face() {
        let rs = RootSystem::from_label("A3").unwrap();
        for face in rs.faces() {
            let free = face.free_coords(3);
            let region = Region::cube(q(0, 1), q(4, 1), free.len());
            let orbits = match admissible_orbits_on_face(&face, &region, &rs) {
                Ok(o) => o,
                Err(_) => continue,
            };
            for o in &orbits {
                for &i in &free {
                    let shifted = o.mu() + &Weight::unit(3, i);
                    assert!(is_admissible(&shifted, &rs).unwrap());
                    assert_eq!(rs.face_of(&shifted).unwrap(), face);
                }
            }
        }
    }

    #[test]
    fn zero_index_iff_on_a_wall() {
        let rs = RootSystem::from_label("B2").unwrap();
        for face in rs.faces() {
            let free = face.free_coords(2);
            let Ok(orbits) = admissible_orbits_on_face(&face, &Region::cube(q(0, 1), q(3, 1), free.len()), &rs) else {
                continue;
            };
            for o in orbits {
                let lambda = o.mu() + face.rho_sigma();
                let idx = orbit_spin_index(&o, &rs).unwrap();
                assert_eq!(idx == OrbitIndex::Zero, !rs.is_regular(&lambda));
                if let OrbitIndex::Irreducible(l) = idx {
                    let chi = weyl_character(&l, &rs).unwrap();
                    assert_eq!(decompose(&chi, &rs).unwrap(), Decomposition::from_pairs([(l, 1)]));
                }
            }
        }
    }

    #[test]
    fn index_json_shape() {
        assert_eq!(serde_json::to_string(&OrbitIndex::Zero).unwrap(), r#"{"kind":"zero"}"#);
        assert_eq!(
            serde_json::to_string(&OrbitIndex::Irreducible(w(&[1, 1]))).unwrap(),
            r#"{"kind":"irreducible","lambda":["1","1"]}"#
        );
    }
}
