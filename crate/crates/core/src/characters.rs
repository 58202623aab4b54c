//! Virtual characters of the maximal torus and their decomposition into
//! irreducible characters.
//!
//! Irreducibles are indexed by their infinitesimal character `λ`, a strictly
//! dominant element of `Λ + ρ`; the highest weight is `λ − ρ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::lie::RootSystem;
use crate::rational::{Weight, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("{0} is not strictly dominant")]
    NotRegularDominant(Weight),
    #[error("{0} is not in the shifted lattice Λ+ρ")]
    NotInShiftedLattice(Weight),
    #[error("character is not Weyl invariant: coefficient of {weight} differs from its reflection {reflected}")]
    NotWeylInvariant { weight: Weight, reflected: Weight },
    #[error("character has a non-integral weight {0}")]
    NonIntegralWeight(Weight),
    #[error("peeling reached a non-dominant maximal weight {0}")]
    NonDominantLeadingTerm(Weight),
    #[error("antisymmetrization and peeling disagree at λ={lambda}: {antisymmetrized} vs {peeled}")]
    MethodMismatch { lambda: Weight, antisymmetrized: i64, peeled: i64 },
}

/// Finite integer combination of torus characters `e^μ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: Weight, coeff: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(w, coeff);
        c
    }

    /// The trivial character `e^0` on a torus of the given dimension.
    pub fn trivial(len: usize) -> Self {
        Self::monomial(Weight::zero(len), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (w, k) in terms {
            c.add_term(w, k);
        }
        c
    }

    pub fn add_term(&mut self, w: Weight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        accumulate(&mut self.terms, w, coeff);
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Sum of coefficients: the value at the identity.
    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        VirtualCharacter { terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * k)).collect() }
    }

    /// Multiplies every exponent by the Weyl group element `g`.
    pub fn apply(&self, g: &crate::lie::WeylElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, &c)| (g.apply(w), c)))
    }

    pub fn shift(&self, by: &Weight) -> Self {
        VirtualCharacter { terms: self.terms.iter().map(|(w, &c)| (w + by, c)).collect() }
    }

    /// Checks invariance under the simple reflections.
    pub fn check_weyl_invariant(&self, rs: &RootSystem) -> Result<(), CharacterError> {
        for (w, &c) in &self.terms {
            for i in 0..rs.rank() {
                let r = rs.reflect(i, w);
                if self.coeff(&r) != c {
                    return Err(CharacterError::NotWeylInvariant { weight: w.clone(), reflected: r });
                }
            }
        }
        Ok(())
    }

    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.check_weyl_invariant(rs).is_ok()
    }

    /// `Σ c_μ exp(i⟨μ, θ⟩)` in double precision.
    pub fn evaluate(&self, theta: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, &c)| {
                let phase: f64 = w.coords().iter().zip(theta).map(|(q, t)| q_to_f64(q) * t).sum();
                Complex64::from_polar(c as f64, phase)
            })
            .sum()
    }

    /// Largest support weight under the (height, lexicographic) order.
    fn leading(&self, rs: &RootSystem) -> Option<(&Weight, i64)> {
        self.terms
            .iter()
            .max_by(|a, b| rs.height(a.0).cmp(&rs.height(b.0)).then_with(|| a.0.cmp(b.0)))
            .map(|(w, &c)| (w, c))
    }
}

/// Adds `delta` at `key`, dropping the entry when it cancels.
pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, delta: i64) {
    match map.entry(key) {
        Entry::Vacant(v) => {
            if delta != 0 {
                v.insert(delta);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += delta;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Add<&VirtualCharacter> for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn add(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub<&VirtualCharacter> for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn sub(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        self + &(-rhs)
    }
}

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        self.scale(-1)
    }
}

impl Mul<&VirtualCharacter> for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn mul(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                *acc.entry(a + b).or_insert(0) += ca * cb;
            }
        }
        acc.retain(|_, c| *c != 0);
        VirtualCharacter { terms: acc }
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·e^{w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Weight,
    coeff: i64,
}

impl Serialize for VirtualCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(w, &c)| TermJson { weight: w.clone(), coeff: c })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirtualCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<TermJson> = Vec::deserialize(d)?;
        Ok(Self::from_terms(v.into_iter().map(|t| (t.weight, t.coeff))))
    }
}

/// Multiplicities `m_λ` keyed by infinitesimal character.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition {
    multiplicities: BTreeMap<Weight, i64>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Weight, i64)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (l, m) in pairs {
            d.add(l, m);
        }
        d
    }

    pub fn add(&mut self, lambda: Weight, m: i64) {
        if m == 0 {
            return;
        }
        accumulate(&mut self.multiplicities, lambda, m);
    }

    pub fn multiplicity(&self, lambda: &Weight) -> i64 {
        self.multiplicities.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.multiplicities.iter().map(|(l, &m)| (l, m))
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_pairs(self.iter().map(|(l, m)| (l.clone(), m * k)))
    }

    pub fn merged(&self, other: &Decomposition) -> Self {
        let mut out = self.clone();
        for (l, m) in other.iter() {
            out.add(l.clone(), m);
        }
        out
    }

    /// `Σ m_λ χ_λ`.
    pub fn character(&self, rs: &RootSystem) -> Result<VirtualCharacter, CharacterError> {
        let mut out = VirtualCharacter::zero();
        for (l, m) in self.iter() {
            out = &out + &weyl_character(l, rs)?.scale(m);
        }
        Ok(out)
    }

    /// Entries where `self` and `other` differ, as `(λ, self, other)`.
    pub fn differences(&self, other: &Decomposition) -> Vec<(Weight, i64, i64)> {
        let mut keys: Vec<&Weight> =
            self.multiplicities.keys().chain(other.multiplicities.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|l| {
                let (a, b) = (self.multiplicity(l), other.multiplicity(l));
                (a != b).then(|| (l.clone(), a, b))
            })
            .collect()
    }
}

fn check_shifted_dominant(lambda: &Weight, rs: &RootSystem) -> Result<(), CharacterError> {
    if lambda.len() < rs.rank() || !rs.is_strictly_dominant(lambda) {
        return Err(CharacterError::NotRegularDominant(lambda.clone()));
    }
    if !lambda.is_integral() {
        return Err(CharacterError::NotInShiftedLattice(lambda.clone()));
    }
    Ok(())
}

/// `Σ_w sign(w) e^{wλ}`.
pub fn alternant(lambda: &Weight, rs: &RootSystem) -> VirtualCharacter {
    VirtualCharacter::from_terms(
        rs.weyl_elements()
            .iter()
            .map(|g| (g.apply(lambda), i64::from(g.sign()))),
    )
}

/// Weyl denominator `Σ_w sign(w) e^{wρ}` on a torus of dimension `len`.
pub fn weyl_denominator(rs: &RootSystem, len: usize) -> VirtualCharacter {
    alternant(&rs.rho_padded(len), rs)
}

/// Character of the irreducible with infinitesimal character `λ`, by exact
/// division of the alternant `A_λ` by the Weyl denominator.
pub fn weyl_character(lambda: &Weight, rs: &RootSystem) -> Result<VirtualCharacter, CharacterError> {
    check_shifted_dominant(lambda, rs)?;
    let den = weyl_denominator(rs, lambda.len());
    let rho = rs.rho_padded(lambda.len());
    let den_terms: Vec<(Weight, i64)> = den.terms().map(|(w, c)| (w.clone(), c)).collect();

    // remainder ordered by (height, weight); the denominator's leading term is e^ρ
    let mut rem: BTreeMap<(Q, Weight), i64> = alternant(lambda, rs)
        .terms()
        .map(|(w, c)| ((rs.height(w), w.clone()), c))
        .collect();
    let mut quotient = VirtualCharacter::zero();
    while let Some(((_, lead), c)) = rem.pop_last() {
        let q = &lead - &rho;
        for (dw, dc) in &den_terms {
            if dw == &rho {
                continue;
            }
            let w = &q + dw;
            accumulate(&mut rem, (rs.height(&w), w), -c * dc);
        }
        quotient.add_term(q, c);
    }
    Ok(quotient)
}

/// Weyl dimension formula `Π ⟨λ,α^∨⟩ / ⟨ρ,α^∨⟩`.
pub fn dimension(lambda: &Weight, rs: &RootSystem) -> Result<u64, CharacterError> {
    check_shifted_dominant(lambda, rs)?;
    let rho = rs.rho();
    let mut d = Q::one();
    for k in 0..rs.positive_roots().len() {
        d *= rs.coroot_pairing(lambda, k) / rs.coroot_pairing(rho, k);
    }
    debug_assert!(d.is_integer() && d.is_positive());
    Ok(d.to_integer() as u64)
}

/// Reads multiplicities off `χ·D` at strictly dominant weights.
pub fn decompose_antisymmetrized(
    chi: &VirtualCharacter,
    rs: &RootSystem,
) -> Decomposition {
    let len = chi.terms().next().map_or(rs.rank(), |(w, _)| w.len());
    let prod = chi * &weyl_denominator(rs, len);
    Decomposition::from_pairs(
        prod.terms()
            .filter(|(w, _)| rs.is_strictly_dominant(w))
            .map(|(w, c)| (w.clone(), c)),
    )
}

/// Repeatedly strips the irreducible whose highest weight is the leading
/// support weight in the (height, lexicographic) order.
pub fn decompose_peeling(
    chi: &VirtualCharacter,
    rs: &RootSystem,
) -> Result<Decomposition, CharacterError> {
    let mut rem = chi.clone();
    let mut out = Decomposition::new();
    while let Some((lead, c)) = rem.leading(rs) {
        if !rs.is_dominant(lead) {
            return Err(CharacterError::NonDominantLeadingTerm(lead.clone()));
        }
        let lambda = lead + &rs.rho_padded(lead.len());
        let chi_l = weyl_character(&lambda, rs)?;
        rem = &rem - &chi_l.scale(c);
        out.add(lambda, c);
    }
    Ok(out)
}

/// Decomposes a Weyl-invariant virtual character into irreducibles, running
/// antisymmetrization and peeling and requiring them to agree.
pub fn decompose(chi: &VirtualCharacter, rs: &RootSystem) -> Result<Decomposition, CharacterError> {
    if let Some((w, _)) = chi.terms().find(|(w, _)| !w.is_integral()) {
        return Err(CharacterError::NonIntegralWeight(w.clone()));
    }
    chi.check_weyl_invariant(rs)?;
    let anti = decompose_antisymmetrized(chi, rs);
    let peeled = decompose_peeling(chi, rs)?;
    if let Some((lambda, a, p)) = anti.differences(&peeled).into_iter().next() {
        return Err(CharacterError::MethodMismatch { lambda, antisymmetrized: a, peeled: p });
    }
    Ok(anti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn a2() -> RootSystem {
        RootSystem::from_label("A2").unwrap()
    }

    /// Explicit weight list of the defining representation of SU(3) and its dual.
    fn fundamental_a2() -> (VirtualCharacter, VirtualCharacter) {
        let v = VirtualCharacter::from_terms([(w(&[1, 0]), 1), (w(&[-1, 1]), 1), (w(&[0, -1]), 1)]);
        let dual = VirtualCharacter::from_terms([(w(&[0, 1]), 1), (w(&[1, -1]), 1), (w(&[-1, 0]), 1)]);
        (v, dual)
    }

    #[test]
    fn trivial_character() {
        let rs = a2();
        assert_eq!(weyl_character(&w(&[1, 1]), &rs).unwrap(), VirtualCharacter::trivial(2));
    }

    #[test]
    fn a2_fundamental_character() {
        let rs = a2();
        // ω_1, ω_1−α_1, ω_1−α_1−α_2
        let expected = VirtualCharacter::from_terms([
            (w(&[1, 0]), 1),
            (&w(&[1, 0]) - &w(&[2, -1]), 1),
            (&(&w(&[1, 0]) - &w(&[2, -1])) - &w(&[-1, 2]), 1),
        ]);
        assert_eq!(weyl_character(&w(&[2, 1]), &rs).unwrap(), expected);
        assert_eq!(expected, fundamental_a2().0);
    }

    #[test]
    fn sl2_weight_string() {
        let rs = RootSystem::from_label("A1").unwrap();
        let expected = VirtualCharacter::from_terms([(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]);
        assert_eq!(weyl_character(&w(&[3]), &rs).unwrap(), expected);
    }

    #[test]
    fn weyl_character_rejects_bad_input() {
        let rs = a2();
        assert!(matches!(
            weyl_character(&w(&[0, 1]), &rs),
            Err(CharacterError::NotRegularDominant(_))
        ));
        assert!(matches!(
            weyl_character(&Weight::new(vec![Q::new(1, 2), Q::one()]), &rs),
            Err(CharacterError::NotInShiftedLattice(_))
        ));
        assert!(matches!(dimension(&w(&[1, 0]), &rs), Err(CharacterError::NotRegularDominant(_))));
    }

    #[test]
    fn dimension_examples() {
        let rs = a2();
        assert_eq!(dimension(&w(&[1, 1]), &rs).unwrap(), 1);
        assert_eq!(dimension(&w(&[2, 1]), &rs).unwrap(), 3);
        assert_eq!(dimension(&w(&[2, 2]), &rs).unwrap(), 8);
        let a1 = RootSystem::from_label("A1").unwrap();
        for n in 1..10 {
            assert_eq!(dimension(&w(&[n]), &a1).unwrap(), n as u64);
        }
    }

    #[test]
    fn decompose_small_cases() {
        let rs = a2();
        let triv = VirtualCharacter::trivial(2);
        assert_eq!(decompose(&triv, &rs).unwrap(), Decomposition::from_pairs([(w(&[1, 1]), 1)]));
        assert_eq!(
            decompose(&triv.scale(2), &rs).unwrap(),
            Decomposition::from_pairs([(w(&[1, 1]), 2)])
        );
        assert!(decompose(&VirtualCharacter::zero(), &rs).unwrap().is_empty());
    }

    #[test]
    fn three_tensor_three_bar() {
        let rs = a2();
        let (v, dual) = fundamental_a2();
        let prod = &v * &dual;
        assert_eq!(prod.degree(), 9);
        let d = decompose(&prod, &rs).unwrap();
        assert_eq!(d, Decomposition::from_pairs([(w(&[2, 2]), 1), (w(&[1, 1]), 1)]));
        let total: u64 = d.iter().map(|(l, m)| m as u64 * dimension(l, &rs).unwrap()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn adjoint_leading_weight_in_lex_order_is_not_dominant() {
        // the lexicographically largest weight of the adjoint character is
        // (2,-1), which is why peeling orders by height first
        let rs = a2();
        let adj = weyl_character(&w(&[2, 2]), &rs).unwrap();
        let lex_max = adj.terms().map(|(w, _)| w.clone()).max().unwrap();
        assert_eq!(lex_max, w(&[2, -1]));
        assert_eq!(
            decompose_peeling(&adj, &rs).unwrap(),
            Decomposition::from_pairs([(w(&[2, 2]), 1)])
        );
    }

    #[test]
    fn decompose_rejects_non_invariant() {
        let rs = a2();
        let chi = VirtualCharacter::monomial(w(&[1, 0]), 1);
        assert!(matches!(decompose(&chi, &rs), Err(CharacterError::NotWeylInvariant { .. })));
        let half = VirtualCharacter::monomial(Weight::new(vec![Q::new(1, 2), Q::zero()]), 1);
        assert!(matches!(decompose(&half, &rs), Err(CharacterError::NonIntegralWeight(_))));
    }

    #[test]
    fn peeling_reports_non_dominant_leader() {
        let rs = RootSystem::from_label("A1").unwrap();
        // not W-invariant, so only peeling sees it
        let chi = VirtualCharacter::monomial(w(&[-2]), 1);
        assert!(matches!(
            decompose_peeling(&chi, &rs),
            Err(CharacterError::NonDominantLeadingTerm(_))
        ));
    }

    #[test]
    fn numeric_evaluation() {
        let triv = VirtualCharacter::trivial(2);
        let v = triv.evaluate(&[0.3, -1.7]);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let a1 = VirtualCharacter::from_terms([(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]);
        assert!((a1.evaluate(&[0.0]) - Complex64::new(3.0, 0.0)).norm() < 1e-15);

        let rs = a2();
        let chi = weyl_character(&w(&[2, 1]), &rs).unwrap();
        let theta = [0.91, -2.3];
        let direct: Complex64 = [[1.0, 0.0], [-1.0, 1.0], [0.0, -1.0]]
            .iter()
            .map(|m: &[f64; 2]| Complex64::from_polar(1.0, m[0] * theta[0] + m[1] * theta[1]))
            .sum();
        assert!((chi.evaluate(&theta) - direct).norm() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let chi = VirtualCharacter::from_terms([
            (Weight::new(vec![Q::new(3, 2), Q::zero()]), -1),
            (w(&[0, 0]), 2),
        ]);
        let s = serde_json::to_string(&chi).unwrap();
        assert_eq!(s, r#"[{"weight":["0","0"],"coeff":2},{"weight":["3/2","0"],"coeff":-1}]"#);
        let back: VirtualCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, chi);
    }

    fn grid(rank: usize, max: i64) -> Vec<Weight> {
        let n = max as usize;
        (0..n.pow(rank as u32))
            .map(|k| {
                let c: Vec<i64> = (0..rank).map(|i| (k / n.pow(i as u32)) % n + 1).map(|x| x as i64).collect();
                w(&c)
            })
            .collect()
    }

    #[test]
    fn dimension_matches_character_at_identity() {
        for (label, max) in [("A1", 6), ("A2", 4), ("B2", 4), ("G2", 3), ("A3", 3), ("B3", 2), ("C3", 2)] {
            let rs = RootSystem::from_label(label).unwrap();
            for l in grid(rs.rank(), max) {
                let chi = weyl_character(&l, &rs).unwrap();
                assert_eq!(chi.degree() as u64, dimension(&l, &rs).unwrap(), "{label} {l}");
                let at_zero = chi.evaluate(&vec![0.0; rs.rank()]);
                assert!((at_zero.re - chi.degree() as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn irreducibles_decompose_to_themselves() {
        for (label, max) in [("A2", 4), ("B2", 3), ("G2", 2), ("A3", 2)] {
            let rs = RootSystem::from_label(label).unwrap();
            for l in grid(rs.rank(), max) {
                let chi = weyl_character(&l, &rs).unwrap();
                assert!(chi.is_weyl_invariant(&rs));
                assert_eq!(decompose(&chi, &rs).unwrap(), Decomposition::from_pairs([(l, 1)]));
            }
        }
    }

    #[test]
    fn product_with_denominator_is_anti_invariant() {
        let rs = RootSystem::from_label("B2").unwrap();
        let chi = &weyl_character(&w(&[2, 3]), &rs).unwrap() + &weyl_character(&w(&[1, 1]), &rs).unwrap().scale(-2);
        let prod = &chi * &weyl_denominator(&rs, 2);
        for g in rs.weyl_elements() {
            assert_eq!(prod.apply(g), prod.scale(i64::from(g.sign())));
        }
    }

    fn arb_combo() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
        prop::collection::vec(((1i64..5, 1i64..5), -3i64..4), 0..5)
    }

    proptest! {
        #[test]
        fn decomposition_is_linear(a in arb_combo(), b in arb_combo(), ka in -3i64..4, kb in -3i64..4) {
            let rs = a2();
            let build = |v: &[((i64, i64), i64)]| {
                Decomposition::from_pairs(v.iter().map(|((x, y), m)| (w(&[*x, *y]), *m)))
                    .character(&rs)
                    .unwrap()
            };
            let (ca, cb) = (build(&a), build(&b));
            let combo = &ca.scale(ka) + &cb.scale(kb);
            let lhs = decompose(&combo, &rs).unwrap();
            let rhs = decompose(&ca, &rs).unwrap().scaled(ka).merged(&decompose(&cb, &rs).unwrap().scaled(kb));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
