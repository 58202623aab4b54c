//! Exact rationals and the weight vector type shared by every module.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `"3"`, `"-3/2"` or `" 1/2 "` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Canonical string form: `"3/2"`, `"-1"`, `"0"`.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Weight vector in the fundamental-weight basis.
///
/// The first `rank` coordinates pair with the simple coroots; any further
/// coordinates belong to a central torus and are fixed by the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn zero(len: usize) -> Self {
        Weight(vec![Q::zero(); len])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    /// Unit vector `e_i`, i.e. the fundamental weight `ω_{i+1}`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Weight::zero(len);
        w.0[i] = Q::from_integer(1);
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> Q {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Q::is_integer)
    }

    /// All coordinates are even integers (membership in `2Λ`).
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && c.numer().is_even())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, s: Q) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    /// Dot product with a vector of dual coordinates.
    pub fn pair(&self, dual: &[Q]) -> Q {
        self.0.iter().zip(dual).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> Q {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Parses a comma-separated list such as `"3/2,0"`.
    pub fn parse_list(s: &str) -> Result<Weight, ParseRationalError> {
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Weight::parse_list(s.trim().trim_start_matches('(').trim_end_matches(')'))
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(Q::from_integer(self))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(deserializer)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_rational(s).map_err(D::Error::custom),
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(Q::from_integer)
                    .ok_or_else(|| D::Error::custom(format!("non-integer number {n}; use a string"))),
                other => Err(D::Error::custom(format!("invalid coordinate {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

/// Serde adapter for a single rational stored as a string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        format_rational(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Q::from_integer)
                .ok_or_else(|| D::Error::custom("non-integer number; use a string")),
            other => Err(D::Error::custom(format!("invalid rational {other}"))),
        }
    }
}
