use std::fmt;
use std::ops::{Deref, Index};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{format_rational, int, serde_rational::RationalLiteral, Rational};

/// Dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RatVector(values.iter().map(|&v| int(v)).collect())
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = int(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        debug_assert_eq!(self.0.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn nonzeros(&self) -> usize {
        self.0.iter().filter(|v| !v.is_zero()).count()
    }

    /// Coordinate-wise midpoint of two vectors of equal dimension.
    pub fn midpoint(&self, other: &RatVector) -> RatVector {
        let two = int(2);
        RatVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) / &two)
                .collect(),
        )
    }
}

impl Deref for RatVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }
}

impl FromIterator<Rational> for RatVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RatVector(iter.into_iter().collect())
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<RationalLiteral>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(RatVector)
    }
}
