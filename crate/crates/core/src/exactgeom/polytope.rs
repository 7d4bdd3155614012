use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::vector::RatVector;
use super::GeomError;
use crate::rational::{self, format_rational, int, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// A single linear constraint `coeffs · x  rel  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearRow {
    pub coeffs: RatVector,
    pub rel: Relation,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

/// Canonical integer form of a row, used for exact deduplication: `>=` rows
/// are flipped to `<=`, everything is scaled to a primitive integer vector,
/// and equations are signed so their first nonzero coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    pub rel: Relation,
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl LinearRow {
    pub fn new(coeffs: RatVector, rel: Relation, rhs: Rational) -> Self {
        LinearRow { coeffs, rel, rhs }
    }

    pub fn le(coeffs: RatVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: RatVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: RatVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.dot(x)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight_at(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }

    /// The same constraint written as `a · x <= b` (equations are kept).
    pub fn as_le(&self) -> LinearRow {
        match self.rel {
            Relation::Ge => LinearRow::le(
                self.coeffs.iter().map(|c| -c).collect(),
                -self.rhs.clone(),
            ),
            _ => self.clone(),
        }
    }

    pub fn key(&self) -> RowKey {
        let row = self.as_le();
        let mut all: Vec<Rational> = row.coeffs.to_vec();
        all.push(row.rhs.clone());
        let mut ints = rational::primitive_integer_vector(&all);
        if row.rel == Relation::Eq {
            let first = ints.iter().find(|v| !v.is_zero()).cloned();
            if first.is_some_and(|f| f.is_negative()) {
                for v in ints.iter_mut() {
                    *v = -v.clone();
                }
            }
        }
        let rhs = ints.pop().unwrap_or_default();
        RowKey {
            rel: row.rel,
            coeffs: ints,
            rhs,
        }
    }

    /// Row rebuilt from its canonical key.
    pub fn normalized(&self) -> LinearRow {
        let key = self.key();
        LinearRow::new(
            key.coeffs.iter().cloned().map(Rational::from_integer).collect(),
            key.rel,
            Rational::from_integer(key.rhs),
        )
    }
}

impl fmt::Display for LinearRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*x{}", format_rational(c), i)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " {} {}", self.rel, format_rational(&self.rhs))
    }
}

/// Polytope given by linear constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HPolytope {
    dim: usize,
    rows: Vec<LinearRow>,
}

impl HPolytope {
    pub fn new(dim: usize, rows: Vec<LinearRow>) -> Result<Self, GeomError> {
        if dim == 0 {
            return Err(GeomError::ZeroDimension);
        }
        if rows.is_empty() {
            return Err(GeomError::NoRows);
        }
        for row in &rows {
            check_dim(dim, row.dim())?;
        }
        Ok(HPolytope { dim, rows })
    }

    /// `0 <= x_i <= 1` for every coordinate.
    pub fn unit_cube(dim: usize) -> Self {
        HPolytope {
            dim,
            rows: box_rows(dim),
        }
    }

    /// Canonical empty polytope: the unit cube plus the row `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        let mut rows = box_rows(dim);
        rows.push(LinearRow::le(RatVector::zeros(dim), int(-1)));
        HPolytope { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[LinearRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<LinearRow> {
        self.rows
    }

    /// Adds rows, returning a new polytope.
    pub fn with_rows(&self, extra: impl IntoIterator<Item = LinearRow>) -> Result<Self, GeomError> {
        let mut rows = self.rows.clone();
        for row in extra {
            check_dim(self.dim, row.dim())?;
            rows.push(row);
        }
        Ok(HPolytope {
            dim: self.dim,
            rows,
        })
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool, GeomError> {
        hrep_contains(self, x)
    }
}

impl<'de> Deserialize<'de> for HPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            rows: Vec<LinearRow>,
        }
        let raw = Raw::deserialize(deserializer)?;
        HPolytope::new(raw.dim, raw.rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn box_rows(dim: usize) -> Vec<LinearRow> {
    let mut rows = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        rows.push(LinearRow::ge(RatVector::unit(dim, i), int(0)));
        rows.push(LinearRow::le(RatVector::unit(dim, i), int(1)));
    }
    rows
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), GeomError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}

/// True iff `x` satisfies every row of `polytope` exactly.
pub fn hrep_contains(polytope: &HPolytope, x: &[Rational]) -> Result<bool, GeomError> {
    check_dim(polytope.dim, x.len())?;
    Ok(polytope.rows.iter().all(|row| row.is_satisfied_by(x)))
}

/// Polytope given by its vertex set, kept sorted lexicographically and free
/// of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RatVector>,
}

impl VPolytope {
    /// Wraps a list already known to consist of extreme points; only sorts
    /// and deduplicates.
    pub fn from_vertices(dim: usize, mut vertices: Vec<RatVector>) -> Result<Self, GeomError> {
        for v in &vertices {
            check_dim(dim, v.dim())?;
        }
        vertices.sort();
        vertices.dedup();
        Ok(VPolytope { dim, vertices })
    }

    /// Canonical vertex description of the convex hull of arbitrary points.
    pub fn from_points(dim: usize, points: Vec<RatVector>) -> Result<Self, GeomError> {
        let raw = Self::from_vertices(dim, points)?;
        super::hull::extreme_points(&raw)
    }

    pub fn empty(dim: usize) -> Self {
        VPolytope {
            dim,
            vertices: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<RatVector> {
        self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            vertices: Vec<RatVector>,
        }
        let raw = Raw::deserialize(deserializer)?;
        VPolytope::from_points(raw.dim, raw.vertices).map_err(serde::de::Error::custom)
    }
}
