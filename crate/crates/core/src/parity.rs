//! Linear algebra over GF(2): solving and enumerating parity systems,
//! small-support column subsets, and solution averages.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactgeom::RatVector;
use crate::rational::{half, int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("row {row} has {found} columns, expected {expected}")]
    RowWidth { row: usize, expected: usize, found: usize },
    #[error("{rows} rows but {rhs} right-hand sides")]
    RhsLength { rows: usize, rhs: usize },
    #[error("entry {value} at row {row} is not a bit")]
    NotABit { row: usize, value: u8 },
    #[error("system without rows needs an explicit column count")]
    UnknownWidth,
    #[error("2^{free} solutions exceed the cap of {cap}")]
    CapExceeded { free: usize, cap: usize },
    #[error("expected a system with {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("column sum of A differs from b; small-support subsets are only guaranteed when A·1 = b")]
    Precondition,
    #[error("no column subset of size at most {t} reaches b")]
    NoSubset { t: usize },
}

/// A bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector(FixedBitSet);

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector(FixedBitSet::with_capacity(len))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut set = FixedBitSet::with_capacity(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            set.set(i, b);
        }
        BitVector(set)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0.set(i, value);
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// The vector as a point of {0,1}^n.
    pub fn to_rational(&self) -> RatVector {
        (0..self.len()).map(|i| int(self.get(i) as i64)).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let bits: Vec<u8> = self.to_bools().into_iter().map(u8::from).collect();
        bits.serialize(serializer)
    }
}

/// A system `A·y ≡ b (mod 2)` with `n` unknowns.
#[derive(Clone, PartialEq, Eq)]
pub struct ParitySystem {
    n: usize,
    rows: Vec<FixedBitSet>,
    rhs: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct ParityJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    rows: Vec<Vec<u8>>,
    rhs: Vec<u8>,
}

impl ParitySystem {
    pub fn new(n: usize, rows: Vec<Vec<bool>>, rhs: Vec<bool>) -> Result<Self, ParityError> {
        if rows.len() != rhs.len() {
            return Err(ParityError::RhsLength { rows: rows.len(), rhs: rhs.len() });
        }
        let mut packed = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ParityError::RowWidth { row: r, expected: n, found: row.len() });
            }
            let mut set = FixedBitSet::with_capacity(n);
            for (j, &bit) in row.iter().enumerate() {
                set.set(j, bit);
            }
            packed.push(set);
        }
        Ok(ParitySystem { n, rows: packed, rhs })
    }

    /// Builds a system from 0/1 entries; the width is taken from the rows unless given.
    pub fn from_bits(
        n: Option<usize>,
        rows: &[Vec<u8>],
        rhs: &[u8],
    ) -> Result<Self, ParityError> {
        let n = match (n, rows.first()) {
            (Some(n), _) => n,
            (None, Some(row)) => row.len(),
            (None, None) => return Err(ParityError::UnknownWidth),
        };
        let to_bool = |row: usize, v: u8| match v {
            0 => Ok(false),
            1 => Ok(true),
            value => Err(ParityError::NotABit { row, value }),
        };
        let bool_rows = rows
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().map(|&v| to_bool(r, v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let bool_rhs = rhs
            .iter()
            .enumerate()
            .map(|(r, &v)| to_bool(r, v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, bool_rows, bool_rhs)
    }

    pub fn columns(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.rows[row].contains(col)
    }

    pub fn rhs(&self) -> &[bool] {
        &self.rhs
    }

    /// GF(2) rank of A.
    pub fn rank(&self) -> usize {
        self.eliminate().pivots.len()
    }

    /// Row-reduced form of the augmented matrix `[A | b]`.
    fn eliminate(&self) -> Echelon {
        let n = self.n;
        let mut rows: Vec<FixedBitSet> = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| {
                let mut aug = FixedBitSet::with_capacity(n + 1);
                aug.union_with(row);
                aug.set(n, b);
                aug
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..n {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].contains(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.contains(col) {
                    row.symmetric_difference_with(&pivot);
                }
            }
            pivots.push(col);
            next += 1;
        }
        let consistent = rows[next..].iter().all(|row| !row.contains(n));
        rows.truncate(next);
        Echelon { n, rows, pivots, consistent }
    }
}

struct Echelon {
    n: usize,
    /// One reduced row per pivot, width n + 1 with the rhs in the last bit.
    rows: Vec<FixedBitSet>,
    pivots: Vec<usize>,
    consistent: bool,
}

impl Echelon {
    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = FixedBitSet::with_capacity(self.n);
        for &p in &self.pivots {
            is_pivot.insert(p);
        }
        (0..self.n).filter(|&c| !is_pivot.contains(c)).collect()
    }

    fn solution_with(&self, free: &[usize], values: &[bool]) -> BitVector {
        let mut y = BitVector::zeros(self.n);
        for (&c, &v) in free.iter().zip(values) {
            y.set(c, v);
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let mut v = row.contains(self.n);
            for (&c, &fv) in free.iter().zip(values) {
                if fv && row.contains(c) {
                    v = !v;
                }
            }
            y.set(p, v);
        }
        y
    }
}

impl fmt::Debug for ParitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ParitySystem({} columns)", self.n)?;
        for (row, &b) in self.rows.iter().zip(&self.rhs) {
            for j in 0..self.n {
                f.write_str(if row.contains(j) { "1" } else { "0" })?;
            }
            writeln!(f, " | {}", b as u8)?;
        }
        Ok(())
    }
}

impl Serialize for ParitySystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParityJson {
            n: Some(self.n),
            rows: self
                .rows
                .iter()
                .map(|row| (0..self.n).map(|j| row.contains(j) as u8).collect())
                .collect(),
            rhs: self.rhs.iter().map(|&b| b as u8).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParitySystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ParityJson::deserialize(deserializer)?;
        ParitySystem::from_bits(raw.n, &raw.rows, &raw.rhs).map_err(serde::de::Error::custom)
    }
}

/// One solution of the system (free variables set to zero), or `None` if infeasible.
pub fn solve_parity(system: &ParitySystem) -> Option<BitVector> {
    let ech = system.eliminate();
    if !ech.consistent {
        return None;
    }
    Some(ech.solution_with(&[], &[]))
}

/// Every solution, in lexicographic order of the free variables.
pub fn enumerate_parity_solutions(
    system: &ParitySystem,
    cap: usize,
) -> Result<Vec<BitVector>, ParityError> {
    let ech = system.eliminate();
    if !ech.consistent {
        return Ok(Vec::new());
    }
    let free = ech.free_columns();
    let count = u32::try_from(free.len())
        .ok()
        .and_then(|k| 1usize.checked_shl(k))
        .filter(|&c| c <= cap)
        .ok_or(ParityError::CapExceeded { free: free.len(), cap })?;
    let mut solutions: Vec<BitVector> = (0..count)
        .map(|mask| {
            let values: Vec<bool> = (0..free.len())
                .map(|k| mask >> (free.len() - 1 - k) & 1 == 1)
                .collect();
            ech.solution_with(&free, &values)
        })
        .collect();
    solutions.sort_by_key(BitVector::to_bools);
    Ok(solutions)
}

/// Smallest (then lexicographically first) column set `J` with `|J| ≤ t` whose
/// columns sum to `b`, for a `t`-row system with `A·1 ≡ b`.
pub fn small_support_subset(system: &ParitySystem, t: usize) -> Result<Vec<usize>, ParityError> {
    if system.row_count() != t {
        return Err(ParityError::RowCount { expected: t, found: system.row_count() });
    }
    let all_ones = (0..system.row_count())
        .map(|r| system.rows[r].count_ones(..) % 2 == 1)
        .collect::<Vec<_>>();
    if all_ones != system.rhs {
        return Err(ParityError::Precondition);
    }
    let mut target = FixedBitSet::with_capacity(t);
    for (r, &b) in system.rhs.iter().enumerate() {
        target.set(r, b);
    }
    let columns: Vec<FixedBitSet> = (0..system.n)
        .map(|j| {
            let mut col = FixedBitSet::with_capacity(t);
            for r in 0..t {
                col.set(r, system.entry(r, j));
            }
            col
        })
        .collect();
    for size in 0..=t.min(system.n) {
        for subset in (0..system.n).combinations(size) {
            let mut sum = FixedBitSet::with_capacity(t);
            for &j in &subset {
                sum.symmetric_difference_with(&columns[j]);
            }
            if sum == target {
                return Ok(subset);
            }
        }
    }
    Err(ParityError::NoSubset { t })
}

/// Exact average of all solutions, or `None` when there are none.
///
/// A coordinate that some free variable can flip averages to 1/2; every other
/// coordinate is fixed across all solutions.
pub fn solutions_average(system: &ParitySystem) -> Option<RatVector> {
    let ech = system.eliminate();
    if !ech.consistent {
        return None;
    }
    let free = ech.free_columns();
    let mut avg = vec![half(); system.n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if !free.iter().any(|&c| row.contains(c)) {
            avg[p] = int(row.contains(ech.n) as i64);
        }
    }
    Some(RatVector::new(avg))
}
