//! Small dense rational elimination helpers.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form. Returns the reduced nonzero rows and their
/// pivot columns, in order.
pub(crate) fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank(rows: Vec<Vec<Rational>>) -> usize {
    rref(rows).1.len()
}

/// Basis of `{z : M z = 0}` read off the reduced form of `M`.
pub(crate) fn nullspace(rows: Vec<Vec<Rational>>, width: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut z = vec![Rational::zero(); width];
        z[free] = Rational::one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            z[pc] = -row[free].clone();
        }
        basis.push(z);
    }
    basis
}

/// Inverse of a square nonsingular matrix.
pub(crate) fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let augmented: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(a.clone()), 2);
        let ns = nullspace(a.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
