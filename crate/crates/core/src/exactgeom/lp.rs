//! Exact two-phase simplex over rationals with Bland's anti-cycling rule.

use num_traits::{One, Signed, Zero};

use super::polytope::{check_dim, HPolytope, LinearRow, Relation, VPolytope};
use super::vector::RatVector;
use super::GeomError;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: RatVector },
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }
}

/// `max c·y  s.t.  A y = b,  y >= 0`.
pub(crate) struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug)]
pub(crate) enum StandardOutcome {
    Optimal { y: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs followed by the current objective value.
    z: Vec<Rational>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        if !self.z[c].is_zero() {
            let factor = self.z[c].clone();
            for (v, p) in self.z.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// One Bland step over columns `0..allowed`.
    fn step(&mut self, allowed: usize) -> Step {
        let Some(enter) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / a;
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, enter);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, allowed: usize) -> bool {
        loop {
            match self.step(allowed) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    fn set_objective(&mut self, c: &[Rational]) {
        let mut z = vec![Rational::zero(); self.width + 1];
        for (j, cj) in c.iter().enumerate() {
            z[j] = -cj.clone();
        }
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = match c.get(bv) {
                Some(v) if !v.is_zero() => v.clone(),
                _ => continue,
            };
            for (zj, a) in z.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *zj += &cb * a;
                }
            }
        }
        self.z = z;
    }
}

pub(crate) fn solve_standard(lp: &StandardLp) -> StandardOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (a, b)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = b.is_negative();
        let mut row: Vec<Rational> = a
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.resize(width + 1, Rational::zero());
        row[n + i] = Rational::one();
        row[width] = b.abs();
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        z: Vec::new(),
        width,
    };

    // Phase 1: maximize minus the sum of artificials.
    let mut phase1 = vec![Rational::zero(); width];
    for v in phase1.iter_mut().skip(n) {
        *v = -Rational::one();
    }
    tab.set_objective(&phase1);
    tab.run(width);
    if !tab.z[width].is_zero() {
        return StandardOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop rows that are
    // linear combinations of the others.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            } else {
                tab.rows.remove(i);
                tab.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // Artificial columns are never re-entered; drop them.
    for row in tab.rows.iter_mut() {
        let rhs = row[width].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.width = n;
    tab.set_objective(&lp.c);
    if !tab.run(n) {
        return StandardOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        y[bv] = tab.rows[i][n].clone();
    }
    let value = tab.z[n].clone();
    StandardOutcome::Optimal { y, value }
}

/// Exact optimum of a linear objective over an inequality-described polytope.
///
/// Returns [`LpOutcome::Infeasible`] for an empty polytope and
/// [`GeomError::Unbounded`] if the objective is unbounded.
pub fn lp_optimize(
    polytope: &HPolytope,
    objective: &[Rational],
    sense: Sense,
) -> Result<LpOutcome, GeomError> {
    let dim = polytope.dim();
    check_dim(dim, objective.len())?;
    let rows = polytope.rows();
    let slack_count = rows.iter().filter(|r| r.rel != Relation::Eq).count();
    let n = 2 * dim + slack_count;
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(rows.len());
    let mut slack = 2 * dim;
    for row in rows {
        let mut coeffs = vec![Rational::zero(); n];
        for (j, v) in row.coeffs.iter().enumerate() {
            coeffs[j] = v.clone();
            coeffs[dim + j] = -v.clone();
        }
        match row.rel {
            Relation::Le => {
                coeffs[slack] = int(1);
                slack += 1;
            }
            Relation::Ge => {
                coeffs[slack] = int(-1);
                slack += 1;
            }
            Relation::Eq => {}
        }
        a.push(coeffs);
        b.push(row.rhs.clone());
    }
    let sign = match sense {
        Sense::Max => Rational::one(),
        Sense::Min => -Rational::one(),
    };
    let mut c = vec![Rational::zero(); n];
    for (j, v) in objective.iter().enumerate() {
        c[j] = &sign * v;
        c[dim + j] = -(&sign * v);
    }
    match solve_standard(&StandardLp { a, b, c }) {
        StandardOutcome::Infeasible => Ok(LpOutcome::Infeasible),
        StandardOutcome::Unbounded => Err(GeomError::Unbounded),
        StandardOutcome::Optimal { y, .. } => {
            let point: RatVector = (0..dim).map(|j| &y[j] - &y[dim + j]).collect();
            let value = point.dot(objective);
            Ok(LpOutcome::Optimal { value, point })
        }
    }
}

/// Result of maximizing over a constraint system known to be feasible.
pub(crate) enum FeasibleMax {
    Bounded(Rational),
    Unbounded,
}

/// `max objective · x` over `rows`, solved through the dual so the tableau
/// has only `dim` rows. The caller guarantees the rows are feasible.
pub(crate) fn max_over_feasible(
    dim: usize,
    rows: &[&LinearRow],
    objective: &[Rational],
) -> FeasibleMax {
    // Primal rows a·x <= b; dual: min b·y, Aᵀy = c, y >= 0.
    let mut columns: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for row in rows {
        let le = row.as_le();
        if le.rel == Relation::Eq {
            columns.push((le.coeffs.iter().map(|v| -v.clone()).collect(), -le.rhs.clone()));
        }
        columns.push((le.coeffs.to_vec(), le.rhs.clone()));
    }
    let a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| columns.iter().map(|(col, _)| col[i].clone()).collect())
        .collect();
    let c: Vec<Rational> = columns.iter().map(|(_, rhs)| -rhs.clone()).collect();
    match solve_standard(&StandardLp {
        a,
        b: objective.to_vec(),
        c,
    }) {
        StandardOutcome::Optimal { value, .. } => FeasibleMax::Bounded(-value),
        StandardOutcome::Infeasible => FeasibleMax::Unbounded,
        StandardOutcome::Unbounded => {
            unreachable!("dual unbounded means the primal rows were infeasible")
        }
    }
}

/// Convex-combination certificate for `x ∈ conv(Q)`: multipliers aligned with
/// `Q.vertices()`, nonnegative and summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCertificate {
    pub multipliers: Vec<Rational>,
}

/// Decides `x ∈ conv(Q.vertices)`. Among all valid multiplier vectors the one
/// returned maximizes the smallest multiplier.
pub fn conv_membership(
    x: &[Rational],
    hull: &VPolytope,
) -> Result<Option<ConvexCertificate>, GeomError> {
    check_dim(hull.dim(), x.len())?;
    let verts = hull.vertices();
    let k = verts.len();
    if k == 0 {
        return Ok(None);
    }
    let d = hull.dim();
    // Variables: λ_1..λ_k, s, σ_1..σ_k.
    let n = 2 * k + 1;
    let mut a = Vec::with_capacity(d + 1 + k);
    let mut b = Vec::with_capacity(d + 1 + k);
    for i in 0..d {
        let mut row = vec![Rational::zero(); n];
        for (j, v) in verts.iter().enumerate() {
            row[j] = v[i].clone();
        }
        a.push(row);
        b.push(x[i].clone());
    }
    let mut sum = vec![Rational::zero(); n];
    for v in sum.iter_mut().take(k) {
        *v = Rational::one();
    }
    a.push(sum);
    b.push(Rational::one());
    for j in 0..k {
        let mut row = vec![Rational::zero(); n];
        row[j] = Rational::one();
        row[k] = -Rational::one();
        row[k + 1 + j] = -Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut c = vec![Rational::zero(); n];
    c[k] = Rational::one();
    match solve_standard(&StandardLp { a, b, c }) {
        StandardOutcome::Infeasible => Ok(None),
        StandardOutcome::Unbounded => unreachable!("s is bounded by 1/k"),
        StandardOutcome::Optimal { y, .. } => Ok(Some(ConvexCertificate {
            multipliers: y[..k].to_vec(),
        })),
    }
}
