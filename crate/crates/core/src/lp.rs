//! Exact rational linear programming.
//!
//! Dense two-phase tableau simplex with Bland's rule. Problems in this crate
//! have a handful of variables and a few dozen rows, so a dense tableau over
//! big rationals is adequate and never cycles.

use crate::rational::{Matrix, Rational};
use num_traits::{One, Signed, Zero};

/// Outcome of `maximize cᵀx subject to A x ≤ b` with `x` free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Maximizes `cᵀx` subject to `A x ≤ b` over free variables `x`.
pub fn maximize(a: &Matrix, b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.nrows();
    let n = a.ncols();
    assert_eq!(b.len(), m, "rhs length");
    assert_eq!(c.len(), n, "objective length");

    // Columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs).
    let neg_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let n_struct = 2 * n + m;
    let n_cols = n_struct + neg_rows.len();

    let mut t = Tableau {
        coef: Matrix::zeros(m, n_cols),
        rhs: vec![Rational::zero(); m],
        basis: vec![0; m],
    };
    let mut art = 0;
    for i in 0..m {
        let flip = b[i].is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            let v = &a[(i, j)] * &sign;
            t.coef[(i, n + j)] = -v.clone();
            t.coef[(i, j)] = v;
        }
        t.coef[(i, 2 * n + i)] = sign.clone();
        t.rhs[i] = &b[i] * &sign;
        if flip {
            let col = n_struct + art;
            t.coef[(i, col)] = Rational::one();
            t.basis[i] = col;
            art += 1;
        } else {
            t.basis[i] = 2 * n + i;
        }
    }

    if !neg_rows.is_empty() {
        let mut phase1 = vec![Rational::zero(); n_cols];
        for cost in phase1.iter_mut().skip(n_struct) {
            *cost = -Rational::one();
        }
        match t.run(&phase1, n_cols) {
            Phase::Optimal => {}
            Phase::Unbounded => unreachable!("phase one is bounded above by zero"),
        }
        if !t.objective(&phase1).is_zero() {
            return LpOutcome::Infeasible;
        }
        t.drive_out_artificials(n_struct);
    }

    let mut cost = vec![Rational::zero(); n_cols];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    match t.run(&cost, n_struct) {
        Phase::Unbounded => LpOutcome::Unbounded,
        Phase::Optimal => {
            let mut z = vec![Rational::zero(); n_cols];
            for (i, &bv) in t.basis.iter().enumerate() {
                z[bv] = t.rhs[i].clone();
            }
            let x: Vec<Rational> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
            let value = crate::rational::dot(c, &x);
            LpOutcome::Optimal { x, value }
        }
    }
}

/// Returns some point with `A x ≤ b`, if any.
pub fn feasible_point(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    match maximize(a, b, &vec![Rational::zero(); a.ncols()]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    coef: Matrix,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(Rational::zero(), |acc, (&bv, r)| acc + &cost[bv] * r)
    }

    /// Primal simplex from the current feasible basis; only columns below
    /// `allowed` may enter.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Phase {
        let m = self.coef.nrows();
        loop {
            // Bland: lowest-index column with positive reduced cost.
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for i in 0..m {
                    let a = &self.coef[(i, j)];
                    if !a.is_zero() {
                        r -= &cost[self.basis[i]] * a;
                    }
                }
                r.is_positive()
            });
            let Some(col) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.coef[(i, col)];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Phase::Unbounded;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let m = self.coef.nrows();
        let n = self.coef.ncols();
        let inv = self.coef[(row, col)].recip();
        for j in 0..n {
            if !self.coef[(row, j)].is_zero() {
                let v = &self.coef[(row, j)] * &inv;
                self.coef[(row, j)] = v;
            }
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        for i in 0..m {
            if i == row || self.coef[(i, col)].is_zero() {
                continue;
            }
            let f = self.coef[(i, col)].clone();
            for j in 0..n {
                if !self.coef[(row, j)].is_zero() {
                    let v = &self.coef[(row, j)] * &f;
                    self.coef[(i, j)] -= v;
                }
            }
            let v = &self.rhs[row] * &f;
            self.rhs[i] -= v;
        }
        self.basis[row] = col;
    }

    /// After a successful phase one, pivots zero-valued artificials out of
    /// the basis; rows where that is impossible are redundant and dropped.
    fn drive_out_artificials(&mut self, n_struct: usize) {
        let mut i = 0;
        while i < self.basis.len() {
            if self.basis[i] < n_struct {
                i += 1;
                continue;
            }
            match (0..n_struct).find(|&j| !self.coef[(i, j)].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => self.drop_row(i),
            }
        }
    }

    fn drop_row(&mut self, row: usize) {
        let mut rows = self.coef.to_rows();
        rows.remove(row);
        let n = self.coef.ncols();
        self.coef = if rows.is_empty() {
            Matrix::zeros(0, n)
        } else {
            Matrix::from_rows(rows)
        };
        self.rhs.remove(row);
        self.basis.remove(row);
    }
}
