//! Exact two-phase simplex method with Bland's anti-cycling rule, generic
//! over any ordered field. Termination is guaranteed by Bland's rule; a
//! global pivot cap guards against pathological problem sizes.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::linalg::{dot, Point};
use super::polyhedron::Polyhedron;

pub const DEFAULT_PIVOT_CAP: usize = 100_000;

static PIVOT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PIVOT_CAP);

pub fn pivot_cap() -> usize {
    PIVOT_CAP.load(Ordering::Relaxed)
}

pub fn set_pivot_cap(cap: usize) {
    PIVOT_CAP.store(cap, Ordering::Relaxed);
}

/// Result of an exact linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LPOutcome<T> {
    Optimal { value: T, point: Point<T> },
    Unbounded,
    Infeasible,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>, // m rows, each of length ncols + 1 (rhs last)
    obj: Vec<T>,       // reduced costs, length ncols + 1 (objective value last)
    basis: Vec<usize>,
    ncols: usize,
    pivots_left: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        if self.pivots_left == 0 {
            return Err(Error::ResourceLimit {
                what: format!("simplex pivot cap of {} exceeded", pivot_cap()),
            });
        }
        self.pivots_left -= 1;
        let inv = T::one().div(&self.rows[r][c]);
        for v in &mut self.rows[r] {
            *v = v.mul(&inv);
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.ncols {
                    let t = f.mul(&self.rows[r][j]);
                    self.rows[i][j] = self.rows[i][j].sub(&t);
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for j in 0..=self.ncols {
                let t = f.mul(&self.rows[r][j]);
                self.obj[j] = self.obj[j].sub(&t);
            }
        }
        self.basis[r] = c;
        Ok(())
    }

    /// Maximize over columns `0..limit`; Bland's rule both for entering
    /// (smallest improving column) and leaving (smallest basic index on
    /// ratio ties). Returns false when the problem is unbounded.
    fn optimize(&mut self, limit: usize) -> Result<bool> {
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_positive()) else {
                return Ok(true);
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => {
                        // rhs[i]/rows[i][c] vs rhs[b]/rows[b][c], cross-multiplied
                        // (both pivot entries positive).
                        let lhs = self.rhs(i).mul(&self.rows[b][c]);
                        let rhs = self.rhs(b).mul(&self.rows[i][c]);
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
            let Some(r) = best else {
                return Ok(false);
            };
            self.pivot(r, c)?;
        }
    }
}

/// Maximize `objective . x` over a polyhedron with no strict rows, exactly.
pub fn lp_solve<T: Scalar>(objective: &[T], poly: &Polyhedron<T>) -> Result<LPOutcome<T>> {
    assert_eq!(objective.len(), poly.dim);
    if poly.has_strict_rows() {
        return Err(Error::PreconditionViolation(
            "lp_solve requires a polyhedron with no strict rows".into(),
        ));
    }
    let n = poly.dim;
    let m = poly.rows.len();
    // Free variables split as x = u - v with u, v >= 0; then slacks, then
    // one artificial per negative-rhs row.
    let neg_rows: Vec<usize> = (0..m)
        .filter(|&i| poly.rows[i].offset.is_negative())
        .collect();
    let ncols = 2 * n + m + neg_rows.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_index = 0;
    for (i, row) in poly.rows.iter().enumerate() {
        let flip = row.offset.is_negative();
        let s = |v: &T| if flip { v.neg() } else { v.clone() };
        let mut r = Vec::with_capacity(ncols + 1);
        for j in 0..n {
            r.push(s(&row.normal[j]));
        }
        for j in 0..n {
            r.push(s(&row.normal[j]).neg());
        }
        for j in 0..m {
            let slack = if j == i { T::one() } else { T::zero() };
            r.push(s(&slack));
        }
        for _ in 0..neg_rows.len() {
            r.push(T::zero());
        }
        if flip {
            r[2 * n + m + art_index] = T::one();
            basis.push(2 * n + m + art_index);
            art_index += 1;
        } else {
            basis.push(2 * n + i);
        }
        r.push(s(&row.offset));
        rows.push(r);
    }
    let mut tab = Tableau {
        rows,
        obj: vec![T::zero(); ncols + 1],
        basis,
        ncols,
        pivots_left: pivot_cap(),
    };

    // Phase 1: maximize -(sum of artificials); feasible iff optimum is 0.
    if !neg_rows.is_empty() {
        for j in 2 * n + m..ncols {
            tab.obj[j] = T::one().neg();
        }
        // Price out the artificial basis.
        for i in 0..m {
            if tab.basis[i] >= 2 * n + m {
                for j in 0..=ncols {
                    let t = tab.rows[i][j].clone();
                    tab.obj[j] = tab.obj[j].add(&t);
                }
            }
        }
        let bounded = tab.optimize(ncols)?;
        debug_assert!(bounded, "phase-1 objective is bounded above by zero");
        // obj rhs holds the negated objective value, so a positive entry
        // means some artificial is stuck above zero.
        if tab.obj[ncols].is_positive() {
            return Ok(LPOutcome::Infeasible);
        }
        // Drive remaining artificials out of the basis.
        for i in 0..m {
            if tab.basis[i] >= 2 * n + m {
                if let Some(c) = (0..2 * n + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, c)?;
                }
                // A fully zero row is redundant; its artificial stays basic
                // at value 0 and is simply never entered in phase 2.
            }
        }
    }

    // Phase 2: real objective over structural columns only.
    tab.obj = vec![T::zero(); ncols + 1];
    for j in 0..n {
        tab.obj[j] = objective[j].clone();
        tab.obj[n + j] = objective[j].neg();
    }
    for i in 0..m {
        let b = tab.basis[i];
        if b < 2 * n + m && !tab.obj[b].is_zero() {
            let f = tab.obj[b].clone();
            for j in 0..=ncols {
                let t = f.mul(&tab.rows[i][j]);
                tab.obj[j] = tab.obj[j].sub(&t);
            }
        }
    }
    if !tab.optimize(2 * n + m)? {
        return Ok(LPOutcome::Unbounded);
    }

    let mut x = vec![T::zero(); n];
    for i in 0..m {
        let b = tab.basis[i];
        if b < n {
            x[b] = x[b].add(tab.rhs(i));
        } else if b < 2 * n {
            x[b - n] = x[b - n].sub(tab.rhs(i));
        }
    }
    // Exact feasibility re-check, row by row.
    assert!(poly.contains(&x), "simplex returned an infeasible point");
    let value = dot(objective, &x);
    Ok(LPOutcome::Optimal { value, point: x })
}
