//! Convex polyhedra as finite systems of linear inequalities. These appear
//! only as intermediate constraint carriers; closed bounded semilinear sets
//! are represented as simplex unions elsewhere.

use crate::scalar::Scalar;

use super::linalg::{dot, Point};
use super::lp::{lp_solve, LPOutcome};
use crate::error::Result;

/// One inequality `normal . x <= offset` (or `<` when `strict`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub strict: bool,
}

/// Intersection of finitely many halfspaces in a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron<T> {
    pub dim: usize,
    pub rows: Vec<Row<T>>,
}

impl<T: Scalar> Polyhedron<T> {
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, rows: Vec::new() }
    }

    /// The canonical explicit-empty polyhedron `0 . x <= -1`.
    pub fn empty(dim: usize) -> Self {
        let mut p = Polyhedron::new(dim);
        p.add(vec![T::zero(); dim], T::one().neg(), false);
        p
    }

    pub fn add(&mut self, normal: Vec<T>, offset: T, strict: bool) {
        assert_eq!(normal.len(), self.dim);
        self.rows.push(Row { normal, offset, strict });
    }

    /// `normal . x <= offset`
    pub fn leq(&mut self, normal: Vec<T>, offset: T) {
        self.add(normal, offset, false);
    }

    /// `normal . x < offset`
    pub fn lt(&mut self, normal: Vec<T>, offset: T) {
        self.add(normal, offset, true);
    }

    /// `normal . x >= offset`
    pub fn geq(&mut self, normal: Vec<T>, offset: T) {
        let neg: Vec<T> = normal.iter().map(|c| c.neg()).collect();
        self.add(neg, offset.neg(), false);
    }

    /// `normal . x > offset`
    pub fn gt(&mut self, normal: Vec<T>, offset: T) {
        let neg: Vec<T> = normal.iter().map(|c| c.neg()).collect();
        self.add(neg, offset.neg(), true);
    }

    /// `normal . x = offset`
    pub fn equality(&mut self, normal: Vec<T>, offset: T) {
        self.leq(normal.clone(), offset.clone());
        self.geq(normal, offset);
    }

    pub fn has_strict_rows(&self) -> bool {
        self.rows.iter().any(|r| r.strict)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.rows.iter().all(|r| {
            let v = dot(&r.normal, x);
            if r.strict {
                v < r.offset
            } else {
                v <= r.offset
            }
        })
    }

    /// Conjunction of two systems over the same ambient space.
    pub fn and(&self, other: &Polyhedron<T>) -> Polyhedron<T> {
        assert_eq!(self.dim, other.dim);
        let mut p = self.clone();
        p.rows.extend(other.rows.iter().cloned());
        p
    }

    /// An interior witness: a point satisfying every row, strict rows with
    /// positive slack. Found by maximizing a shared slack `t` (capped at 1)
    /// added to every strict row; the set is nonempty iff the optimum is
    /// positive.
    pub fn feasible_point(&self) -> Result<Option<Point<T>>> {
        let n = self.dim;
        let mut relaxed = Polyhedron::new(n + 1);
        for r in &self.rows {
            let mut normal = r.normal.clone();
            normal.push(if r.strict { T::one() } else { T::zero() });
            relaxed.leq(normal, r.offset.clone());
        }
        // 0 <= t <= 1 keeps the objective bounded.
        let mut t_up = vec![T::zero(); n];
        t_up.push(T::one());
        relaxed.leq(t_up.clone(), T::one());
        relaxed.geq(t_up.clone(), T::zero());
        match lp_solve(&t_up, &relaxed)? {
            LPOutcome::Optimal { value, mut point } => {
                if self.has_strict_rows() && !value.is_positive() {
                    return Ok(None);
                }
                point.truncate(n);
                debug_assert!(self.contains(&point));
                Ok(Some(point))
            }
            LPOutcome::Infeasible => Ok(None),
            LPOutcome::Unbounded => unreachable!("slack objective is capped"),
        }
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_none())
    }

    /// Topological closure. For a nonempty convex set relaxing strict rows
    /// is exact; an empty set closes to the explicit-empty polyhedron.
    pub fn closure(&self) -> Result<Polyhedron<T>> {
        if self.is_empty()? {
            return Ok(Polyhedron::empty(self.dim));
        }
        let mut p = self.clone();
        for r in &mut p.rows {
            r.strict = false;
        }
        Ok(p)
    }
}
