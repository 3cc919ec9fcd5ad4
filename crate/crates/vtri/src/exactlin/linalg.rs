//! Exact dense linear algebra by fraction-free-ish Gaussian elimination
//! over an arbitrary ordered field.

use crate::scalar::Scalar;

pub type Point<T> = Vec<T>;

/// Row-reduce a matrix in place, returning the pivot columns.
/// `mat` is a list of rows; elimination uses exact division.
pub fn row_reduce<T: Scalar>(mat: &mut Vec<Vec<T>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = T::one().div(&mat[r][c]);
        for j in c..cols {
            mat[r][j] = mat[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&mat[r][j]);
                    mat[i][j] = mat[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank<T: Scalar>(mat: &[Vec<T>]) -> usize {
    let mut m = mat.to_vec();
    row_reduce(&mut m).len()
}

/// Solve `A x = b` exactly. Returns one solution if the system is
/// consistent (free variables set to zero), `None` otherwise.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace<T: Scalar>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let pivots = row_reduce(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = m[i][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Rank of the set of difference vectors from the first point: the points
/// are affinely independent iff this equals `points.len() - 1`.
pub fn affine_rank<T: Scalar>(points: &[Point<T>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a.sub(b)).collect())
        .collect();
    rank(&diffs)
}

pub fn affinely_independent_points<T: Scalar>(points: &[Point<T>]) -> bool {
    // Distinctness is implied by full affine rank except for the 1-point case.
    affine_rank(points) == points.len().saturating_sub(1)
}

pub fn sub_points<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn add_points<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale_point<T: Scalar>(a: &[T], c: &T) -> Vec<T> {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// Affine combination `sum coeffs[i] * points[i]`.
pub fn combine<T: Scalar>(points: &[Point<T>], coeffs: &[T]) -> Point<T> {
    assert_eq!(points.len(), coeffs.len());
    assert!(!points.is_empty());
    let dim = points[0].len();
    let mut out = vec![T::zero(); dim];
    for (p, c) in points.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(p) {
            *o = o.add(&x.mul(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&a), 1);
        let b = vec![q(3), q(6)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(dot(&a[0], &x), q(3));
        assert!(solve(&a, &[q(3), q(7)]).is_none());
    }

    #[test]
    fn affine_independence() {
        let pts = vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(affinely_independent_points(&pts));
        let collinear = vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(2), q(0)]];
        assert!(!affinely_independent_points(&collinear));
    }
}
