//! Good directions for finite unions of simplexes, a deterministic search
//! for rational good directions, and the shear taking a direction to the
//! last coordinate axis.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{rank, sub_points, Point};
use crate::scalar::{FieldElement, Scalar};
use crate::simplicial::{validate_complex, Complex, Simplex};

/// Rank criterion: `u` is accepted iff it lies in the direction space of no
/// positive-dimensional simplex. Then every line in direction `u` meets
/// each simplex (hence the union) in at most one point, which is sufficient
/// for goodness; the test is scale- and sign-invariant.
pub fn is_good_direction<T: Scalar>(u: &[T], x: &[Vec<Point<T>>]) -> bool {
    if u.iter().all(|c| c.is_zero()) {
        return false;
    }
    for s in x {
        if s.len() < 2 {
            continue;
        }
        let diffs: Vec<Vec<T>> = s[1..].iter().map(|v| sub_points(v, &s[0])).collect();
        let mut extended = diffs.clone();
        extended.push(u.to_vec());
        if rank(&extended) == rank(&diffs) {
            return false;
        }
    }
    true
}

/// Candidate budget for [`v_good_direction`].
pub const DIRECTION_BUDGET: usize = 10_000;

/// Integer candidate directions of sup-height `h` with positive last
/// coordinate, ordered sparsest first, then by larger last coordinate, then
/// lexicographically. Restricting to positive last coordinates loses no
/// generality (the criterion is sign-invariant) and keeps every returned
/// direction usable by [`shear_to_vertical`].
fn candidates(dim: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let lows: Vec<i64> = (0..dim).map(|i| if i == dim - 1 { 1 } else { -h }).collect();
    let mut u = lows.clone();
    'gen: loop {
        // Keep only vectors of exact height h so heights don't repeat.
        if u.iter().any(|c| c.abs() == h) {
            out.push(u.clone());
        }
        for i in 0..dim {
            if u[i] < h {
                u[i] += 1;
                continue 'gen;
            }
            u[i] = lows[i];
        }
        break;
    }
    out.sort_by_key(|v| {
        (
            v.iter().filter(|c| **c != 0).count(),
            -v[dim - 1],
            v.clone(),
        )
    });
    out
}

/// Search small-height integer directions accepted for both `X` and
/// `st(X)`; the result has rational (in fact integer) coordinates, so it is
/// its own standard part.
pub fn v_good_direction(x: &[Vec<Point<FieldElement>>]) -> Result<Point<FieldElement>> {
    let Some(first) = x.iter().find(|s| !s.is_empty()) else {
        return Err(Error::EmptySet);
    };
    let dim = first[0].len();
    let mut st_x: Vec<Vec<Point<BigRational>>> = Vec::new();
    for s in x {
        let st_s: Vec<Point<BigRational>> = s
            .iter()
            .map(|v| v.iter().map(|c| c.standard_part()).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        st_x.push(st_s);
    }
    let mut tried = 0usize;
    let mut h = 1i64;
    while tried < DIRECTION_BUDGET {
        for cand in candidates(dim, h) {
            if tried >= DIRECTION_BUDGET {
                break;
            }
            tried += 1;
            let uf: Point<FieldElement> =
                cand.iter().map(|&c| FieldElement::from_int(c)).collect();
            let uq: Point<BigRational> = cand
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect();
            if is_good_direction(&uf, x) && is_good_direction(&uq, &st_x) {
                return Ok(uf);
            }
        }
        h += 1;
    }
    Err(Error::SearchExhausted {
        budget: DIRECTION_BUDGET,
    })
}

/// The invertible linear map `(x', x_last) -> (x' - x_last * u', x_last)`
/// taking the direction `u` (last coordinate normalized to 1) to the last
/// coordinate axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shear<T> {
    /// Normalized direction, last coordinate 1.
    u: Point<T>,
}

pub fn shear_to_vertical<T: Scalar>(u: &[T]) -> Result<Shear<T>> {
    let Some(last) = u.last() else {
        return Err(Error::PreconditionViolation("empty direction".into()));
    };
    if last.is_zero() {
        return Err(Error::PreconditionViolation(
            "direction has zero last coordinate, cannot shear to vertical".into(),
        ));
    }
    let norm: Point<T> = u
        .iter()
        .map(|c| c.div(last))
        .collect();
    Ok(Shear { u: norm })
}

impl<T: Scalar> Shear<T> {
    pub fn direction(&self) -> &[T] {
        &self.u
    }

    pub fn apply(&self, x: &[T]) -> Point<T> {
        assert_eq!(x.len(), self.u.len());
        let n = x.len() - 1;
        let mut out: Point<T> = (0..n).map(|i| x[i].sub(&x[n].mul(&self.u[i]))).collect();
        out.push(x[n].clone());
        out
    }

    pub fn apply_inverse(&self, x: &[T]) -> Point<T> {
        assert_eq!(x.len(), self.u.len());
        let n = x.len() - 1;
        let mut out: Point<T> = (0..n).map(|i| x[i].add(&x[n].mul(&self.u[i]))).collect();
        out.push(x[n].clone());
        out
    }

    pub fn apply_simplex(&self, s: &Simplex<T>) -> Simplex<T> {
        Simplex::new(s.vertices().iter().map(|v| self.apply(v)).collect())
            .expect("linear bijections preserve affine independence")
    }

    pub fn apply_simplex_inverse(&self, s: &Simplex<T>) -> Simplex<T> {
        Simplex::new(s.vertices().iter().map(|v| self.apply_inverse(v)).collect())
            .expect("linear bijections preserve affine independence")
    }

    pub fn apply_complex(&self, k: &Complex<T>) -> Result<Complex<T>> {
        let tops: Vec<Simplex<T>> = k
            .top_simplexes()
            .iter()
            .map(|s| self.apply_simplex(s))
            .collect();
        validate_complex(&tops)
    }

    pub fn apply_complex_inverse(&self, k: &Complex<T>) -> Result<Complex<T>> {
        let tops: Vec<Simplex<T>> = k
            .top_simplexes()
            .iter()
            .map(|s| self.apply_simplex_inverse(s))
            .collect();
        validate_complex(&tops)
    }
}

impl Shear<FieldElement> {
    /// The shear over the residue field; exists iff the coefficients are
    /// finite, and then st commutes with the shear coordinatewise.
    pub fn st_shear(&self) -> Result<Shear<BigRational>> {
        let u: Point<BigRational> = self
            .u
            .iter()
            .map(|c| c.standard_part())
            .collect::<Result<_>>()?;
        Ok(Shear { u })
    }
}
