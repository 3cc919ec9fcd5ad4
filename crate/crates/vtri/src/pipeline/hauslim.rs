//! Hausdorff limits of definable families: the section family `X(t)` of a
//! rational semilinear set converges, as `t -> 0+`, to the `t = 0` slice of
//! the closure of its positive-parameter part, and the limit is certified
//! exactly by substituting `t := e` and checking the Hausdorff distance is
//! infinitesimal.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{
    affine_rank, clip_by_halfspace, hausdorff_distance, hull_simplexes, simplex_polyhedron,
    Point,
};
use crate::scalar::{FieldElement, Scalar};

type F = FieldElement;

fn t_row<T: crate::scalar::Scalar>(ambient: usize, sign: i64) -> Vec<T> {
    let mut row = vec![T::zero(); ambient];
    row[0] = T::from_int(sign);
    row
}

fn drop_t<T: Clone>(points: &[Point<T>]) -> Vec<Point<T>> {
    points.iter().map(|p| p[1..].to_vec()).collect()
}

fn to_field(piece: &[Point<BigRational>]) -> Vec<Point<F>> {
    piece
        .iter()
        .map(|p| p.iter().map(|c| F::from_rational(c.clone())).collect())
        .collect()
}

/// Slice a convex piece (a vertex list) at parameter value `at`: intersect
/// with `{t <= at}` and `{t >= at}` and return the slice as simplexes with
/// the parameter coordinate dropped.
fn slice_piece<T: crate::scalar::Scalar>(piece: &[Point<T>], at: &T) -> Vec<Vec<Point<T>>> {
    let ambient = piece[0].len();
    let mut pos = vec![T::zero(); ambient];
    pos[0] = T::one();
    let neg: Vec<T> = pos.iter().map(|c| c.neg()).collect();
    let upper = clip_by_halfspace(piece, &pos, at);
    if upper.is_empty() {
        return Vec::new();
    }
    let both = clip_by_halfspace(&upper, &neg, &at.neg());
    if both.is_empty() {
        return Vec::new();
    }
    hull_simplexes(&drop_t(&both))
}

/// The Hausdorff limit of the section family of a rational semilinear set
/// in `R^{1+n}` with distinguished first (parameter) coordinate: the slice
/// of the closure of the `t > 0` part at `t = 0`, triangulated. Returns the
/// limit together with the certified Hausdorff distance `d_H(X(e), H)`,
/// which is checked to be infinitesimal; the dimension of the limit is
/// checked against the section dimension at `t = e`.
pub fn hausdorff_limit(
    family: &[Vec<Point<BigRational>>],
) -> Result<(Vec<Vec<Point<BigRational>>>, F)> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let ambient = family[0][0].len();
    if ambient < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: ambient,
        });
    }
    let zero = <BigRational as Zero>::zero();
    let mut limit: Vec<Vec<Point<BigRational>>> = Vec::new();
    for piece in family {
        // Only pieces meeting {t > 0} contribute; for a convex piece the
        // closure of that part is the intersection with {t >= 0}.
        if !piece.iter().any(|p| p[0].is_positive()) {
            continue;
        }
        let slice = slice_piece(piece, &zero);
        // Cross-check the slice's non-emptiness through the polyhedral
        // closure route: close the piece with a strict t > 0 row, then cut
        // at t = 0. Applies when the piece is itself a simplex.
        if affine_rank(piece) + 1 == piece.len() {
            let mut p = simplex_polyhedron(piece);
            p.gt(t_row::<BigRational>(ambient, 1), zero.clone());
            let mut closed = p.closure()?;
            closed.equality(t_row::<BigRational>(ambient, 1), zero.clone());
            if closed.is_empty()? != slice.is_empty() {
                return Err(Error::VerificationFailed(
                    "closure routes disagree on a family piece".into(),
                ));
            }
        }
        for mut s in slice {
            s.sort();
            if !limit.contains(&s) {
                limit.push(s);
            }
        }
    }
    if limit.is_empty() {
        return Err(Error::EmptyFamily);
    }
    // Certification: the section at t = e is within infinitesimal Hausdorff
    // distance of the limit.
    let eps = F::epsilon();
    let mut section: Vec<Vec<Point<F>>> = Vec::new();
    for piece in family {
        section.extend(slice_piece(&to_field(piece), &eps));
    }
    if section.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let limit_f: Vec<Vec<Point<F>>> = limit.iter().map(|s| to_field(s)).collect();
    let d = hausdorff_distance(&section, &limit_f)?;
    if !d.is_zero() && !d.valuation().is_positive() {
        return Err(Error::VerificationFailed(format!(
            "Hausdorff distance to the limit is not infinitesimal: {d}"
        )));
    }
    let dim_limit = limit.iter().map(|s| affine_rank(s)).max().unwrap_or(0);
    let dim_section = section.iter().map(|s| affine_rank(s)).max().unwrap_or(0);
    if dim_limit > dim_section {
        return Err(Error::VerificationFailed(format!(
            "limit dimension {dim_limit} exceeds section dimension {dim_section}"
        )));
    }
    Ok((limit, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::union_set_equal;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn pt(cs: &[i64]) -> Point<BigRational> {
        cs.iter().map(|&c| q(c)).collect()
    }

    #[test]
    fn shrinking_interval_closes_at_zero() {
        // X(t) = [t, 1]: the triangle t <= x <= 1 over t in [0,1].
        let triangle = vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let (h, d) = hausdorff_limit(&[triangle]).unwrap();
        assert!(union_set_equal(&h, &[vec![vec![q(0)], vec![q(1)]]]));
        assert!(d.valuation().is_positive());
    }

    #[test]
    fn per_piece_limits_union() {
        // X(t) = {t} u [2,3]: a moving point and a static interval.
        let moving = vec![pt(&[0, 0]), pt(&[1, 1])];
        let static_lo = vec![pt(&[0, 2]), pt(&[1, 2]), pt(&[0, 3])];
        let static_hi = vec![pt(&[1, 2]), pt(&[0, 3]), pt(&[1, 3])];
        let (h, d) = hausdorff_limit(&[moving, static_lo, static_hi]).unwrap();
        let expect = vec![
            vec![vec![q(0)]],
            vec![vec![q(2)], vec![q(3)]],
        ];
        assert!(union_set_equal(&h, &expect));
        // The moving point is at distance e from its limit.
        assert!(d.valuation().is_positive());
        assert!(!d.is_zero());
    }

    #[test]
    fn constant_family_is_its_own_limit() {
        let lo = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let hi = vec![pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let (h, d) = hausdorff_limit(&[lo, hi]).unwrap();
        assert!(union_set_equal(&h, &[vec![vec![q(0)], vec![q(1)]]]));
        assert!(d.is_zero());
    }

    #[test]
    fn families_without_positive_sections_are_rejected() {
        let stale = vec![pt(&[-1, 0]), pt(&[0, 1])];
        assert!(matches!(
            hausdorff_limit(&[stale]),
            Err(Error::EmptyFamily)
        ));
        assert!(matches!(
            hausdorff_limit(&[]),
            Err(Error::EmptyFamily)
        ));
    }
}
