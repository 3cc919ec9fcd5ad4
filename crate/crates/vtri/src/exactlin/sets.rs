//! Simplexes as vertex lists, barycentric coordinates, convex clipping, and
//! exact set predicates on finite unions of simplexes. Simplex unions are
//! the canonical carrier for closed bounded semilinear sets; taking the
//! standard part of such a set reduces to mapping vertices.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{FieldElement, Scalar};

use super::linalg::{
    affine_rank, affinely_independent_points, dot, nullspace, solve, sub_points, Point,
};
use super::polyhedron::Polyhedron;

/// A convex polytope given as the hull of finitely many points (not
/// necessarily vertices; redundant points are harmless).
pub type VertexSet<T> = Vec<Point<T>>;

/// Affine coordinates of a point relative to a simplex's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Barycentric<T> {
    /// All coordinates nonnegative: the point lies in the simplex.
    Inside(Vec<T>),
    /// In the affine span but with a negative coordinate (first one cited).
    Negative { index: usize, value: T, coords: Vec<T> },
    /// Not in the affine span of the vertices.
    OffSpan,
}

/// Solve `x = sum t_i a_i, sum t_i = 1` exactly. The solution is unique by
/// affine independence of the vertices.
pub fn barycentric_coordinates<T: Scalar>(
    simplex: &[Point<T>],
    x: &[T],
) -> Result<Barycentric<T>> {
    let n = x.len();
    if simplex.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: simplex.iter().map(|v| v.len()).find(|&l| l != n).unwrap(),
        });
    }
    let m = simplex.len();
    // Rows: one per ambient coordinate, plus the affine row of ones.
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for d in 0..n {
        a.push(simplex.iter().map(|v| v[d].clone()).collect::<Vec<_>>());
        b.push(x[d].clone());
    }
    a.push(vec![T::one(); m]);
    b.push(T::one());
    let Some(coords) = solve(&a, &b) else {
        return Ok(Barycentric::OffSpan);
    };
    match coords.iter().position(|c| c.is_negative()) {
        Some(index) => Ok(Barycentric::Negative {
            index,
            value: coords[index].clone(),
            coords,
        }),
        None => Ok(Barycentric::Inside(coords)),
    }
}

pub fn point_in_simplex<T: Scalar>(simplex: &[Point<T>], x: &[T]) -> bool {
    matches!(
        barycentric_coordinates(simplex, x),
        Ok(Barycentric::Inside(_))
    )
}

/// Membership in the open simplex: all barycentric coordinates positive.
pub fn point_in_simplex_interior<T: Scalar>(simplex: &[Point<T>], x: &[T]) -> bool {
    matches!(
        barycentric_coordinates(simplex, x),
        Ok(Barycentric::Inside(t)) if t.iter().all(|c| c.is_positive())
    )
}

pub fn point_in_union<T: Scalar>(union: &[Vec<Point<T>>], x: &[T]) -> bool {
    union.iter().any(|s| point_in_simplex(s, x))
}

/// The barycenter, an interior point of the simplex.
pub fn simplex_interior_point<T: Scalar>(simplex: &[Point<T>]) -> Point<T> {
    assert!(!simplex.is_empty());
    let n = simplex[0].len();
    let k = T::from_int(simplex.len() as i64);
    let mut out = vec![T::zero(); n];
    for v in simplex {
        for (o, c) in out.iter_mut().zip(v) {
            *o = o.add(c);
        }
    }
    out.iter().map(|c| c.div(&k)).collect()
}

/// All hyperplanes `normal . x = offset` supporting the affine span and the
/// facets of a simplex; these generate an arrangement in which the simplex
/// is a union of closed cells.
pub fn simplex_hyperplanes<T: Scalar>(simplex: &[Point<T>]) -> Vec<(Vec<T>, T)> {
    assert!(!simplex.is_empty());
    let n = simplex[0].len();
    let base = &simplex[0];
    let mut out = Vec::new();
    if simplex.len() == 1 {
        for d in 0..n {
            let mut normal = vec![T::zero(); n];
            normal[d] = T::one();
            out.push((normal, base[d].clone()));
        }
        return out;
    }
    let diffs: Vec<Vec<T>> = simplex[1..].iter().map(|v| sub_points(v, base)).collect();
    for normal in nullspace(&diffs) {
        let offset = dot(&normal, base);
        out.push((normal, offset));
    }
    for drop in 0..simplex.len() {
        let facet: Vec<&Point<T>> = simplex
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, v)| v)
            .collect();
        let fbase = facet[0];
        let fdiffs: Vec<Vec<T>> = facet[1..].iter().map(|v| sub_points(v, fbase)).collect();
        let kernel = if fdiffs.is_empty() {
            (0..n)
                .map(|d| {
                    let mut e = vec![T::zero(); n];
                    e[d] = T::one();
                    e
                })
                .collect()
        } else {
            nullspace(&fdiffs)
        };
        let apex = sub_points(&simplex[drop], fbase);
        let normal = kernel
            .into_iter()
            .find(|a| !dot(a, &apex).is_zero())
            .expect("apex is affinely independent of the facet");
        let offset = dot(&normal, fbase);
        out.push((normal, offset));
    }
    out
}

/// H-representation of a simplex: span equalities plus facet inequalities
/// oriented to contain the simplex.
pub fn simplex_polyhedron<T: Scalar>(simplex: &[Point<T>]) -> Polyhedron<T> {
    assert!(!simplex.is_empty());
    let n = simplex[0].len();
    let base = &simplex[0];
    let mut p = Polyhedron::new(n);
    let diffs: Vec<Vec<T>> = simplex[1..].iter().map(|v| sub_points(v, base)).collect();
    let span_normals = if diffs.is_empty() {
        (0..n)
            .map(|d| {
                let mut e = vec![T::zero(); n];
                e[d] = T::one();
                e
            })
            .collect()
    } else {
        nullspace(&diffs)
    };
    for normal in span_normals {
        let offset = dot(&normal, base);
        p.equality(normal, offset);
    }
    for drop in 0..simplex.len() {
        if simplex.len() == 1 {
            break;
        }
        let facet: Vec<&Point<T>> = simplex
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, v)| v)
            .collect();
        let fbase = facet[0];
        let fdiffs: Vec<Vec<T>> = facet[1..].iter().map(|v| sub_points(v, fbase)).collect();
        let kernel = if fdiffs.is_empty() {
            (0..n)
                .map(|d| {
                    let mut e = vec![T::zero(); n];
                    e[d] = T::one();
                    e
                })
                .collect()
        } else {
            nullspace(&fdiffs)
        };
        let apex = sub_points(&simplex[drop], fbase);
        let mut normal = kernel
            .into_iter()
            .find(|a| !dot(a, &apex).is_zero())
            .expect("apex is affinely independent of the facet");
        // Orient so the omitted vertex (hence the simplex) is on the <= side.
        if dot(&normal, &apex).is_positive() {
            normal = normal.iter().map(|c| c.neg()).collect();
        }
        let offset = dot(&normal, fbase);
        p.leq(normal, offset);
    }
    p
}

/// Intersect a polytope (hull of `points`) with the closed halfspace
/// `normal . x <= offset`, returning a hull representation of the result.
pub fn clip_by_halfspace<T: Scalar>(
    points: &[Point<T>],
    normal: &[T],
    offset: &T,
) -> VertexSet<T> {
    let vals: Vec<T> = points.iter().map(|v| dot(normal, v)).collect();
    let mut out: VertexSet<T> = Vec::new();
    let push = |p: Point<T>, out: &mut VertexSet<T>| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for (v, val) in points.iter().zip(&vals) {
        if *val <= *offset {
            push(v.clone(), &mut out);
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (inside, outside) = if vals[i] <= *offset && vals[j] > *offset {
                (i, j)
            } else if vals[j] <= *offset && vals[i] > *offset {
                (j, i)
            } else {
                continue;
            };
            let denom = vals[outside].sub(&vals[inside]);
            let s = offset.sub(&vals[inside]).div(&denom);
            let cut: Point<T> = points[inside]
                .iter()
                .zip(&points[outside])
                .map(|(a, b)| a.add(&s.mul(&b.sub(a))))
                .collect();
            push(cut, &mut out);
        }
    }
    out
}

/// Exact test that the polytope spanned by `points` is contained in the
/// union of simplexes `cover`. The polytope is recursively split along the
/// span/facet hyperplanes of the cover; a fragment not split by any
/// remaining hyperplane lies in a single arrangement cell, where coverage
/// is equivalent to containment in a single simplex.
pub fn covered<T: Scalar>(points: &VertexSet<T>, cover: &[Vec<Point<T>>]) -> bool {
    let hyps: Vec<(Vec<T>, T)> = cover.iter().flat_map(|s| simplex_hyperplanes(s)).collect();
    covered_rec(points, &hyps, 0, cover)
}

fn covered_rec<T: Scalar>(
    points: &VertexSet<T>,
    hyps: &[(Vec<T>, T)],
    from: usize,
    cover: &[Vec<Point<T>>],
) -> bool {
    if points.is_empty() {
        return true;
    }
    if cover
        .iter()
        .any(|b| points.iter().all(|v| point_in_simplex(b, v)))
    {
        return true;
    }
    for (i, (normal, offset)) in hyps.iter().enumerate().skip(from) {
        let vals: Vec<T> = points.iter().map(|v| dot(normal, v)).collect();
        let below = vals.iter().any(|v| *v < *offset);
        let above = vals.iter().any(|v| *v > *offset);
        if below && above {
            let lo = clip_by_halfspace(points, normal, offset);
            let flipped: Vec<T> = normal.iter().map(|c| c.neg()).collect();
            let hi = clip_by_halfspace(points, &flipped, &offset.neg());
            return covered_rec(&lo, hyps, i + 1, cover)
                && covered_rec(&hi, hyps, i + 1, cover);
        }
    }
    false
}

/// `|A| subseteq |B|` for unions of simplexes, exactly.
pub fn union_subset<T: Scalar>(a: &[Vec<Point<T>>], b: &[Vec<Point<T>>]) -> bool {
    a.iter().all(|s| covered(s, b))
}

/// Set equality of two unions of simplexes, exactly.
pub fn union_set_equal<T: Scalar>(a: &[Vec<Point<T>>], b: &[Vec<Point<T>>]) -> bool {
    union_subset(a, b) && union_subset(b, a)
}

/// Triangulate the convex hull of finitely many points as the union of the
/// simplexes on all maximal affinely independent subsets. Any point of the
/// hull lies in the hull of some affinely independent subset, and every
/// such subset extends to a maximal one, so the union is exactly the hull.
/// The simplexes may overlap; the carrier has set semantics.
pub fn hull_simplexes<T: Scalar>(points: &[Point<T>]) -> Vec<Vec<Point<T>>> {
    let mut distinct: Vec<Point<T>> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    let size = affine_rank(&distinct) + 1;
    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(size);
    pick_independent(&distinct, 0, size, &mut subset, &mut out);
    out
}

fn pick_independent<T: Scalar>(
    points: &[Point<T>],
    from: usize,
    size: usize,
    subset: &mut Vec<Point<T>>,
    out: &mut Vec<Vec<Point<T>>>,
) {
    if subset.len() == size {
        if affinely_independent_points(subset) {
            out.push(subset.clone());
        }
        return;
    }
    if points.len() - from < size - subset.len() {
        return;
    }
    for i in from..points.len() {
        subset.push(points[i].clone());
        pick_independent(points, i + 1, size, subset, out);
        subset.pop();
    }
}

/// Coordinatewise standard part of a vertex list.
pub fn vertex_list_st(verts: &[Point<FieldElement>]) -> Result<Vec<Point<BigRational>>> {
    verts
        .iter()
        .map(|v| v.iter().map(|c| c.standard_part()).collect())
        .collect()
}

/// Standard part of a union of V-bounded simplexes: st of a simplex is the
/// hull of the st-images of its vertices, triangulated by maximal affinely
/// independent subsets.
pub fn st_of_simplex_union(
    union: &[Vec<Point<FieldElement>>],
) -> Result<Vec<Vec<Point<BigRational>>>> {
    let mut out: Vec<Vec<Point<BigRational>>> = Vec::new();
    for simplex in union {
        let st_verts = vertex_list_st(simplex)?;
        for mut s in hull_simplexes(&st_verts) {
            s.sort();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn f(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn fe(src: &str) -> FieldElement {
        parse_scalar(src).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn pt(cs: &[i64]) -> Point<FieldElement> {
        cs.iter().map(|&c| f(c)).collect()
    }

    #[test]
    fn affine_independence_with_infinitesimal() {
        // (0,0),(1,0),(1,e): the 2x2 determinant of differences is e != 0.
        let pts = vec![pt(&[0, 0]), pt(&[1, 0]), vec![f(1), fe("e")]];
        assert!(affinely_independent_points(&pts));
    }

    #[test]
    fn barycentric_examples() {
        let s = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let x = vec![fe("1/2"), fe("1/2")];
        assert_eq!(
            barycentric_coordinates(&s, &x).unwrap(),
            Barycentric::Inside(vec![f(0), fe("1/2"), fe("1/2")])
        );

        let seg = vec![pt(&[0, 0]), pt(&[1, 0])];
        match barycentric_coordinates(&seg, &pt(&[2, 0])).unwrap() {
            Barycentric::Negative { index, value, .. } => {
                assert_eq!(index, 0);
                assert_eq!(value, f(-1));
            }
            other => panic!("expected a negative coordinate, got {other:?}"),
        }
        assert_eq!(
            barycentric_coordinates(&seg, &pt(&[0, 1])).unwrap(),
            Barycentric::OffSpan
        );

        // Flat triangle over Q(e): solve the exact 2x2 system.
        let flat = vec![pt(&[0, 0]), pt(&[1, 0]), vec![f(1), fe("e")]];
        let x = vec![f(1), fe("e/2")];
        assert_eq!(
            barycentric_coordinates(&flat, &x).unwrap(),
            Barycentric::Inside(vec![f(0), fe("1/2"), fe("1/2")])
        );
        // Vertex maps to a standard basis coefficient vector.
        assert_eq!(
            barycentric_coordinates(&flat, &flat[2]).unwrap(),
            Barycentric::Inside(vec![f(0), f(0), f(1)])
        );
    }

    #[test]
    fn clipping_square() {
        let square = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2])];
        // x1 <= 1 cuts the square into a 1x2 rectangle.
        let half = clip_by_halfspace(&square, &[f(1), f(0)], &f(1));
        let expect = vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[1, 0]), pt(&[1, 2])];
        for v in &expect {
            assert!(point_in_union(&[half.clone()], v) || half.contains(v));
        }
        assert!(!half.iter().any(|v| v[0] > f(1)));
    }

    #[test]
    fn covered_segment_split() {
        // [0,2] is covered by [0,1] and [1,2], but not by [0,1] alone.
        let seg = vec![vec![f(0)], vec![f(2)]];
        let a = vec![vec![f(0)], vec![f(1)]];
        let b = vec![vec![f(1)], vec![f(2)]];
        assert!(covered(&seg, &[a.clone(), b.clone()]));
        assert!(!covered(&seg, &[a.clone()]));
        assert!(union_set_equal(&[seg], &[a, b]));
    }

    #[test]
    fn covered_square_two_triangulations() {
        let sq = |d: i64| {
            vec![
                vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])],
                vec![pt(&[0, 0]), pt(&[d, 1 - d]), pt(&[1, 1])],
            ]
        };
        // Diagonal flip: same square, different diagonals.
        let t1 = sq(0); // lower + upper via (0,1)
        let t2 = vec![
            vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])],
            vec![pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])],
        ];
        assert!(union_set_equal(&t1, &t2));
        assert!(!union_set_equal(&[t1[0].clone()], &t2));
    }

    #[test]
    fn st_of_union_examples() {
        // Flat triangle collapses to a segment.
        let flat = vec![pt(&[0, 0]), pt(&[1, 0]), vec![f(1), fe("e")]];
        let st = st_of_simplex_union(&[flat]).unwrap();
        let seg = vec![vec![q(0), q(0)], vec![q(1), q(0)]];
        assert!(union_set_equal(&st, &[seg]));

        // Rational vertices: st is the identity.
        let tri = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let st = st_of_simplex_union(&[tri]).unwrap();
        let tri_q = vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(union_set_equal(&st, &[tri_q]));

        // All-infinitesimal triangle collapses to the origin.
        let small = vec![
            pt(&[0, 0]),
            vec![fe("e"), f(0)],
            vec![f(0), fe("e")],
        ];
        let st = st_of_simplex_union(&[small]).unwrap();
        assert_eq!(st, vec![vec![vec![q(0), q(0)]]]);

        // Infinite vertex is rejected.
        let bad = vec![vec![fe("1/e")], vec![f(0)]];
        assert!(matches!(
            st_of_simplex_union(&[bad]),
            Err(Error::NotFinite)
        ));
    }

    #[test]
    fn simplex_polyhedron_membership_agrees() {
        let s = vec![pt(&[0, 0]), pt(&[1, 0]), vec![f(1), fe("e")]];
        let p = simplex_polyhedron(&s);
        let inside = vec![fe("3/4"), fe("e/4")];
        assert!(p.contains(&inside));
        assert!(point_in_simplex(&s, &inside));
        let outside = vec![fe("1/2"), fe("1/2")];
        assert!(!p.contains(&outside));
        assert!(!point_in_simplex(&s, &outside));
        // Interior point is interior.
        let c = simplex_interior_point(&s);
        assert!(point_in_simplex_interior(&s, &c));
    }
}
