//! Extension of PL data: from the boundary of a single simplex along an
//! admissible chord direction, and from a subcomplex over a whole complex.

use crate::error::{Error, Result};
use crate::exactlin::{
    combine, lp_solve, rank, solve, sub_points, union_set_equal, LPOutcome, Point, Polyhedron,
};
use crate::scalar::{FieldElement, Scalar};
use crate::simplicial::{
    v_simplex_order, validate_complex, Complex, Simplex, VComplex,
};

use super::direction::shear_to_vertical;
use super::map::{induced_map, PLMap};
use super::multi::band_simplexes;

type F = FieldElement;

fn in_span<T: Scalar>(u: &[T], dirs: &[Vec<T>]) -> bool {
    let mut extended = dirs.to_vec();
    extended.push(u.to_vec());
    rank(&extended) == rank(dirs)
}

fn direction_space<T: Scalar>(s: &Simplex<T>) -> Vec<Vec<T>> {
    s.vertices()[1..]
        .iter()
        .map(|v| sub_points(v, &s.vertices()[0]))
        .collect()
}

fn facets<T: Scalar>(s: &Simplex<T>) -> Vec<Simplex<T>> {
    s.faces()
        .into_iter()
        .filter(|f| f.dim() + 1 == s.dim())
        .collect()
}

/// Admissibility and, when the st-vertices of `S` are affinely dependent,
/// the degenerate-direction rule: `st(u) = 0` and `a_k + u` in the affine
/// hull of the remaining vertices, which forces every chord to have
/// infinitesimal length.
fn check_direction(s: &Simplex<F>, u: &[F]) -> Result<()> {
    if u.len() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            got: u.len(),
        });
    }
    if u.iter().all(|c| c.is_zero()) {
        return Err(Error::BadDirection("zero direction".into()));
    }
    if !in_span(u, &direction_space(s)) {
        return Err(Error::BadDirection(
            "direction leaves the affine span of the simplex".into(),
        ));
    }
    for facet in facets(s) {
        if facet.dim() >= 1 && in_span(u, &direction_space(&facet)) {
            return Err(Error::BadDirection(format!(
                "direction is parallel to the facet {facet}"
            )));
        }
    }
    let order = v_simplex_order(s)?;
    let degenerate = order.blocks.len() < s.vertices().len();
    if degenerate {
        for c in u {
            if !c.standard_part()?.is_zero() {
                return Err(Error::BadDirection(
                    "st-degenerate simplex requires an infinitesimal direction".into(),
                ));
            }
        }
        let a_k = order.vertices.last().unwrap();
        let others = &order.vertices[..order.vertices.len() - 1];
        let target: Point<F> = a_k.iter().zip(u).map(|(a, c)| a.add(c)).collect();
        let dirs: Vec<Vec<F>> = others[1..]
            .iter()
            .map(|v| sub_points(v, &others[0]))
            .collect();
        if !in_span(&sub_points(&target, &others[0]), &dirs) {
            return Err(Error::BadDirection(
                "st-degenerate simplex requires a_k + u in the opposite facet hyperplane".into(),
            ));
        }
    }
    Ok(())
}

/// Extend a PL map from the boundary `delta(S)` (the union of the proper
/// faces) over the whole simplex along the chord direction `u`: every chord
/// `[x, lambda(x)]` parallel to `u` has its endpoints on the boundary, and
/// the extension interpolates the boundary values along a triangulation of
/// the chord decomposition. Supports simplexes of dimension at most 2; the
/// pipeline never extends over higher pieces.
pub fn extend_from_boundary(
    s: &Simplex<F>,
    f: &PLMap<F>,
    u: &[F],
) -> Result<PLMap<F>> {
    let k = s.dim();
    let codomain = f.codomain_dim();
    if k == 0 {
        // The boundary is empty, so any value extends it; pick 0.
        let domain = validate_complex(std::slice::from_ref(s))?;
        let table = vec![(s.vertices()[0].clone(), vec![F::zero(); codomain])];
        return PLMap::new(domain, codomain, &table);
    }
    let boundary: Vec<Vec<Point<F>>> = facets(s)
        .iter()
        .map(|t| t.vertices().to_vec())
        .collect();
    if !union_set_equal(&f.domain().carrier(), &boundary) {
        return Err(Error::PreconditionViolation(
            "map domain is not the boundary of the simplex".into(),
        ));
    }
    induced_map(f)?;
    check_direction(s, u)?;

    if k == 1 {
        // Chords fill the edge in one step: affine interpolation of the
        // endpoint values.
        let domain = validate_complex(std::slice::from_ref(s))?;
        let table: Vec<(Point<F>, Point<F>)> = s
            .vertices()
            .iter()
            .map(|v| Ok((v.clone(), f.evaluate(v)?)))
            .collect::<Result<_>>()?;
        let g = PLMap::new(domain, codomain, &table)?;
        induced_map(&g)?;
        return Ok(g);
    }
    if k > 2 {
        return Err(Error::ResourceLimit {
            what: format!("boundary extension over a {k}-dimensional simplex"),
        });
    }

    // k = 2. Move to the exact affine chart of S and shear the chord
    // direction vertical; chords become vertical segments of a triangle.
    let v = s.vertices();
    let n = s.ambient_dim();
    let rows: Vec<Vec<F>> = (0..n)
        .map(|j| vec![v[1][j].sub(&v[0][j]), v[2][j].sub(&v[0][j])])
        .collect();
    let chart = |x: &[F]| -> Point<F> {
        solve(&rows, &sub_points(x, &v[0])).expect("point lies in the affine span")
    };
    let unchart = |t: &[F]| -> Point<F> {
        (0..n)
            .map(|j| {
                v[0][j]
                    .add(&t[0].mul(&v[1][j].sub(&v[0][j])))
                    .add(&t[1].mul(&v[2][j].sub(&v[0][j])))
            })
            .collect()
    };
    let u_chart = solve(&rows, u).expect("admissible direction lies in the span");
    // u is not parallel to the facet [v0, v1], so its chart has a nonzero
    // second coordinate and the shear exists.
    let sh = shear_to_vertical(&u_chart)?;
    let corners: Vec<Point<F>> = v.iter().map(|p| sh.apply(&chart(p))).collect();

    // Breakpoints: projections of every boundary vertex (corners included).
    let mut xs: Vec<F> = Vec::new();
    for q in f.domain().vertices() {
        let x = sh.apply(&chart(&q))[0].clone();
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort();

    // Heights of the triangle boundary above x: the chords' endpoints.
    let edge_pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let heights = |x: &F| -> (F, F) {
        let mut ys: Vec<F> = Vec::new();
        for (i, j) in edge_pairs {
            let (p, q) = (&corners[i], &corners[j]);
            let (lo, hi) = if p[0] <= q[0] { (p, q) } else { (q, p) };
            if *x < lo[0] || *x > hi[0] || lo[0] == hi[0] {
                continue;
            }
            let t = Scalar::div(&x.sub(&lo[0]), &hi[0].sub(&lo[0]));
            ys.push(lo[1].add(&t.mul(&hi[1].sub(&lo[1]))));
        }
        let min = ys.iter().min().unwrap().clone();
        let max = ys.iter().max().unwrap().clone();
        (min, max)
    };

    // One prism band per slab between consecutive breakpoints, pulled back
    // to the ambient space.
    let mut tops: Vec<Simplex<F>> = Vec::new();
    for w in xs.windows(2) {
        let (lo_a, up_a) = heights(&w[0]);
        let (lo_b, up_b) = heights(&w[1]);
        let base = vec![vec![w[0].clone()], vec![w[1].clone()]];
        for band in band_simplexes(&base, &[lo_a, lo_b], &[up_a, up_b])? {
            let verts: Vec<Point<F>> = band
                .vertices()
                .iter()
                .map(|p| unchart(&sh.apply_inverse(p)))
                .collect();
            tops.push(Simplex::new(verts)?);
        }
    }
    let domain = validate_complex(&tops)?;
    // Every vertex of the subdivision lies on the boundary, where f gives
    // its value; interpolation then agrees with f on all of delta(S).
    let table: Vec<(Point<F>, Point<F>)> = domain
        .vertices()
        .into_iter()
        .map(|p| {
            let img = f.evaluate(&p)?;
            Ok((p, img))
        })
        .collect::<Result<_>>()?;
    let g = PLMap::new(domain, codomain, &table)?;
    induced_map(&g)?;
    Ok(g)
}

/// Nearest point of a simplex in the sup metric, by the distance LP over
/// barycentric coordinates; deterministic via the exact pivot rule.
fn nearest_point_in_simplex(x: &[F], simplex: &[Point<F>]) -> Result<(Point<F>, F)> {
    let n = x.len();
    let m = simplex.len();
    let mut p = Polyhedron::new(m + 1);
    for i in 0..m {
        let mut e = vec![F::zero(); m + 1];
        e[i] = F::one();
        p.geq(e, F::zero());
    }
    let mut ones = vec![F::one(); m + 1];
    ones[m] = F::zero();
    p.equality(ones, F::one());
    for d in 0..n {
        let mut lo = vec![F::zero(); m + 1];
        let mut hi = vec![F::zero(); m + 1];
        for i in 0..m {
            lo[i] = simplex[i][d].clone();
            hi[i] = simplex[i][d].neg();
        }
        lo[m] = F::one().neg();
        hi[m] = F::one().neg();
        p.leq(hi, x[d].neg());
        p.leq(lo, x[d].clone());
    }
    let mut obj = vec![F::zero(); m + 1];
    obj[m] = F::one().neg();
    match lp_solve(&obj, &p)? {
        LPOutcome::Optimal { value, point } => {
            Ok((combine(simplex, &point[..m]), value.neg()))
        }
        _ => unreachable!("distance LP is feasible and bounded"),
    }
}

/// Extend a PL map from a subcomplex `L` over the whole complex `K`. Every
/// new vertex `a` gets the value 0 if `d(a, |L|)` is non-infinitesimal and
/// `f(b)` for a nearest point `b` of `|L|` otherwise; pieces interpolate.
/// Since `f` is affine on each simplex of `L`, the interpolation extends
/// `f` exactly, and the vertex rule keeps st-coherence, so the result has
/// an induced map whenever `f` does.
pub fn extend_over_subcomplex(
    k: &VComplex,
    l: &Complex<F>,
    f: &PLMap<F>,
) -> Result<PLMap<F>> {
    if !l.is_subcomplex_of(k.base()) {
        return Err(Error::PreconditionViolation(
            "L is not a subcomplex of K".into(),
        ));
    }
    if f.domain() != l {
        return Err(Error::PreconditionViolation(
            "map domain differs from the subcomplex L".into(),
        ));
    }
    if !l.is_empty() {
        induced_map(f)?;
    }
    let codomain = f.codomain_dim();
    let l_verts = l.vertices();
    let mut table: Vec<(Point<F>, Point<F>)> = f.vertex_table();
    for a in k.base().vertices() {
        if l_verts.contains(&a) {
            continue;
        }
        let value = if l.is_empty() {
            vec![F::zero(); codomain]
        } else {
            // Nearest simplex first by distance, ties by complex order.
            let mut best: Option<(Point<F>, F)> = None;
            for t in l.simplexes() {
                let (b, d) = nearest_point_in_simplex(&a, t.vertices())?;
                if best.as_ref().map_or(true, |(_, bd)| d < *bd) {
                    best = Some((b, d));
                }
            }
            let (b, d) = best.unwrap();
            if d.standard_part()?.is_zero() {
                f.evaluate(&b)?
            } else {
                vec![F::zero(); codomain]
            }
        };
        table.push((a, value));
    }
    let g = PLMap::new(k.base().clone(), codomain, &table)?;
    induced_map(&g)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;
    use num_rational::BigRational;

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    fn fe(src: &str) -> F {
        parse_scalar(src).unwrap()
    }

    fn boundary_complex(s: &Simplex<F>) -> Complex<F> {
        validate_complex(&facets(s)).unwrap()
    }

    #[test]
    fn reproduces_affine_maps() {
        // A(x, y) = 3x - y + 1 restricted to the boundary of a triangle.
        let a = |p: &[F]| vec![f(3).mul(&p[0]).sub(&p[1]).add(&f(1))];
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(2), f(0)],
            vec![f(0), f(2)],
        ])
        .unwrap();
        let boundary = boundary_complex(&s);
        let table: Vec<_> = boundary
            .vertices()
            .into_iter()
            .map(|v| {
                let img = a(&v);
                (v, img)
            })
            .collect();
        let fb = PLMap::new(boundary, 1, &table).unwrap();
        let g = extend_from_boundary(&s, &fb, &[f(1), f(2)]).unwrap();
        for p in [
            vec![fe("1/2"), fe("1/2")],
            vec![fe("1/4"), f(1)],
            vec![f(1), fe("1/3")],
            s.interior_point(),
        ] {
            assert_eq!(g.evaluate(&p).unwrap(), a(&p));
        }
    }

    #[test]
    fn boundary_values_survive_exactly() {
        // f has a breakpoint at (2,0) with value 1, 0 at all corners.
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(4), f(0)],
            vec![f(0), f(4)],
        ])
        .unwrap();
        let bottom_l = Simplex::new(vec![vec![f(0), f(0)], vec![f(2), f(0)]]).unwrap();
        let bottom_r = Simplex::new(vec![vec![f(2), f(0)], vec![f(4), f(0)]]).unwrap();
        let hyp = Simplex::new(vec![vec![f(4), f(0)], vec![f(0), f(4)]]).unwrap();
        let left = Simplex::new(vec![vec![f(0), f(4)], vec![f(0), f(0)]]).unwrap();
        let boundary = validate_complex(&[bottom_l, bottom_r, hyp, left]).unwrap();
        let table: Vec<_> = boundary
            .vertices()
            .into_iter()
            .map(|v| {
                let img = vec![if v == vec![f(2), f(0)] { f(1) } else { f(0) }];
                (v, img)
            })
            .collect();
        let fb = PLMap::new(boundary.clone(), 1, &table).unwrap();
        let fmap = PLMap::new(boundary, 1, &table).unwrap();
        let g = extend_from_boundary(&s, &fb, &[f(1), f(3)]).unwrap();
        // Probes on the boundary, including points inside subdivided edges.
        for p in [
            vec![f(1), f(0)],
            vec![f(3), f(0)],
            vec![f(2), f(2)],
            vec![f(0), f(1)],
            vec![f(2), f(0)],
        ] {
            assert_eq!(g.evaluate(&p).unwrap(), fmap.evaluate(&p).unwrap());
        }
        // Continuity at the breakpoint: infinitesimally above (2,0) the
        // value stays infinitesimally close to 1.
        let near = g.evaluate(&[f(2), fe("e")]).unwrap();
        assert_eq!(near[0].standard_part().unwrap(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn degenerate_direction_rules() {
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), fe("e")],
        ])
        .unwrap();
        let boundary = boundary_complex(&s);
        let table: Vec<_> = boundary
            .vertices()
            .into_iter()
            .map(|v| {
                let img = if v == vec![f(0), f(0)] {
                    vec![f(0)]
                } else if v == vec![f(1), f(0)] {
                    vec![f(5)]
                } else {
                    vec![fe("5+e")]
                };
                (v, img)
            })
            .collect();
        let fb = PLMap::new(boundary, 1, &table).unwrap();
        // A non-infinitesimal direction is rejected on this flat simplex.
        assert!(matches!(
            extend_from_boundary(&s, &fb, &[f(1), f(2)]),
            Err(Error::BadDirection(_))
        ));
        // u = (e, -e): st(u) = 0 and a_k + u = (1+e, 0) lies on the x-axis,
        // the hull of the two other vertices.
        let g = extend_from_boundary(&s, &fb, &[fe("e"), fe("-e")]).unwrap();
        let gq = induced_map(&g).unwrap();
        // st g is constant on vertical st-fibers: it only sees st(x).
        for (x, y) in [("1/2", "e/3"), ("1/2", "e/2"), ("1/4", "e/5")] {
            let p = vec![fe(x), fe(y)];
            if let Ok(img) = g.evaluate(&p) {
                let st_img: Vec<BigRational> =
                    img.iter().map(|c| c.standard_part().unwrap()).collect();
                let st_p: Vec<BigRational> =
                    p.iter().map(|c| c.standard_part().unwrap()).collect();
                assert_eq!(gq.evaluate(&st_p).unwrap(), st_img);
            }
        }
    }

    #[test]
    fn facet_parallel_direction_rejected() {
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(2), f(0)],
            vec![f(0), f(2)],
        ])
        .unwrap();
        let boundary = boundary_complex(&s);
        let table: Vec<_> = boundary
            .vertices()
            .into_iter()
            .map(|v| (v, vec![f(0)]))
            .collect();
        let fb = PLMap::new(boundary, 1, &table).unwrap();
        assert!(matches!(
            extend_from_boundary(&s, &fb, &[f(1), f(0)]),
            Err(Error::BadDirection(_))
        ));
    }

    #[test]
    fn extends_over_subcomplex_by_the_vertex_rule() {
        // K = faces of the edges [0, e] and [e, 1]; L = {vertex 0}, f(0)=3.
        let k = VComplex::new(
            validate_complex(&[
                Simplex::new(vec![vec![f(0)], vec![fe("e")]]).unwrap(),
                Simplex::new(vec![vec![fe("e")], vec![f(1)]]).unwrap(),
            ])
            .unwrap(),
        )
        .unwrap();
        let l = validate_complex(&[Simplex::new(vec![vec![f(0)]]).unwrap()]).unwrap();
        let fl = PLMap::new(l.clone(), 1, &[(vec![f(0)], vec![f(3)])]).unwrap();
        let g = extend_over_subcomplex(&k, &l, &fl).unwrap();
        // d(e, {0}) = e is infinitesimal: nearest value 3. d(1, {0}) = 1 is
        // not: value 0.
        assert_eq!(g.evaluate(&[fe("e")]).unwrap(), vec![f(3)]);
        assert_eq!(g.evaluate(&[f(1)]).unwrap(), vec![f(0)]);
        assert_eq!(g.evaluate(&[f(0)]).unwrap(), vec![f(3)]);
        assert!(induced_map(&g).is_ok());

        // L = K leaves the map unchanged.
        let full = extend_over_subcomplex(
            &k,
            k.base(),
            &PLMap::identity(k.base().clone()),
        )
        .unwrap();
        assert_eq!(full.vertex_table(), PLMap::identity(k.base().clone()).vertex_table());
    }
}
