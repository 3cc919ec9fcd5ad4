//! Lifting a triangulation along a multifunction, the distinctness
//! conditions on member pairs, and the infinitesimal closeness threshold
//! relating agreement sets to their standard parts.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{
    clip_by_halfspace, combine, hull_simplexes, solve, st_of_simplex_union, union_set_equal,
    Point,
};
use crate::plmap::{
    band_simplexes, induced_map, region_complexes, st_coherent_vertex_order, Multifunction,
    PLMap,
};
use crate::scalar::{FieldElement, Scalar, Valuation};
use crate::simplicial::{flag_subdivision_default, validate_complex, Complex, Simplex, VComplex};

use super::types::VTriangulation;

type F = FieldElement;

/// `{x in hull(verts): lo <= h(x) <= hi}` as a simplex union, where `h` is
/// the affine function on the hull's span with `h(verts[i]) = values[i]`.
pub(crate) fn affine_between_pieces<T: Scalar>(
    verts: &[Point<T>],
    values: &[T],
    lo: &T,
    hi: &T,
) -> Vec<Vec<Point<T>>> {
    let n = verts[0].len();
    let rows: Vec<Vec<T>> = verts
        .iter()
        .map(|v| {
            let mut r = v.clone();
            r.push(T::one());
            r
        })
        .collect();
    let sol = solve(&rows, values).expect("affine data on independent points is consistent");
    let (w, c) = (sol[..n].to_vec(), sol[n].clone());
    let upper = clip_by_halfspace(verts, &w, &hi.sub(&c));
    if upper.is_empty() {
        return Vec::new();
    }
    let wneg: Vec<T> = w.iter().map(|x| x.neg()).collect();
    let both = clip_by_halfspace(&upper, &wneg, &c.sub(lo));
    if both.is_empty() {
        return Vec::new();
    }
    hull_simplexes(&both)
}

pub(crate) fn member_difference(f: &PLMap<F>, g: &PLMap<F>, v: &Point<F>) -> F {
    g.image_of_vertex(v).expect("base vertex")[0]
        .sub(&f.image_of_vertex(v).expect("base vertex")[0])
}

/// Check that the chosen threshold equates the standard parts of the
/// closeness set `{|f - g| <= eps0}` and the Q-side agreement set
/// `{f_st = g_st}` for every member pair.
fn certify_eps0(
    vk: &VComplex,
    members: &[PLMap<F>],
    induced: &[PLMap<BigRational>],
    eps0: &F,
) -> Result<bool> {
    let neg = eps0.neg();
    let zero = BigRational::zero();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let mut close: Vec<Vec<Point<F>>> = Vec::new();
            for p in vk.base().top_simplexes() {
                let vals: Vec<F> = p
                    .vertices()
                    .iter()
                    .map(|v| member_difference(&members[i], &members[j], v))
                    .collect();
                close.extend(affine_between_pieces(p.vertices(), &vals, &neg, eps0));
            }
            let st_close = st_of_simplex_union(&close)?;
            let mut agree: Vec<Vec<Point<BigRational>>> = Vec::new();
            for q in vk.st_complex().top_simplexes() {
                let vals: Vec<BigRational> = q
                    .vertices()
                    .iter()
                    .map(|v| {
                        induced[j].image_of_vertex(v).expect("st vertex")[0]
                            .sub(&induced[i].image_of_vertex(v).expect("st vertex")[0])
                    })
                    .collect();
                agree.extend(affine_between_pieces(q.vertices(), &vals, &zero, &zero));
            }
            if !union_set_equal(&st_close, &agree) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Search-plus-certify version over raw members (trichotomy not required).
pub(crate) fn epsilon0_core(base: &Complex<F>, members: &[PLMap<F>]) -> Result<F> {
    let vk = VComplex::new(base.clone())?;
    let induced: Vec<PLMap<BigRational>> =
        members.iter().map(induced_map).collect::<Result<_>>()?;
    // Candidate thresholds: each nonzero infinitesimal vertex difference,
    // plus the pure powers of e up to one past the largest such valuation.
    // Larger thresholds are more permissive, so scan in descending order;
    // every candidate is infinitesimal by construction.
    let mut max_val: i64 = 0;
    let mut candidates: Vec<F> = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            for v in base.vertices() {
                let d = member_difference(&members[i], &members[j], &v);
                if let Valuation::Finite(k) = d.valuation() {
                    if k >= 1 {
                        max_val = max_val.max(k);
                        let a = d.abs();
                        if !candidates.contains(&a) {
                            candidates.push(a);
                        }
                    }
                }
            }
        }
    }
    for n in 1..=(max_val + 1) {
        let p = F::epsilon().pow(n)?;
        if !candidates.contains(&p) {
            candidates.push(p);
        }
    }
    candidates.sort();
    candidates.reverse();
    for eps0 in candidates {
        if certify_eps0(&vk, members, &induced, &eps0)? {
            return Ok(eps0);
        }
    }
    Err(Error::VerificationFailed(
        "no infinitesimal threshold certified the closeness/agreement st-identity".into(),
    ))
}

/// The infinitesimal `eps0` such that for every member pair the closeness
/// set `{|f - g| <= eps0}` has the same standard part as `{f - g in m}`.
/// The result is certified by exact set comparison of both standard parts.
pub fn epsilon0_witness(f: &Multifunction) -> Result<F> {
    epsilon0_core(f.base(), f.members())
}

/// The two distinctness conditions on a member family: on every piece (and
/// on every standard-part piece) two members that differ on the piece must
/// already differ at one of its vertices, and member differences must have
/// constant sign on every open piece. Returns the validated multifunction
/// and its induced members.
fn check_star(
    base: &Complex<F>,
    members: &[PLMap<F>],
) -> Result<(Multifunction, Vec<PLMap<BigRational>>)> {
    let mf = crate::plmap::validate_multifunction(base, members.to_vec())?;
    // Members are affine per piece, so agreement at every vertex forces
    // agreement on the piece; the scan keeps the condition explicit.
    for p in base.simplexes() {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let all_equal = p
                    .vertices()
                    .iter()
                    .all(|v| member_difference(&members[i], &members[j], v).is_zero());
                if all_equal {
                    let x = p.interior_point();
                    if members[i].evaluate(&x)? != members[j].evaluate(&x)? {
                        return Err(Error::StarConditionViolation(format!(
                            "members {i} and {j} agree at every vertex of {p} but differ on it"
                        )));
                    }
                }
            }
        }
    }
    let vk = VComplex::new(base.clone())?;
    let induced: Vec<PLMap<BigRational>> =
        members.iter().map(induced_map).collect::<Result<_>>()?;
    for q in vk.st_complex().top_simplexes() {
        for i in 0..induced.len() {
            for j in i + 1..induced.len() {
                let diffs: Vec<BigRational> = q
                    .vertices()
                    .iter()
                    .map(|v| {
                        induced[j].image_of_vertex(v).expect("st vertex")[0]
                            .sub(&induced[i].image_of_vertex(v).expect("st vertex")[0])
                    })
                    .collect();
                if diffs.iter().any(|d| d.is_positive()) && diffs.iter().any(|d| d.is_negative())
                {
                    return Err(Error::StarConditionViolation(format!(
                        "residue-field members {i} and {j} change order inside st-piece {q}"
                    )));
                }
            }
        }
    }
    for q in vk.st_complex().simplexes() {
        for i in 0..induced.len() {
            for j in i + 1..induced.len() {
                let all_equal = q.vertices().iter().all(|v| {
                    induced[i].image_of_vertex(v) == induced[j].image_of_vertex(v)
                });
                if all_equal {
                    let x = q.interior_point();
                    if induced[i].evaluate(&x)? != induced[j].evaluate(&x)? {
                        return Err(Error::StarConditionViolation(format!(
                            "residue-field members {i} and {j} agree at every vertex of {q} but differ on it"
                        )));
                    }
                }
            }
        }
    }
    Ok((mf, induced))
}

fn rebase(m: &PLMap<F>, base: &Complex<F>) -> Result<PLMap<F>> {
    let table: Vec<(Point<F>, Point<F>)> = base
        .vertices()
        .into_iter()
        .map(|v| {
            let img = m.evaluate(&v)?;
            Ok((v, img))
        })
        .collect::<Result<_>>()?;
    PLMap::new(base.clone(), m.codomain_dim(), &table)
}

/// Subdivide the complex (flag subdivisions with the block-weighted
/// interior points) until the member family is a multifunction satisfying
/// both distinctness conditions, rebasing members by evaluation.
pub fn enforce_star_conditions(
    t: &VTriangulation,
    members: &[PLMap<F>],
    max_rounds: usize,
) -> Result<(VTriangulation, Multifunction)> {
    if !t.is_identity() {
        return Err(Error::PreconditionViolation(
            "star enforcement is implemented for identity charts".into(),
        ));
    }
    let mut vk = t.complex().clone();
    let mut members = members.to_vec();
    let mut last_err = None;
    for round in 0..=max_rounds {
        match check_star(vk.base(), &members) {
            Ok((mf, _)) => {
                let t2 = VTriangulation::identity(vk)?;
                return Ok((t2, mf));
            }
            Err(err) => {
                if round == max_rounds {
                    last_err = Some(err);
                    break;
                }
                vk = flag_subdivision_default(&vk)?;
                members = members
                    .iter()
                    .map(|m| rebase(m, vk.base()))
                    .collect::<Result<_>>()?;
            }
        }
    }
    Err(Error::ResourceLimit {
        what: format!(
            "distinctness conditions still failing after {max_rounds} subdivisions: {}",
            last_err.expect("loop recorded the last failure")
        ),
    })
}

/// The residue-field lift built independently from the st-complex and the
/// induced members, with the plain lexicographic vertex order.
fn residue_field_lift(
    st_complex: &Complex<BigRational>,
    order_q: &[Point<BigRational>],
    induced: &[PLMap<BigRational>],
) -> Result<Complex<BigRational>> {
    let mut tops: Vec<Simplex<BigRational>> = Vec::new();
    for q in st_complex.top_simplexes() {
        let verts: Vec<Point<BigRational>> = order_q
            .iter()
            .filter(|v| q.vertices().contains(v))
            .cloned()
            .collect();
        let x = q.interior_point();
        let mut by_value: Vec<(usize, BigRational)> = Vec::new();
        for (i, m) in induced.iter().enumerate() {
            by_value.push((i, m.evaluate(&x)?[0].clone()));
        }
        by_value.sort_by(|a, b| a.1.cmp(&b.1));
        let mut levels: Vec<usize> = Vec::new();
        let mut last: Option<BigRational> = None;
        for (i, v) in by_value {
            if last.as_ref() != Some(&v) {
                levels.push(i);
                last = Some(v);
            }
        }
        let heights = |i: usize| -> Vec<BigRational> {
            verts
                .iter()
                .map(|v| induced[i].image_of_vertex(v).expect("st vertex")[0].clone())
                .collect()
        };
        for &i in &levels {
            let h = heights(i);
            tops.extend(band_simplexes(&verts, &h, &h)?);
        }
        for w in levels.windows(2) {
            tops.extend(band_simplexes(&verts, &heights(w[0]), &heights(w[1]))?);
        }
    }
    validate_complex(&tops)
}

fn sorted_keys<T: Scalar>(k: &Complex<T>) -> Vec<Vec<Point<T>>> {
    let mut keys: Vec<Vec<Point<T>>> = k.simplexes().iter().map(|s| s.key()).collect();
    keys.sort();
    keys
}

/// Lift a triangulation along a multifunction: triangulate the region set
/// `X^F` (member graphs and the bands between consecutive members) by a
/// complex `L` projecting simplex-by-simplex onto `K`, verify the lifting
/// identity at every vertex and on 100 seeded sample points, and compare
/// the standard part of `L` against the residue-field lift `M` built
/// independently from the induced data.
pub fn lift_triangulation(t: &VTriangulation, f: &Multifunction) -> Result<VTriangulation> {
    if !t.is_identity() {
        return Err(Error::PreconditionViolation(
            "lifting is implemented for identity charts; the pipeline lifts over the identity"
                .into(),
        ));
    }
    if f.base() != t.complex().base() {
        return Err(Error::PreconditionViolation(
            "multifunction base differs from the triangulation complex".into(),
        ));
    }
    if f.members().is_empty() {
        return Err(Error::PreconditionViolation(
            "lifting requires at least one member".into(),
        ));
    }
    let (_, induced) = check_star(f.base(), f.members())?;
    let st_complex = t.complex().st_complex();
    let order_q = {
        let mut v = st_complex.vertices();
        v.sort();
        v
    };
    // Member graphs commute with st: st of the graph over each piece must
    // equal the graph of the induced member over the st-piece.
    let order = st_coherent_vertex_order(f.base());
    for (m, mi) in f.members().iter().zip(&induced) {
        let mut graphs_r: Vec<Vec<Point<F>>> = Vec::new();
        for p in f.base().top_simplexes() {
            let verts: Vec<Point<F>> = order
                .iter()
                .filter(|v| p.vertices().contains(v))
                .cloned()
                .collect();
            let h: Vec<F> = verts
                .iter()
                .map(|v| m.image_of_vertex(v).expect("piece vertex")[0].clone())
                .collect();
            graphs_r.extend(
                band_simplexes(&verts, &h, &h)?
                    .iter()
                    .map(|s| s.vertices().to_vec()),
            );
        }
        let mut graphs_q: Vec<Vec<Point<BigRational>>> = Vec::new();
        for q in st_complex.top_simplexes() {
            let verts: Vec<Point<BigRational>> = order_q
                .iter()
                .filter(|v| q.vertices().contains(v))
                .cloned()
                .collect();
            let h: Vec<BigRational> = verts
                .iter()
                .map(|v| mi.image_of_vertex(v).expect("st vertex")[0].clone())
                .collect();
            graphs_q.extend(
                band_simplexes(&verts, &h, &h)?
                    .iter()
                    .map(|s| s.vertices().to_vec()),
            );
        }
        if !union_set_equal(&st_of_simplex_union(&graphs_r)?, &graphs_q) {
            return Err(Error::LiftingCheckFailed(
                "a member graph does not commute with the standard part map".into(),
            ));
        }
    }
    // Build L from the region decomposition (graphs and prism bands over
    // the st-coherent vertex order) and lift by the identity.
    let regions = region_complexes(f)?;
    let l = VComplex::new(regions.complex.clone())?;
    let psi = PLMap::identity(l.base().clone());
    let nb = t.complex().base().ambient_dim();
    let check_point = |x: &Point<F>| -> Result<()> {
        let img = psi.evaluate(x)?;
        let lhs = img[..nb].to_vec();
        let rhs = t.map().evaluate(&x[..nb])?;
        if lhs != rhs {
            return Err(Error::LiftingCheckFailed(format!(
                "projection and chart disagree at {}",
                crate::simplicial::format_point(x)
            )));
        }
        Ok(())
    };
    for v in l.base().vertices() {
        check_point(&v)?;
    }
    let tops: Vec<Simplex<F>> = l.base().top_simplexes().into_iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let s = &tops[rng.gen_range(0..tops.len())];
        let raw: Vec<F> = (0..s.vertices().len())
            .map(|_| F::from_int(rng.gen_range(1..=8)))
            .collect();
        let mut total = F::zero();
        for r in &raw {
            total = total.add(r);
        }
        let coords: Vec<F> = raw.iter().map(|r| Scalar::div(r, &total)).collect();
        check_point(&combine(s.vertices(), &coords))?;
    }
    // The projections of the simplexes of L are exactly the simplexes of K.
    let mut proj_keys: Vec<Vec<Point<F>>> = Vec::new();
    for s in l.base().simplexes() {
        let mut pv: Vec<Point<F>> = Vec::new();
        for v in s.vertices() {
            let p = v[..nb].to_vec();
            if !pv.contains(&p) {
                pv.push(p);
            }
        }
        let ps = Simplex::new(pv)?;
        if !t.complex().base().has_simplex(&ps) {
            return Err(Error::LiftingCheckFailed(format!(
                "projected simplex {ps} is not a simplex of the base complex"
            )));
        }
        let key = ps.key();
        if !proj_keys.contains(&key) {
            proj_keys.push(key);
        }
    }
    for s in t.complex().base().simplexes() {
        if !proj_keys.contains(&s.key()) {
            return Err(Error::LiftingCheckFailed(format!(
                "base simplex {s} is not the projection of any lifted simplex"
            )));
        }
    }
    // st(L) must equal the independently built residue-field lift M, and
    // the region set must commute with st.
    let m = residue_field_lift(st_complex, &order_q, &induced)?;
    if sorted_keys(l.st_complex()) != sorted_keys(&m) {
        return Err(Error::LiftingCheckFailed(
            "st of the lifted complex differs from the residue-field lift".into(),
        ));
    }
    if !union_set_equal(&st_of_simplex_union(&l.base().carrier())?, &m.carrier()) {
        return Err(Error::LiftingCheckFailed(
            "st of the region set differs from the residue-field region set".into(),
        ));
    }
    VTriangulation::new(l.base().carrier(), psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plmap::validate_multifunction;
    use crate::scalar::parse_scalar;

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    fn fe(src: &str) -> F {
        parse_scalar(src).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn unit_edge() -> Complex<F> {
        validate_complex(&[Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]).unwrap()
    }

    fn on_edge(k: &Complex<F>, v0: F, v1: F) -> PLMap<F> {
        PLMap::new(
            k.clone(),
            1,
            &[(vec![f(0)], vec![v0]), (vec![f(1)], vec![v1])],
        )
        .unwrap()
    }

    #[test]
    fn epsilon0_examples() {
        let k = unit_edge();
        // {0, e}: the m-agreement set is all of [0,1] and {e <= e^2} is
        // empty, so e^2 fails and the scan settles on e.
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, fe("e"), fe("e"))],
        )
        .unwrap();
        assert_eq!(epsilon0_witness(&mf).unwrap(), fe("e"));

        // {0, 1}: both sides empty; any infinitesimal works.
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(1), f(1))],
        )
        .unwrap();
        assert_eq!(epsilon0_witness(&mf).unwrap(), fe("e"));

        // {0, x*e}: {x*e <= e} is all of [0,1], matching the st-agreement.
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(0), fe("e"))],
        )
        .unwrap();
        assert_eq!(epsilon0_witness(&mf).unwrap(), fe("e"));
    }

    #[test]
    fn epsilon0_needs_a_non_power_threshold() {
        // {0, 2*e*x}: {2*e*x <= e} is only [0,1/2], so no pure power of e
        // works; the vertex difference 2e does.
        let k = unit_edge();
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(0), fe("2*e"))],
        )
        .unwrap();
        assert_eq!(epsilon0_witness(&mf).unwrap(), fe("2*e"));
    }

    #[test]
    fn star_enforcement_subdivides_a_crossing() {
        // {x, 1-x} fails trichotomy on the single edge; one flag
        // subdivision at the midpoint separates the members.
        let k = unit_edge();
        let vk = VComplex::new(k.clone()).unwrap();
        let t = VTriangulation::identity(vk).unwrap();
        let members = vec![on_edge(&k, f(0), f(1)), on_edge(&k, f(1), f(0))];
        let (t2, mf) = enforce_star_conditions(&t, &members, 3).unwrap();
        let verts = t2.complex().base().vertices();
        assert!(verts.contains(&vec![fe("1/2")]));
        assert_eq!(mf.base().top_simplexes().len(), 2);
        // Rebased members still evaluate like the originals.
        assert_eq!(
            mf.members()[0].evaluate(&[fe("1/4")]).unwrap(),
            vec![fe("1/4")]
        );
        assert_eq!(
            mf.members()[1].evaluate(&[fe("1/4")]).unwrap(),
            vec![fe("3/4")]
        );
    }

    #[test]
    fn star_enforcement_accepts_distinct_constants() {
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let members = vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(1), f(1))];
        let (t2, _) = enforce_star_conditions(&t, &members, 3).unwrap();
        // No subdivision happened.
        assert_eq!(t2.complex().base().vertices().len(), 2);
    }

    #[test]
    fn star_enforcement_gives_up_on_stubborn_crossings() {
        // Members crossing at x = 1/3 are never separated by midpoint
        // subdivisions; the round cap reports a resource limit.
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let members = vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(-1), f(2))];
        assert!(matches!(
            enforce_star_conditions(&t, &members, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn st_degenerate_members_pass_without_subdivision() {
        // {e*x, e*(1-x)} cross over Q only in the collapsed sense: both
        // induce the zero map, so the residue-field conditions hold; the
        // members themselves cross inside (0,1) and force one subdivision.
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let members = vec![
            on_edge(&k, f(0), fe("e")),
            on_edge(&k, fe("e"), f(0)),
        ];
        let (t2, mf) = enforce_star_conditions(&t, &members, 3).unwrap();
        assert!(t2.complex().base().vertices().contains(&vec![fe("1/2")]));
        assert_eq!(mf.members().len(), 2);
    }

    #[test]
    fn lift_single_constant_member() {
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let mf = validate_multifunction(&k, vec![on_edge(&k, f(0), f(0))]).unwrap();
        let lifted = lift_triangulation(&t, &mf).unwrap();
        // One horizontal edge plus faces.
        assert_eq!(lifted.complex().base().dim(), 1);
        assert!(union_set_equal(
            &lifted.domain(),
            &[vec![vec![f(0), f(0)], vec![f(1), f(0)]]]
        ));
    }

    #[test]
    fn lift_triangulates_a_trapezoid() {
        // F = {0, x+1} over [0,1]: X^F is the trapezoid with corners
        // (0,0),(1,0),(0,1),(1,2).
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, f(1), f(2))],
        )
        .unwrap();
        let lifted = lift_triangulation(&t, &mf).unwrap();
        let trapezoid = vec![
            vec![vec![f(0), f(0)], vec![f(1), f(0)], vec![f(0), f(1)]],
            vec![vec![f(1), f(0)], vec![f(0), f(1)], vec![f(1), f(2)]],
        ];
        assert!(union_set_equal(&lifted.domain(), &trapezoid));
        // st of the lift triangulates the same trapezoid over Q.
        let st_carrier = lifted.complex().st_complex().carrier();
        let trapezoid_q: Vec<Vec<Point<BigRational>>> = trapezoid
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| v.iter().map(|c| c.standard_part().unwrap()).collect())
                    .collect()
            })
            .collect();
        assert!(union_set_equal(&st_carrier, &trapezoid_q));
    }

    #[test]
    fn lift_thin_band_degenerates_over_q() {
        // F = {0, e}: X^F is the thin band [0,1] x [0,e]; over Q both
        // members collapse to 0 and M is a single edge.
        let k = unit_edge();
        let t = VTriangulation::identity(VComplex::new(k.clone()).unwrap()).unwrap();
        let mf = validate_multifunction(
            &k,
            vec![on_edge(&k, f(0), f(0)), on_edge(&k, fe("e"), fe("e"))],
        )
        .unwrap();
        let lifted = lift_triangulation(&t, &mf).unwrap();
        let band = vec![
            vec![vec![f(0), f(0)], vec![f(1), f(0)], vec![f(0), fe("e")]],
            vec![vec![f(1), f(0)], vec![f(0), fe("e")], vec![f(1), fe("e")]],
        ];
        assert!(union_set_equal(&lifted.domain(), &band));
        let seg_q = vec![vec![vec![q(0), q(0)], vec![q(1), q(0)]]];
        assert!(union_set_equal(
            &lifted.complex().st_complex().carrier(),
            &seg_q
        ));
    }

    #[test]
    fn lift_rejects_non_identity_charts() {
        let k = unit_edge();
        let double = PLMap::new(
            k.clone(),
            1,
            &[(vec![f(0)], vec![f(0)]), (vec![f(1)], vec![f(2)])],
        )
        .unwrap();
        let t = VTriangulation::new(k.carrier(), double).unwrap();
        let mf = validate_multifunction(
            &t.complex().base().clone(),
            vec![PLMap::new(
                t.complex().base().clone(),
                1,
                &[(vec![f(0)], vec![f(0)]), (vec![f(2)], vec![f(0)])],
            )
            .unwrap()],
        )
        .unwrap();
        assert!(matches!(
            lift_triangulation(&t, &mf),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
