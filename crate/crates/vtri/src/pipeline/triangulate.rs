//! The full V-triangulation pipeline, by induction on the ambient
//! dimension: pick a V-good direction, shear it vertical, decompose into
//! cells, triangulate the projection compatibly with the cells and with
//! the member agreement/closeness sets, lift, restrict, and unshear.
//! Every output is run through the independent verifier before return.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::exactlin::{hull_simplexes, point_in_union, union_set_equal, Point};
use crate::plmap::{extend_over_subcomplex, shear_to_vertical, v_good_direction, PLMap};
use crate::scalar::FieldElement;
use crate::simplicial::{validate_complex, Complex, Simplex, VComplex};

use super::decomp::{decompose_union, fiber_interval};
use super::lift::{
    affine_between_pieces, enforce_star_conditions, epsilon0_core, lift_triangulation,
    member_difference,
};
use super::types::VTriangulation;
use super::verify::verify_v_triangulation;

type F = FieldElement;

/// Default cap on the ambient dimension: the cell arrangement grows fast.
pub const DEFAULT_DIM_CAP: usize = 3;

/// Default rounds of flag subdivision when enforcing the distinctness
/// conditions.
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 3;

static DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

/// The configured ambient-dimension cap (a resource policy, not a
/// correctness bound).
pub fn dim_cap() -> usize {
    DIM_CAP.load(Ordering::Relaxed)
}

pub fn set_dim_cap(cap: usize) {
    DIM_CAP.store(cap, Ordering::Relaxed);
}

/// V-triangulate the carrier of a closed V-bounded complex, compatibly
/// with the given subsets (each a simplex union inside the carrier). The
/// result passes the independent verifier; a failed check is an error.
pub fn v_triangulate(
    y: &Complex<F>,
    subsets: &[Vec<Vec<Point<F>>>],
) -> Result<VTriangulation> {
    triangulate_union(&y.carrier(), subsets)
}

pub(crate) fn triangulate_union(
    pieces: &[Vec<Point<F>>],
    subsets: &[Vec<Vec<Point<F>>>],
) -> Result<VTriangulation> {
    if pieces.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = pieces[0][0].len();
    if n > dim_cap() {
        return Err(Error::ResourceLimit {
            what: format!("ambient dimension {n} exceeds the cap {}", dim_cap()),
        });
    }
    let t = if n == 1 {
        base_case(pieces, subsets)?
    } else {
        recurse(n, pieces, subsets)?
    };
    eprintln!("[vt] n={n} verify start");
    let report = verify_v_triangulation(pieces, subsets, &t);
    if !report.all_passed() {
        let fails: Vec<String> = report
            .checks()
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Error::VerificationFailed(fails.join("; ")));
    }
    Ok(t)
}

/// Dimension 1: sort the endpoint values of all pieces and subsets and lay
/// out the edges between consecutive breakpoints inside the set.
fn base_case(
    pieces: &[Vec<Point<F>>],
    subsets: &[Vec<Vec<Point<F>>>],
) -> Result<VTriangulation> {
    let x_cover: Vec<Vec<Point<F>>> = pieces.iter().flat_map(|p| hull_simplexes(p)).collect();
    let mut breaks: Vec<F> = pieces
        .iter()
        .chain(subsets.iter().flatten())
        .flatten()
        .map(|v| v[0].clone())
        .collect();
    breaks.sort();
    breaks.dedup();
    let half = F::from_ratio(1, 2);
    let mut tops: Vec<Simplex<F>> = Vec::new();
    for b in &breaks {
        if point_in_union(&x_cover, std::slice::from_ref(b)) {
            tops.push(Simplex::new(vec![vec![b.clone()]])?);
        }
    }
    for w in breaks.windows(2) {
        let mid = w[0].add(&w[1]).mul(&half);
        if point_in_union(&x_cover, &[mid]) {
            tops.push(Simplex::new(vec![vec![w[0].clone()], vec![w[1].clone()]])?);
        }
    }
    if tops.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = validate_complex(&tops)?;
    VTriangulation::identity(VComplex::new(k)?)
}

fn apply_shear(sh: &crate::plmap::Shear<F>, union: &[Vec<Point<F>>]) -> Vec<Vec<Point<F>>> {
    union
        .iter()
        .map(|p| p.iter().map(|x| sh.apply(x)).collect())
        .collect()
}

fn proj_points(piece: &[Point<F>]) -> Vec<Point<F>> {
    piece.iter().map(|p| p[..p.len() - 1].to_vec()).collect()
}

/// Dimension n >= 2: shear a V-good direction vertical, decompose, recurse
/// on the projection, lift the cell functions, restrict and unshear.
fn recurse(
    n: usize,
    pieces: &[Vec<Point<F>>],
    subsets: &[Vec<Vec<Point<F>>>],
) -> Result<VTriangulation> {
    // The direction must be good for the <= (n-1)-dimensional faces of all
    // pieces and subset pieces (a superset of the boundaries involved).
    let mut t_pieces: Vec<Vec<Point<F>>> = Vec::new();
    for p in pieces.iter().chain(subsets.iter().flatten()) {
        for verts in hull_simplexes(p) {
            let s = Simplex::new(verts)?;
            for face in s.faces() {
                if face.dim() <= n - 1 {
                    let key = face.key();
                    if !t_pieces.contains(&key) {
                        t_pieces.push(key);
                    }
                }
            }
        }
    }
    eprintln!("[vt] n={n} dir start pieces={}", t_pieces.len());
    let u = v_good_direction(&t_pieces)?;
    let sh = shear_to_vertical(&u)?;
    let sheared = apply_shear(&sh, pieces);
    let sheared_subsets: Vec<Vec<Vec<Point<F>>>> =
        subsets.iter().map(|s| apply_shear(&sh, s)).collect();

    eprintln!("[vt] n={n} decompose start");
    let cd = decompose_union(&sheared, &sheared_subsets)?;
    let x_pieces: Vec<Vec<Point<F>>> = sheared
        .iter()
        .flat_map(|p| hull_simplexes(&proj_points(p)))
        .collect();
    let cell_subsets: Vec<Vec<Vec<Point<F>>>> = cd
        .cells()
        .iter()
        .map(|c| hull_simplexes(c.closure()))
        .collect();

    // First recursion: a V-triangulation of the projection compatible with
    // every cell closure, over which the cell functions are simplexwise
    // affine.
    eprintln!("[vt] n={n} rec1 start cells={} x_pieces={}", cd.cells().len(), x_pieces.len());
    let rec1 = triangulate_union(&x_pieces, &cell_subsets)?;
    let vk1 = rec1.complex().clone();
    let k1 = vk1.base().clone();

    // Members: the lower and upper fiber envelopes of every piece over its
    // projection (affine on each simplex of the first triangulation, which
    // is compatible with the cells), extended over the whole projection.
    // These subsume all per-cell stack functions.
    let mut members: Vec<PLMap<F>> = Vec::new();
    for src in sheared.iter().chain(sheared_subsets.iter().flatten()) {
        let pproj = hull_simplexes(&proj_points(src));
        let l_sub = k1.filter_subcomplex(|s| {
            s.vertices().iter().all(|v| point_in_union(&pproj, v))
        });
        let mut lo_table: Vec<(Point<F>, Point<F>)> = Vec::new();
        let mut hi_table: Vec<(Point<F>, Point<F>)> = Vec::new();
        for v in l_sub.vertices() {
            let (lo, hi) = fiber_interval(src, &v).ok_or_else(|| {
                Error::BadDirection("empty fiber over a projection vertex".into())
            })?;
            lo_table.push((v.clone(), vec![lo]));
            hi_table.push((v, vec![hi]));
        }
        for table in [lo_table, hi_table] {
            let f = PLMap::new(l_sub.clone(), 1, &table)?;
            let g = extend_over_subcomplex(&vk1, &l_sub, &f)?;
            if !members.iter().any(|m| m.vertex_table() == g.vertex_table()) {
                members.push(g);
            }
        }
    }

    // Second recursion: also compatible with the pieces of the first
    // triangulation (so the members stay simplexwise affine) and with all
    // member agreement and eps0-closeness sets.
    eprintln!("[vt] n={n} eps0 start members={} k1-tops={}", members.len(), k1.top_simplexes().len());
    let eps0 = epsilon0_core(&k1, &members)?;
    let neg = eps0.neg();
    let zero = F::zero();
    let mut subsets2 = cell_subsets.clone();
    for s in k1.top_simplexes() {
        subsets2.push(vec![s.vertices().to_vec()]);
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let mut agree: Vec<Vec<Point<F>>> = Vec::new();
            let mut close: Vec<Vec<Point<F>>> = Vec::new();
            for p in k1.top_simplexes() {
                let vals: Vec<F> = p
                    .vertices()
                    .iter()
                    .map(|v| member_difference(&members[i], &members[j], v))
                    .collect();
                agree.extend(affine_between_pieces(p.vertices(), &vals, &zero, &zero));
                close.extend(affine_between_pieces(p.vertices(), &vals, &neg, &eps0));
            }
            if !agree.is_empty() {
                subsets2.push(agree);
            }
            if !close.is_empty() {
                subsets2.push(close);
            }
        }
    }
    // Identical unions (e.g. agreement sets shared by several member
    // pairs) only need to be respected once.
    for u in &mut subsets2 {
        for p in u.iter_mut() {
            p.sort();
        }
        u.sort();
    }
    subsets2.sort();
    subsets2.dedup();
    eprintln!("[vt] n={n} rec2 start subsets={}", subsets2.len());
    let rec2 = triangulate_union(&x_pieces, &subsets2)?;
    let k2 = rec2.complex().base().clone();

    let mut rebased: Vec<PLMap<F>> = Vec::new();
    for m in &members {
        let mut table: Vec<(Point<F>, Point<F>)> = Vec::new();
        for v in k2.vertices() {
            let value = m.evaluate(&v)?;
            table.push((v, value));
        }
        rebased.push(PLMap::new(k2.clone(), 1, &table)?);
    }

    let t2 = VTriangulation::identity(rec2.complex().clone())?;
    eprintln!("[vt] n={n} star start k2-verts={}", k2.vertices().len());
    let (t3, mf) = enforce_star_conditions(&t2, &rebased, DEFAULT_MAX_SUBDIVISIONS)?;
    eprintln!("[vt] n={n} lift start");
    let lifted = lift_triangulation(&t3, &mf)?;

    // Restrict the lift to the subcomplex carrying the (sheared) input and
    // certify the carrier matches exactly, then undo the shear.
    let sheared_hulls: Vec<Vec<Point<F>>> =
        sheared.iter().flat_map(|p| hull_simplexes(p)).collect();
    eprintln!("[vt] n={n} restrict start L-tops={}", lifted.map().domain().top_simplexes().len());
    let ly = lifted
        .map()
        .domain()
        .filter_subcomplex(|s| point_in_union(&sheared_hulls, &s.interior_point()));
    if ly.is_empty() {
        return Err(Error::VerificationFailed(
            "no lifted simplex lies over the input".into(),
        ));
    }
    if !union_set_equal(&ly.carrier(), &sheared) {
        return Err(Error::VerificationFailed(
            "the lifted simplexes over the input do not union to it".into(),
        ));
    }
    let k_final = sh.apply_complex_inverse(&ly)?;
    VTriangulation::identity(VComplex::new(k_final)?)
}
