//! Vertical cell decomposition: partition the projection of a closed
//! bounded simplex union into relatively open cells over which the input is
//! a stack of strictly sorted affine function graphs and the open bands
//! between them, with every graph and band wholly inside or disjoint from
//! each marked subset.

use crate::error::{Error, Result};
use crate::exactlin::{
    affine_rank, barycentric_coordinates, clip_by_halfspace, combine, dot, hull_simplexes,
    point_in_union, rank, solve, Barycentric, Point,
};
use crate::scalar::Scalar;
use crate::simplicial::Complex;

/// Rounds of exact refinement (splitting cells along discovered crossing
/// loci) before the decomposition gives up.
const MAX_REFINEMENT_ROUNDS: usize = 32;

/// An affine function on a cell, recorded by its values at the cell's
/// closure vertices (which determine it on the cell's affine hull).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFunction<T> {
    values: Vec<T>,
}

impl<T: Scalar> CellFunction<T> {
    /// Values at the owning cell's closure vertices, in closure order.
    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// A relatively open polyhedral cell in the projection, with its sorted
/// stack of affine functions and the subset markings of their graphs and
/// of the open bands between consecutive graphs.
#[derive(Debug, Clone)]
pub struct Cell<T> {
    dim: usize,
    closure: Vec<Point<T>>,
    sample: Point<T>,
    functions: Vec<CellFunction<T>>,
    band_in_y: Vec<bool>,
    graph_marks: Vec<Vec<bool>>,
    band_marks: Vec<Vec<bool>>,
}

impl<T: Scalar> Cell<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices of the cell's closure (a convex polytope), canonical form:
    /// extreme points only, sorted.
    pub fn closure(&self) -> &[Point<T>] {
        &self.closure
    }

    /// A point in the cell's relative interior (the closure centroid).
    pub fn sample(&self) -> &[T] {
        &self.sample
    }

    /// The stack `f_1 < ... < f_l`, strictly sorted on the cell.
    pub fn functions(&self) -> &[CellFunction<T>] {
        &self.functions
    }

    /// Whether the open band between graphs `j` and `j+1` lies in the input.
    pub fn band_in_y(&self, j: usize) -> bool {
        self.band_in_y[j]
    }

    /// Whether graph `j` lies in marked subset `i`.
    pub fn graph_in_subset(&self, i: usize, j: usize) -> bool {
        self.graph_marks[i][j]
    }

    /// Whether the open band between graphs `j` and `j+1` lies in subset `i`.
    pub fn band_in_subset(&self, i: usize, j: usize) -> bool {
        self.band_marks[i][j]
    }

    /// Evaluate function `j` at a point of the cell's affine hull.
    pub fn evaluate_function(&self, j: usize, x: &[T]) -> Result<T> {
        let idx = independent_subset(&self.closure);
        let sub: Vec<Point<T>> = idx.iter().map(|&i| self.closure[i].clone()).collect();
        let coords = match barycentric_coordinates(&sub, x)? {
            Barycentric::Inside(c) => c,
            Barycentric::Negative { coords, .. } => coords,
            Barycentric::OffSpan => return Err(Error::OutsideDomain),
        };
        let mut acc = T::zero();
        for (k, &i) in idx.iter().enumerate() {
            acc = acc.add(&coords[k].mul(&self.functions[j].values[i]));
        }
        Ok(acc)
    }
}

/// The full decomposition: cells partition the projection of the input.
#[derive(Debug, Clone)]
pub struct CellDecomposition<T> {
    proj_dim: usize,
    cells: Vec<Cell<T>>,
}

impl<T: Scalar> CellDecomposition<T> {
    /// Dimension of the projection space (input ambient dimension minus 1).
    pub fn proj_dim(&self) -> usize {
        self.proj_dim
    }

    pub fn cells(&self) -> &[Cell<T>] {
        &self.cells
    }
}

/// Decompose the carrier of a complex in `R^{n+1}` (last coordinate
/// vertical) over its projection to `R^n`, with marked subsets given as
/// simplex unions contained in the carrier.
pub fn vertical_decomposition<T: Scalar>(
    y: &Complex<T>,
    subsets: &[Vec<Vec<Point<T>>>],
) -> Result<CellDecomposition<T>> {
    let pieces: Vec<Vec<Point<T>>> = y
        .top_simplexes()
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect();
    decompose_union(&pieces, subsets)
}

fn proj<T: Clone>(p: &[T]) -> Point<T> {
    p[..p.len() - 1].to_vec()
}

fn proj_points<T: Clone>(piece: &[Point<T>]) -> Vec<Point<T>> {
    piece.iter().map(|p| proj(p)).collect()
}

fn centroid<T: Scalar>(points: &[Point<T>]) -> Point<T> {
    let w = T::one().div(&T::from_int(points.len() as i64));
    combine(points, &vec![w; points.len()])
}

/// Greedily pick a maximal affinely independent subset, by index.
fn independent_subset<T: Scalar>(points: &[Point<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = Vec::new();
    let mut chosen: Vec<Point<T>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        chosen.push(p.clone());
        if affine_rank(&chosen) + 1 == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Reduce a planar convex vertex list to its extreme points, sorted.
/// Monotone-chain hull with exact cross-product signs; collinear inputs
/// collapse to their two endpoints.
fn canonical_polytope<T: Scalar>(mut pts: Vec<Point<T>>) -> Vec<Point<T>> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    fn turns_right<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
        let cross = a[0]
            .sub(&o[0])
            .mul(&b[1].sub(&o[1]))
            .sub(&a[1].sub(&o[1]).mul(&b[0].sub(&o[0])));
        !cross.is_positive()
    }
    let mut hull: Vec<Point<T>> = Vec::new();
    for phase in 0..2 {
        let start = hull.len();
        let sweep: Vec<&Point<T>> = if phase == 0 {
            pts.iter().collect()
        } else {
            pts.iter().rev().collect()
        };
        for p in sweep {
            while hull.len() >= start + 2
                && turns_right(&hull[hull.len() - 2], &hull[hull.len() - 1], p)
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull.sort();
    hull
}

/// The fiber of a convex piece over a projection point, as a closed
/// interval of last coordinates; `None` when the fiber is empty.
pub(crate) fn fiber_interval<T: Scalar>(piece: &[Point<T>], x: &[T]) -> Option<(T, T)> {
    let n = x.len();
    let mut cur = piece.to_vec();
    for i in 0..n {
        let mut normal = vec![T::zero(); n + 1];
        normal[i] = T::one();
        cur = clip_by_halfspace(&cur, &normal, &x[i]);
        if cur.is_empty() {
            return None;
        }
        let neg: Vec<T> = normal.iter().map(|c| c.neg()).collect();
        cur = clip_by_halfspace(&cur, &neg, &x[i].neg());
        if cur.is_empty() {
            return None;
        }
    }
    let mut lo = cur[0][n].clone();
    let mut hi = lo.clone();
    for p in &cur[1..] {
        if p[n] < lo {
            lo = p[n].clone();
        }
        if p[n] > hi {
            hi = p[n].clone();
        }
    }
    Some((lo, hi))
}

struct StackEntry<T> {
    values: Vec<T>,
    sample_value: T,
}

enum StackResult<T> {
    Sorted(Vec<StackEntry<T>>),
    /// Difference vectors (at closure points) of entry pairs that change
    /// strict sign on the cell: the cell straddles a crossing locus.
    Conflicts(Vec<Vec<T>>),
}

/// Per-source data reused across every cell and refinement round.
struct SourceCtx<T> {
    piece: Vec<Point<T>>,
    /// Hull simplexes of the projection.
    shadow: Vec<Vec<Point<T>>>,
    /// Bounding box of the projection, for cheap rejection.
    bbox: Vec<(T, T)>,
    /// Memoized fiber intervals; closure points recur across cells.
    fibers: BTreeMap<Point<T>, Option<(T, T)>>,
}

impl<T: Scalar> SourceCtx<T> {
    fn new(piece: Vec<Point<T>>) -> Self {
        let ps = proj_points(&piece);
        let n = ps[0].len();
        let bbox = (0..n)
            .map(|i| {
                let mut lo = ps[0][i].clone();
                let mut hi = lo.clone();
                for p in &ps[1..] {
                    if p[i] < lo {
                        lo = p[i].clone();
                    }
                    if p[i] > hi {
                        hi = p[i].clone();
                    }
                }
                (lo, hi)
            })
            .collect();
        SourceCtx {
            shadow: hull_simplexes(&ps),
            bbox,
            piece,
            fibers: BTreeMap::new(),
        }
    }

    fn in_bbox(&self, x: &[T]) -> bool {
        self.bbox
            .iter()
            .enumerate()
            .all(|(i, (lo, hi))| x[i] >= *lo && x[i] <= *hi)
    }

    fn fiber(&mut self, x: &[T]) -> Option<(T, T)> {
        if let Some(v) = self.fibers.get(x) {
            return v.clone();
        }
        let v = fiber_interval(&self.piece, x);
        self.fibers.insert(x.to_vec(), v.clone());
        v
    }
}

fn build_stack<T: Scalar>(
    sources: &mut [SourceCtx<T>],
    closure: &[Point<T>],
    sample: &[T],
) -> Result<StackResult<T>> {
    let mut entries: Vec<StackEntry<T>> = Vec::new();
    for src in sources.iter_mut() {
        if !closure.iter().all(|p| src.in_bbox(p)) {
            continue;
        }
        if !closure.iter().all(|p| point_in_union(&src.shadow, p)) {
            continue;
        }
        let mut lo_vals = Vec::new();
        let mut hi_vals = Vec::new();
        for p in closure {
            let (lo, hi) = src
                .fiber(p)
                .ok_or_else(|| Error::BadDirection("empty fiber over a closure point".into()))?;
            lo_vals.push(lo);
            hi_vals.push(hi);
        }
        let (lo_s, hi_s) = src
            .fiber(sample)
            .ok_or_else(|| Error::BadDirection("empty fiber over a cell sample".into()))?;
        let two_branches = lo_vals != hi_vals || lo_s != hi_s;
        entries.push(StackEntry {
            values: lo_vals,
            sample_value: lo_s,
        });
        if two_branches {
            entries.push(StackEntry {
                values: hi_vals,
                sample_value: hi_s,
            });
        }
    }
    // Each branch must be affine on the cell: since the sample is the
    // closure centroid, the affine value there is the plain mean.
    let card = T::from_int(closure.len() as i64);
    for e in &entries {
        let mut sum = T::zero();
        for v in &e.values {
            sum = sum.add(v);
        }
        if sum.div(&card) != e.sample_value {
            return Err(Error::BadDirection(
                "a fiber envelope is not affine on a cell".into(),
            ));
        }
    }
    let mut distinct: Vec<StackEntry<T>> = Vec::new();
    for e in entries {
        if !distinct.iter().any(|d| d.values == e.values) {
            distinct.push(e);
        }
    }
    let mut conflicts: Vec<Vec<T>> = Vec::new();
    for i in 0..distinct.len() {
        for j in i + 1..distinct.len() {
            let diffs: Vec<T> = distinct[j]
                .values
                .iter()
                .zip(&distinct[i].values)
                .map(|(a, b)| a.sub(b))
                .collect();
            if diffs.iter().any(|d| d.is_positive()) && diffs.iter().any(|d| d.is_negative()) {
                conflicts.push(diffs);
            }
        }
    }
    if !conflicts.is_empty() {
        return Ok(StackResult::Conflicts(conflicts));
    }
    distinct.sort_by(|a, b| a.sample_value.cmp(&b.sample_value));
    for w in distinct.windows(2) {
        if w[0].sample_value == w[1].sample_value {
            return Err(Error::BadDirection(
                "two distinct stack entries agree at a cell sample".into(),
            ));
        }
    }
    Ok(StackResult::Sorted(distinct))
}

/// Candidate cells for the current round: (dim, closure, sample).
type Candidates<T> = Vec<(usize, Vec<Point<T>>, Point<T>)>;

fn cells_1d<T: Scalar>(
    sources: &[Vec<Point<T>>],
    x_cover: &[Vec<Point<T>>],
    extra: &[T],
) -> Candidates<T> {
    let mut breaks: Vec<T> = extra.to_vec();
    for s in sources {
        for v in s {
            breaks.push(v[0].clone());
        }
    }
    breaks.sort();
    breaks.dedup();
    let mut out: Candidates<T> = Vec::new();
    for b in &breaks {
        if point_in_union(x_cover, std::slice::from_ref(b)) {
            out.push((0, vec![vec![b.clone()]], vec![b.clone()]));
        }
    }
    let half = T::from_ratio(1, 2);
    for w in breaks.windows(2) {
        let mid = w[0].add(&w[1]).mul(&half);
        if point_in_union(x_cover, &[mid.clone()]) {
            out.push((1, vec![vec![w[0].clone()], vec![w[1].clone()]], vec![mid]));
        }
    }
    out
}

/// A line in the plane in canonical form: normal scaled so its first
/// nonzero coefficient is 1.
type Line<T> = (Vec<T>, T);

fn canonical_line<T: Scalar>(normal: Vec<T>, offset: T) -> Option<Line<T>> {
    let lead = normal.iter().find(|c| !c.is_zero())?.clone();
    Some((
        normal.iter().map(|c| c.div(&lead)).collect(),
        offset.div(&lead),
    ))
}

fn arrangement_lines<T: Scalar>(sources: &[Vec<Point<T>>], extra: &[Line<T>]) -> Vec<Line<T>> {
    let mut lines: Vec<Line<T>> = extra.to_vec();
    for s in sources {
        let ps = proj_points(s);
        // Vertices of a full-dimensional projection are pinned by the
        // crossings of its own pair lines; lower-dimensional projections
        // need explicit coordinate lines through their vertices.
        if affine_rank(&ps) < 2 {
            for v in &ps {
                lines.push((vec![T::one(), T::zero()], v[0].clone()));
                lines.push((vec![T::zero(), T::one()], v[1].clone()));
            }
        }
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let (a, b) = (&ps[i], &ps[j]);
                let normal = vec![a[1].sub(&b[1]), b[0].sub(&a[0])];
                let offset = dot(&normal, a);
                if let Some(l) = canonical_line(normal, offset) {
                    lines.push(l);
                }
            }
        }
    }
    lines.sort();
    lines.dedup();
    lines
}

fn cells_2d<T: Scalar>(
    sources: &[Vec<Point<T>>],
    x_cover: &[Vec<Point<T>>],
    extra: &[Line<T>],
) -> Candidates<T> {
    let lines = arrangement_lines(sources, extra);
    eprintln!("[vt] cells_2d lines={}", lines.len());
    let mut out: Candidates<T> = Vec::new();
    // Full-dimensional cells: fragment each full-rank projected piece along
    // every line that strictly separates it; final fragments are exactly
    // the closures of the arrangement faces inside the piece.
    let mut frags: Vec<Vec<Point<T>>> = Vec::new();
    for s in sources {
        let ps = proj_points(s);
        if affine_rank(&ps) == 2 {
            split_fragment(ps, &lines, 0, &mut frags);
        }
    }
    eprintln!("[vt] cells_2d frags={}", frags.len());
    let mut seen: Vec<Vec<Point<T>>> = Vec::new();
    for f in frags {
        let c = canonical_polytope(f);
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    for c in seen {
        let sample = centroid(&c);
        out.push((2, c, sample));
    }
    eprintln!("[vt] cells_2d two-cells={}", out.len());
    // Edge and vertex cells along each line, cut at all crossings with the
    // other lines.
    let half = T::from_ratio(1, 2);
    let mut verts: Vec<Point<T>> = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let mut pts: Vec<(T, Point<T>)> = Vec::new();
        for (j, m) in lines.iter().enumerate() {
            if i == j || rank(&[l.0.clone(), m.0.clone()]) < 2 {
                continue;
            }
            if let Some(p) = solve(&[l.0.clone(), m.0.clone()], &[l.1.clone(), m.1.clone()]) {
                let dir = vec![l.0[1].neg(), l.0[0].clone()];
                pts.push((dot(&dir, &p), p));
            }
        }
        pts.sort();
        pts.dedup();
        for w in pts.windows(2) {
            if w[0].1 == w[1].1 {
                continue;
            }
            let mid: Vec<T> = w[0]
                .1
                .iter()
                .zip(&w[1].1)
                .map(|(a, b)| a.add(b).mul(&half))
                .collect();
            if point_in_union(x_cover, &mid) {
                let mut closure = vec![w[0].1.clone(), w[1].1.clone()];
                closure.sort();
                out.push((1, closure, mid));
            }
        }
        for (_, p) in pts {
            if !verts.contains(&p) {
                verts.push(p);
            }
        }
    }
    for p in verts {
        if point_in_union(x_cover, &p) {
            out.push((0, vec![p.clone()], p));
        }
    }
    out
}

fn split_fragment<T: Scalar>(
    poly: Vec<Point<T>>,
    lines: &[Line<T>],
    from: usize,
    out: &mut Vec<Vec<Point<T>>>,
) {
    for (i, (normal, offset)) in lines.iter().enumerate().skip(from) {
        let vals: Vec<T> = poly.iter().map(|p| dot(normal, p).sub(offset)).collect();
        if vals.iter().any(|v| v.is_positive()) && vals.iter().any(|v| v.is_negative()) {
            let neg: Vec<T> = normal.iter().map(|c| c.neg()).collect();
            let below = clip_by_halfspace(&poly, normal, offset);
            let above = clip_by_halfspace(&poly, &neg, &offset.neg());
            split_fragment(below, lines, i + 1, out);
            split_fragment(above, lines, i + 1, out);
            return;
        }
    }
    out.push(poly);
}

/// Crossing loci discovered during a round, to refine the arrangement.
struct Refinement<T> {
    breaks: Vec<T>,
    lines: Vec<Line<T>>,
}

fn conflict_locus<T: Scalar>(
    n: usize,
    closure: &[Point<T>],
    diffs: &[T],
    refinement: &mut Refinement<T>,
) -> Result<()> {
    let dim = affine_rank(closure);
    match (n, dim) {
        (1, 1) => {
            // Crossing of two affine functions on an interval [a, b].
            let (a, b) = (&closure[0][0], &closure[1][0]);
            let t = diffs[0].div(&diffs[0].sub(&diffs[1]));
            refinement.breaks.push(a.add(&t.mul(&b.sub(a))));
        }
        (2, 1) => {
            // Crossing point on a segment: pin it with both coordinate
            // lines so it becomes an arrangement vertex on any line.
            let t = diffs[0].div(&diffs[0].sub(&diffs[1]));
            let z: Vec<T> = closure[0]
                .iter()
                .zip(&closure[1])
                .map(|(a, b)| a.add(&t.mul(&b.sub(a))))
                .collect();
            refinement
                .lines
                .push((vec![T::one(), T::zero()], z[0].clone()));
            refinement
                .lines
                .push((vec![T::zero(), T::one()], z[1].clone()));
        }
        (2, 2) => {
            // The difference is affine on the plane; its zero set is a line.
            let idx = independent_subset(closure);
            let rows: Vec<Vec<T>> = idx
                .iter()
                .map(|&i| {
                    vec![
                        closure[i][0].clone(),
                        closure[i][1].clone(),
                        T::one(),
                    ]
                })
                .collect();
            let rhs: Vec<T> = idx.iter().map(|&i| diffs[i].clone()).collect();
            let abc = solve(&rows, &rhs).ok_or_else(|| {
                Error::BadDirection("cannot fit a crossing line on a cell".into())
            })?;
            let line = canonical_line(vec![abc[0].clone(), abc[1].clone()], abc[2].neg())
                .ok_or_else(|| {
                    Error::BadDirection("constant nonzero difference cannot change sign".into())
                })?;
            refinement.lines.push(line);
        }
        _ => {
            return Err(Error::BadDirection(
                "stack conflict on a vertex cell".into(),
            ))
        }
    }
    Ok(())
}

/// Decompose a simplex union given directly by convex vertex lists.
pub(crate) fn decompose_union<T: Scalar>(
    pieces: &[Vec<Point<T>>],
    subsets: &[Vec<Vec<Point<T>>>],
) -> Result<CellDecomposition<T>> {
    if pieces.is_empty() {
        return Err(Error::EmptySet);
    }
    let ambient = pieces[0][0].len();
    if ambient < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: ambient,
        });
    }
    let n = ambient - 1;
    if n > 2 {
        return Err(Error::ResourceLimit {
            what: format!("vertical decomposition over a {n}-dimensional projection"),
        });
    }
    for p in pieces.iter().chain(subsets.iter().flatten()) {
        if p.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.iter().map(|v| v.len()).find(|&l| l != ambient).unwrap(),
            });
        }
    }
    let mut sources: Vec<Vec<Point<T>>> = pieces.to_vec();
    for u in subsets {
        sources.extend(u.iter().cloned());
    }
    let x_cover: Vec<Vec<Point<T>>> = pieces
        .iter()
        .flat_map(|p| hull_simplexes(&proj_points(p)))
        .collect();
    let y_hulls: Vec<Vec<Point<T>>> = pieces.iter().flat_map(|p| hull_simplexes(p)).collect();
    let subset_hulls: Vec<Vec<Vec<Point<T>>>> = subsets
        .iter()
        .map(|u| u.iter().flat_map(|p| hull_simplexes(p)).collect())
        .collect();

    for s in &mut sources {
        s.sort();
        s.dedup();
    }
    sources.sort();
    sources.dedup();
    let mut contexts: Vec<SourceCtx<T>> = sources.iter().cloned().map(SourceCtx::new).collect();
    let mut extra = Refinement {
        breaks: Vec::new(),
        lines: Vec::new(),
    };
    for _ in 0..MAX_REFINEMENT_ROUNDS {
        let cand = if n == 1 {
            cells_1d(&sources, &x_cover, &extra.breaks)
        } else {
            cells_2d(&sources, &x_cover, &extra.lines)
        };
        let mut refinement = Refinement {
            breaks: Vec::new(),
            lines: Vec::new(),
        };
        eprintln!("[vt] stacking cand={}", cand.len());
        let mut stacked: Vec<(usize, Vec<Point<T>>, Point<T>, Vec<StackEntry<T>>)> = Vec::new();
        for (ci, (dim, closure, sample)) in cand.into_iter().enumerate() {
            if ci % 50 == 0 {
                eprintln!("[vt] stack {ci}");
            }
            match build_stack(&sources, &source_shadows, &closure, &sample)? {
                StackResult::Sorted(entries) => stacked.push((dim, closure, sample, entries)),
                StackResult::Conflicts(list) => {
                    for diffs in list {
                        conflict_locus(n, &closure, &diffs, &mut refinement)?;
                    }
                }
            }
        }
        if !refinement.breaks.is_empty() || !refinement.lines.is_empty() {
            let before = (extra.breaks.len(), extra.lines.len());
            extra.breaks.extend(refinement.breaks);
            extra.breaks.sort();
            extra.breaks.dedup();
            let mut lines: Vec<Line<T>> = refinement
                .lines
                .into_iter()
                .filter_map(|(nrm, off)| canonical_line(nrm, off))
                .collect();
            extra.lines.append(&mut lines);
            extra.lines.sort();
            extra.lines.dedup();
            if (extra.breaks.len(), extra.lines.len()) == before {
                return Err(Error::BadDirection(
                    "crossing refinement stalled without progress".into(),
                ));
            }
            continue;
        }
        stacked.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut cells: Vec<Cell<T>> = Vec::new();
        for (dim, closure, sample, entries) in stacked {
            let cell = finish_cell(
                pieces, &y_hulls, &subset_hulls, dim, closure, sample, entries,
            )?;
            cells.push(cell);
        }
        return Ok(CellDecomposition { proj_dim: n, cells });
    }
    Err(Error::ResourceLimit {
        what: format!("cell refinement did not settle in {MAX_REFINEMENT_ROUNDS} rounds"),
    })
}

fn finish_cell<T: Scalar>(
    pieces: &[Vec<Point<T>>],
    y_hulls: &[Vec<Point<T>>],
    subset_hulls: &[Vec<Vec<Point<T>>>],
    dim: usize,
    closure: Vec<Point<T>>,
    sample: Point<T>,
    entries: Vec<StackEntry<T>>,
) -> Result<Cell<T>> {
    let half = T::from_ratio(1, 2);
    let graph_point = |v: &T| -> Point<T> {
        let mut p = sample.clone();
        p.push(v.clone());
        p
    };
    let mut band_in_y = Vec::new();
    for w in entries.windows(2) {
        let mid = w[0].sample_value.add(&w[1].sample_value).mul(&half);
        band_in_y.push(point_in_union(y_hulls, &graph_point(&mid)));
    }
    let mut graph_marks = Vec::new();
    let mut band_marks = Vec::new();
    for hulls in subset_hulls {
        graph_marks.push(
            entries
                .iter()
                .map(|e| point_in_union(hulls, &graph_point(&e.sample_value)))
                .collect(),
        );
        band_marks.push(
            entries
                .windows(2)
                .map(|w| {
                    let mid = w[0].sample_value.add(&w[1].sample_value).mul(&half);
                    point_in_union(hulls, &graph_point(&mid))
                })
                .collect(),
        );
    }
    // Certify the stack captures the input's fiber over the sample exactly.
    let mut piece_ivals: Vec<(T, T)> = Vec::new();
    for p in pieces {
        if point_in_union(&hull_simplexes(&proj_points(p)), &sample) {
            piece_ivals.push(fiber_interval(p, &sample).ok_or_else(|| {
                Error::BadDirection("empty fiber over a covered sample".into())
            })?);
        }
    }
    piece_ivals.sort();
    let merged = merge_intervals(piece_ivals);
    let mut marked: Vec<(T, T)> = Vec::new();
    let mut cur = (
        entries[0].sample_value.clone(),
        entries[0].sample_value.clone(),
    );
    for (j, e) in entries.iter().enumerate().skip(1) {
        if band_in_y[j - 1] {
            cur.1 = e.sample_value.clone();
        } else {
            marked.push(cur);
            cur = (e.sample_value.clone(), e.sample_value.clone());
        }
    }
    marked.push(cur);
    if merged != marked {
        return Err(Error::BadDirection(
            "graphs and bands do not cover the input fiber over a cell".into(),
        ));
    }
    Ok(Cell {
        dim,
        closure,
        sample,
        functions: entries
            .into_iter()
            .map(|e| CellFunction { values: e.values })
            .collect(),
        band_in_y,
        graph_marks,
        band_marks,
    })
}

fn merge_intervals<T: Scalar>(sorted: Vec<(T, T)>) -> Vec<(T, T)> {
    let mut out: Vec<(T, T)> = Vec::new();
    for (lo, hi) in sorted {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}
