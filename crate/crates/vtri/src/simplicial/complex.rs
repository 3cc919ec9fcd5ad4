//! Face-closed simplicial complexes with the exact pairwise intersection
//! condition: any two members meet in a common face (possibly empty).

use crate::error::{Error, Result};
use crate::exactlin::{combine, lp_solve, LPOutcome, Point, Polyhedron};
use crate::scalar::Scalar;

use super::simplex::{format_point, Simplex};

/// A validated complex. Construct through [`validate_complex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex<T> {
    simplexes: Vec<Simplex<T>>,
}

impl<T: Scalar> Complex<T> {
    pub fn simplexes(&self) -> &[Simplex<T>] {
        &self.simplexes
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simplexes[0].ambient_dim()
    }

    /// Dimension of the highest simplex.
    pub fn dim(&self) -> usize {
        self.simplexes.iter().map(|s| s.dim()).max().unwrap_or(0)
    }

    /// Distinct vertices, lexicographically sorted.
    pub fn vertices(&self) -> Vec<Point<T>> {
        let mut out: Vec<Point<T>> = Vec::new();
        for s in &self.simplexes {
            for v in s.vertices() {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn has_simplex(&self, s: &Simplex<T>) -> bool {
        let key = s.key();
        self.simplexes.iter().any(|t| t.key() == key)
    }

    /// Simplexes that are not proper faces of another member.
    pub fn top_simplexes(&self) -> Vec<&Simplex<T>> {
        self.simplexes
            .iter()
            .filter(|s| {
                !self
                    .simplexes
                    .iter()
                    .any(|t| t.dim() > s.dim() && s.is_face_of(t))
            })
            .collect()
    }

    /// `|K|` as a union of simplex vertex lists.
    pub fn carrier(&self) -> Vec<Vec<Point<T>>> {
        self.top_simplexes()
            .into_iter()
            .map(|s| s.vertices().to_vec())
            .collect()
    }

    pub fn contains_point(&self, x: &[T]) -> bool {
        self.simplexes.iter().any(|s| s.contains(x))
    }

    /// True if every member of `self` is a member of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex<T>) -> bool {
        self.simplexes.iter().all(|s| other.has_simplex(s))
    }

    /// The subcomplex of all members whose vertex set passes `keep`.
    pub fn filter_subcomplex(&self, keep: impl Fn(&Simplex<T>) -> bool) -> Complex<T> {
        let members: Vec<Simplex<T>> = self
            .simplexes
            .iter()
            .filter(|s| keep(s))
            .cloned()
            .collect();
        Complex { simplexes: members }
    }
}

/// Bounding box (per-coordinate min and max) of a simplex's vertices.
fn bbox<T: Scalar>(s: &Simplex<T>) -> (Point<T>, Point<T>) {
    let n = s.ambient_dim();
    let mut lo = s.vertices()[0].clone();
    let mut hi = lo.clone();
    for v in &s.vertices()[1..] {
        for d in 0..n {
            if v[d] < lo[d] {
                lo[d] = v[d].clone();
            }
            if v[d] > hi[d] {
                hi[d] = v[d].clone();
            }
        }
    }
    (lo, hi)
}

fn boxes_disjoint<T: Scalar>(a: &(Point<T>, Point<T>), b: &(Point<T>, Point<T>)) -> bool {
    a.0.iter().zip(&b.1).any(|(lo, hi)| *lo > *hi)
        || b.0.iter().zip(&a.1).any(|(lo, hi)| *lo > *hi)
}

/// Over the system `{(t,u): t,u >= 0, sum t = sum u = 1, sum t_i a_i = sum
/// u_j b_j}` describing `S intersect S'` in double barycentric coordinates,
/// maximize the weight of one vertex. A positive optimum exhibits an
/// intersection point giving positive weight to that vertex.
fn max_weight_in_intersection<T: Scalar>(
    s: &Simplex<T>,
    s2: &Simplex<T>,
    vertex: usize,
) -> Result<Option<(T, Point<T>)>> {
    let n = s.ambient_dim();
    let ms = s.vertices().len();
    let mt = s2.vertices().len();
    let nv = ms + mt;
    let mut p = Polyhedron::new(nv);
    for i in 0..nv {
        let mut e = vec![T::zero(); nv];
        e[i] = T::one();
        p.geq(e, T::zero());
    }
    let mut ones_t = vec![T::zero(); nv];
    let mut ones_u = vec![T::zero(); nv];
    for i in 0..ms {
        ones_t[i] = T::one();
    }
    for j in 0..mt {
        ones_u[ms + j] = T::one();
    }
    p.equality(ones_t, T::one());
    p.equality(ones_u, T::one());
    for d in 0..n {
        let mut row = vec![T::zero(); nv];
        for i in 0..ms {
            row[i] = s.vertices()[i][d].clone();
        }
        for j in 0..mt {
            row[ms + j] = s2.vertices()[j][d].neg();
        }
        p.equality(row, T::zero());
    }
    let mut obj = vec![T::zero(); nv];
    obj[vertex] = T::one();
    match lp_solve(&obj, &p)? {
        LPOutcome::Optimal { value, point } => {
            let t: Vec<T> = point[..ms].to_vec();
            let witness = combine(s.vertices(), &t);
            Ok(Some((value, witness)))
        }
        LPOutcome::Infeasible => Ok(None),
        LPOutcome::Unbounded => unreachable!("weights are bounded by 1"),
    }
}

/// Exact check that `S intersect S'` is the common face spanned by their
/// shared vertices: no intersection point may give positive barycentric
/// weight to a non-shared vertex of either simplex.
fn check_pair<T: Scalar>(s: &Simplex<T>, s2: &Simplex<T>) -> Result<()> {
    let violation = |witness: &[T]| Error::IntersectionViolation {
        left: s.to_string(),
        right: s2.to_string(),
        witness: format_point(witness),
    };
    for (a, b) in [(s, s2), (s2, s)] {
        for (i, v) in a.vertices().iter().enumerate() {
            if b.vertices().contains(v) {
                continue;
            }
            match max_weight_in_intersection(a, b, i)? {
                None => return Ok(()), // disjoint
                Some((value, witness)) => {
                    if value.is_positive() {
                        return Err(violation(&witness));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Close the input under faces and verify the pairwise intersection
/// condition exactly.
pub fn validate_complex<T: Scalar>(input: &[Simplex<T>]) -> Result<Complex<T>> {
    if input.is_empty() {
        return Ok(Complex { simplexes: Vec::new() });
    }
    let n = input[0].ambient_dim();
    for s in input {
        if s.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s.ambient_dim(),
            });
        }
    }
    let mut simplexes: Vec<Simplex<T>> = Vec::new();
    let mut keys: Vec<Vec<Point<T>>> = Vec::new();
    for s in input {
        for f in s.faces() {
            let key = f.key();
            if !keys.contains(&key) {
                keys.push(key);
                simplexes.push(f);
            }
        }
    }
    // Deterministic order: by dimension, then by sorted vertex key.
    let mut order: Vec<usize> = (0..simplexes.len()).collect();
    order.sort_by_key(|&i| (simplexes[i].dim(), simplexes[i].key()));
    let simplexes: Vec<Simplex<T>> = order.into_iter().map(|i| simplexes[i].clone()).collect();

    // Checking top pairs suffices: faces intersect inside the common face
    // of their tops, and two faces of one simplex always meet in the face
    // spanned by their shared vertices.
    let tops: Vec<usize> = (0..simplexes.len())
        .filter(|&i| {
            !simplexes
                .iter()
                .enumerate()
                .any(|(j, s)| j != i && simplexes[i].is_face_of(s))
        })
        .collect();
    let boxes: Vec<_> = tops.iter().map(|&i| bbox(&simplexes[i])).collect();
    for a in 0..tops.len() {
        for b in a + 1..tops.len() {
            if boxes_disjoint(&boxes[a], &boxes[b]) {
                continue;
            }
            check_pair(&simplexes[tops[a]], &simplexes[tops[b]])?;
        }
    }
    Ok(Complex { simplexes })
}
