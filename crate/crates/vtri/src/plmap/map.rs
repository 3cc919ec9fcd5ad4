//! Piecewise-affine maps on complexes: one image per vertex of the domain
//! complex, interpolated barycentrically on each simplex. Continuity is
//! structural (shared faces share vertex images), and the induced map over
//! the residue field exists iff vertex images are st-coherent.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{
    barycentric_coordinates, combine, nullspace, sub_points, Barycentric, Point,
};
use crate::scalar::{FieldElement, Scalar};
use crate::simplicial::{format_point, validate_complex, Complex, Simplex, VComplex};

/// A simplexwise-affine map `|domain| -> R^codomain_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap<T> {
    domain: Complex<T>,
    codomain_dim: usize,
    /// Image of each domain vertex, aligned with `domain.vertices()`.
    images: Vec<Point<T>>,
}

impl<T: Scalar> PLMap<T> {
    /// Build from a vertex-image table. Every domain vertex must receive
    /// exactly one image of the stated codomain dimension.
    pub fn new(
        domain: Complex<T>,
        codomain_dim: usize,
        table: &[(Point<T>, Point<T>)],
    ) -> Result<PLMap<T>> {
        let verts = domain.vertices();
        let mut images = Vec::with_capacity(verts.len());
        for v in &verts {
            let mut found = None;
            for (a, b) in table {
                if a == v {
                    if found.is_some() {
                        return Err(Error::PreconditionViolation(format!(
                            "duplicate image for vertex {}",
                            format_point(v)
                        )));
                    }
                    found = Some(b.clone());
                }
            }
            let Some(img) = found else {
                return Err(Error::PreconditionViolation(format!(
                    "no image for vertex {}",
                    format_point(v)
                )));
            };
            if img.len() != codomain_dim {
                return Err(Error::DimensionMismatch {
                    expected: codomain_dim,
                    got: img.len(),
                });
            }
            images.push(img);
        }
        Ok(PLMap { domain, codomain_dim, images })
    }

    /// The identity map on a complex.
    pub fn identity(domain: Complex<T>) -> PLMap<T> {
        let images = domain.vertices();
        let codomain_dim = if domain.is_empty() {
            0
        } else {
            domain.ambient_dim()
        };
        PLMap { domain, codomain_dim, images }
    }

    pub fn domain(&self) -> &Complex<T> {
        &self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn image_of_vertex(&self, v: &Point<T>) -> Option<&Point<T>> {
        let verts = self.domain.vertices();
        verts
            .iter()
            .position(|w| w == v)
            .map(|i| &self.images[i])
    }

    pub fn vertex_table(&self) -> Vec<(Point<T>, Point<T>)> {
        self.domain
            .vertices()
            .into_iter()
            .zip(self.images.iter().cloned())
            .collect()
    }

    /// Image vertex list of one domain simplex.
    pub fn simplex_images(&self, s: &Simplex<T>) -> Vec<Point<T>> {
        s.vertices()
            .iter()
            .map(|v| self.image_of_vertex(v).expect("domain vertex").clone())
            .collect()
    }

    pub fn evaluate(&self, x: &[T]) -> Result<Point<T>> {
        for s in self.domain.top_simplexes() {
            if let Ok(Barycentric::Inside(t)) = barycentric_coordinates(s.vertices(), x) {
                return Ok(combine(&self.simplex_images(s), &t));
            }
        }
        Err(Error::OutsideDomain)
    }

    /// Composition `other(self(x))`. Requires each domain simplex's image
    /// to land inside a single simplex of `other`'s domain, so that the
    /// composite stays affine per simplex.
    pub fn compose(&self, other: &PLMap<T>) -> Result<PLMap<T>> {
        let mut table = Vec::new();
        for (v, img) in self.vertex_table() {
            table.push((v, other.evaluate(&img)?));
        }
        for s in self.domain.top_simplexes() {
            let images = self.simplex_images(s);
            let inside_one = other.domain.top_simplexes().iter().any(|t| {
                images
                    .iter()
                    .all(|p| matches!(barycentric_coordinates(t.vertices(), p), Ok(Barycentric::Inside(_))))
            });
            if !inside_one {
                return Err(Error::PreconditionViolation(format!(
                    "image of {s} is not contained in a single simplex of the outer domain"
                )));
            }
        }
        PLMap::new(self.domain.clone(), other.codomain_dim, &table)
    }

    /// Restriction to a subcomplex of the domain.
    pub fn restrict(&self, sub: &Complex<T>) -> Result<PLMap<T>> {
        if !sub.is_subcomplex_of(&self.domain) {
            return Err(Error::PreconditionViolation(
                "restriction target is not a subcomplex of the domain".into(),
            ));
        }
        let table: Vec<(Point<T>, Point<T>)> = sub
            .vertices()
            .into_iter()
            .map(|v| {
                let img = self.image_of_vertex(&v).expect("subcomplex vertex").clone();
                (v, img)
            })
            .collect();
        PLMap::new(sub.clone(), self.codomain_dim, &table)
    }

    /// The image complex `{f(S): S in domain}`; errors if some image
    /// degenerates or the images fail the complex conditions.
    pub fn image_complex(&self) -> Result<Complex<T>> {
        let mut tops = Vec::new();
        for s in self.domain.top_simplexes() {
            tops.push(Simplex::new(self.simplex_images(s))?);
        }
        validate_complex(&tops)
    }

    /// Exact inverse of a simplexwise-affine bijection onto a complex. On
    /// failure returns a witness pair of distinct points with one image.
    pub fn invert(&self) -> Result<PLMap<T>> {
        // Vertex-image collisions give immediate witnesses.
        let table = self.vertex_table();
        for i in 0..table.len() {
            for j in i + 1..table.len() {
                if table[i].1 == table[j].1 {
                    return Err(Error::NotInvertible {
                        x: format_point(&table[i].0),
                        y: format_point(&table[j].0),
                        image: format_point(&table[i].1),
                    });
                }
            }
        }
        // Per-simplex degeneracy: a kernel direction yields two interior
        // points with the same image.
        for s in self.domain.top_simplexes() {
            let images = self.simplex_images(s);
            if let Some((x, y)) = affine_kernel_witness(s, &images) {
                let image = combine(
                    &images,
                    &match barycentric_coordinates(s.vertices(), &x)? {
                        Barycentric::Inside(t) => t,
                        _ => unreachable!("witness lies in the simplex"),
                    },
                );
                return Err(Error::NotInvertible {
                    x: format_point(&x),
                    y: format_point(&y),
                    image: format_point(&image),
                });
            }
        }
        let image = self.image_complex().map_err(|e| match e {
            Error::IntersectionViolation { witness, .. } => Error::NotInvertible {
                x: "two overlapping image simplexes".into(),
                y: "(see witness)".into(),
                image: witness,
            },
            other => other,
        })?;
        let table: Vec<(Point<T>, Point<T>)> = self
            .vertex_table()
            .into_iter()
            .map(|(a, b)| (b, a))
            .collect();
        PLMap::new(image, self.domain.ambient_dim(), &table)
    }
}

/// If the affine map determined on `s` by `images` is not injective, return
/// two distinct points of `s` with equal image.
fn affine_kernel_witness<T: Scalar>(
    s: &Simplex<T>,
    images: &[Point<T>],
) -> Option<(Point<T>, Point<T>)> {
    if s.dim() == 0 {
        return None;
    }
    let diffs: Vec<Vec<T>> = images[1..]
        .iter()
        .map(|p| sub_points(p, &images[0]))
        .collect();
    // Kernel vector w over the barycentric difference coordinates.
    let w = nullspace(&transpose(&diffs)).into_iter().next()?;
    // Domain direction sum w_i (v_{i+1} - v_0).
    let n = s.ambient_dim();
    let mut dir = vec![T::zero(); n];
    for (wi, v) in w.iter().zip(&s.vertices()[1..]) {
        let d = sub_points(v, &s.vertices()[0]);
        for (o, c) in dir.iter_mut().zip(&d) {
            *o = o.add(&wi.mul(c));
        }
    }
    let x = s.interior_point();
    let mut step = T::one();
    for _ in 0..64 {
        let y: Point<T> = x
            .iter()
            .zip(&dir)
            .map(|(a, d)| a.add(&step.mul(d)))
            .collect();
        if y != x && s.contains(&y) {
            return Some((x, y));
        }
        step = step.div(&T::from_int(2));
    }
    // The direction is nonzero, so halving must eventually land inside.
    unreachable!("kernel direction failed to produce an interior witness")
}

fn transpose<T: Scalar>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// The induced map over the residue field: exists iff vertex images are
/// st-coherent (st-equal vertices have st-equal images); then it is the
/// simplexwise-affine map on st(domain) determined by the st of the vertex
/// table. Soundness: barycentric weights have finite standard parts that
/// sum class-wise, so st(f(x)) = g(st(x)) pointwise.
pub fn induced_map(f: &PLMap<FieldElement>) -> Result<PLMap<BigRational>> {
    let v = VComplex::new(f.domain.clone())?;
    let table = f.vertex_table();
    let mut st_table: Vec<(Point<BigRational>, Point<BigRational>)> = Vec::new();
    for (a, fa) in &table {
        let sa: Point<BigRational> = a.iter().map(|c| c.standard_part()).collect::<Result<_>>()?;
        let sfa: Point<BigRational> =
            fa.iter().map(|c| c.standard_part()).collect::<Result<_>>()?;
        if let Some((b, fb)) = st_table.iter().find(|(b, _)| *b == sa) {
            if *fb != sfa {
                // Recover the original witness pair for the error.
                let (orig, orig_img) = table
                    .iter()
                    .find(|(c, fc)| {
                        let sc: Point<BigRational> =
                            c.iter().map(|x| x.standard_part().unwrap()).collect();
                        let sfc: Point<BigRational> =
                            fc.iter().map(|x| x.standard_part().unwrap()).collect();
                        sc == *b && sfc == *fb
                    })
                    .expect("class representative");
                return Err(Error::NotInduced {
                    a: format_point(orig),
                    b: format_point(a),
                    fa: format_point(orig_img),
                    fb: format_point(fa),
                });
            }
        } else {
            st_table.push((sa, sfa));
        }
    }
    PLMap::new(v.st_complex().clone(), f.codomain_dim, &st_table)
}
