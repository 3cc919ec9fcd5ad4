//! Simplexes with ordered, affinely independent vertex lists.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{
    affinely_independent_points, point_in_simplex, point_in_simplex_interior,
    simplex_interior_point, Point,
};
use crate::scalar::Scalar;

/// Render a point in the canonical literal grammar.
pub fn format_point<T: Scalar>(p: &[T]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

/// `[a_0, ..., a_m]` with affinely independent vertices; the vertex order is
/// significant and preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::PreconditionViolation(
                "a simplex needs at least one vertex".into(),
            ));
        }
        let n = vertices[0].len();
        for v in &vertices {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if !affinely_independent_points(&vertices) {
            return Err(Error::PreconditionViolation(format!(
                "vertices are affinely dependent: {}",
                vertices
                    .iter()
                    .map(|v| format_point(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    /// Dimension `m` of an `m`-simplex.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Identity key: the vertex set, sorted. Two simplexes are the same set
    /// iff their keys agree.
    pub fn key(&self) -> Vec<Point<T>> {
        let mut k = self.vertices.clone();
        k.sort();
        k
    }

    /// All nonempty faces (including the simplex itself), vertex order
    /// inherited from the parent.
    pub fn faces(&self) -> Vec<Simplex<T>> {
        let m = self.vertices.len();
        let mut out = Vec::with_capacity((1 << m) - 1);
        for mask in 1u64..(1u64 << m) {
            let verts: Vec<Point<T>> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i].clone())
                .collect();
            out.push(Simplex { vertices: verts });
        }
        out
    }

    pub fn proper_faces(&self) -> Vec<Simplex<T>> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim() < self.dim())
            .collect()
    }

    /// True if `self`'s vertex set is a subset of `other`'s.
    pub fn is_face_of(&self, other: &Simplex<T>) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
    }

    pub fn contains(&self, x: &[T]) -> bool {
        point_in_simplex(&self.vertices, x)
    }

    /// Membership in the open simplex `S^o`.
    pub fn contains_interior(&self, x: &[T]) -> bool {
        point_in_simplex_interior(&self.vertices, x)
    }

    /// The barycenter.
    pub fn interior_point(&self) -> Point<T> {
        simplex_interior_point(&self.vertices)
    }
}

impl Simplex<crate::scalar::FieldElement> {
    /// All vertex coordinates finite.
    pub fn is_v_bounded(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|c| c.is_finite()))
    }
}

impl<T: Scalar> fmt::Display for Simplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self.vertices.iter().map(|v| format_point(v)).collect();
        write!(f, "[{}]", verts.join(", "))
    }
}
