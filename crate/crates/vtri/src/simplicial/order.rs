//! Simplicial sequences and V-simplex vertex orders: enumerations of a
//! V-simplex's vertices whose st-sequence is simplicial, i.e. constant on
//! index blocks with affinely independent block representatives.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{affinely_independent_points, vertex_list_st, Point};
use crate::scalar::FieldElement;

use super::simplex::{format_point, Simplex};

/// Decide whether a point sequence is simplicial and return the block start
/// indices `i_0 = 0 < i_1 < ... < i_k` when it is. Block constancy forces
/// the blocks to be the maximal runs of equal consecutive points, so the
/// witness is unique.
pub fn is_simplicial_sequence<T: crate::scalar::Scalar>(
    points: &[Point<T>],
) -> Option<Vec<usize>> {
    if points.is_empty() {
        return None;
    }
    let mut starts = vec![0usize];
    for i in 1..points.len() {
        if points[i] != points[starts[starts.len() - 1]] {
            starts.push(i);
        }
    }
    let reps: Vec<Point<T>> = starts.iter().map(|&i| points[i].clone()).collect();
    if affinely_independent_points(&reps) {
        Some(starts)
    } else {
        None
    }
}

/// A V-simplex with vertices enumerated so that the st-sequence is
/// simplicial; `blocks` holds the start index of each st-class.
#[derive(Debug, Clone)]
pub struct VSimplexOrder {
    pub vertices: Vec<Point<FieldElement>>,
    pub blocks: Vec<usize>,
}

impl VSimplexOrder {
    /// Number of st-classes minus one (the `k` of the order).
    pub fn k(&self) -> usize {
        self.blocks.len() - 1
    }

    /// The half-open index range of block `j`.
    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        let end = if j + 1 < self.blocks.len() {
            self.blocks[j + 1]
        } else {
            self.vertices.len()
        };
        self.blocks[j]..end
    }

    pub fn simplex(&self) -> Result<Simplex<FieldElement>> {
        Simplex::new(self.vertices.clone())
    }
}

/// Order the vertices of a V-bounded simplex by st-class (classes sorted
/// lexicographically by st-coordinates, vertices lexicographically within a
/// class) and verify the class representatives are affinely independent.
pub fn v_simplex_order(s: &Simplex<FieldElement>) -> Result<VSimplexOrder> {
    if !s.is_v_bounded() {
        return Err(Error::NotFinite);
    }
    let st_verts = vertex_list_st(s.vertices())?;
    let mut classes: Vec<(Point<BigRational>, Vec<Point<FieldElement>>)> = Vec::new();
    for (v, sv) in s.vertices().iter().zip(&st_verts) {
        match classes.iter_mut().find(|(c, _)| c == sv) {
            Some((_, members)) => members.push(v.clone()),
            None => classes.push((sv.clone(), vec![v.clone()])),
        }
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    let reps: Vec<Point<BigRational>> = classes.iter().map(|(c, _)| c.clone()).collect();
    if !affinely_independent_points(&reps) {
        return Err(Error::NotVSimplex {
            witness: format!(
                "st-class representatives are affinely dependent: {}",
                reps.iter()
                    .map(|v| format_point(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }
    let mut vertices = Vec::with_capacity(s.vertices().len());
    let mut blocks = Vec::with_capacity(classes.len());
    for (_, mut members) in classes {
        members.sort();
        blocks.push(vertices.len());
        vertices.extend(members);
    }
    Ok(VSimplexOrder { vertices, blocks })
}
