//! Exact linear algebra, linear programming, polyhedral primitives, and the
//! sup-metric / Hausdorff-distance machinery, generic over [`Scalar`].
//!
//! [`Scalar`]: crate::scalar::Scalar

mod distance;
mod linalg;
mod lp;
mod polyhedron;
mod sets;

pub use distance::{
    directed_hausdorff, distance_pieces, eval_piece, hausdorff_distance, sup_distance,
    sup_distance_to_set, sup_distance_to_union,
};
pub use linalg::{
    add_points, affine_rank, affinely_independent_points, combine, dot, nullspace, rank,
    row_reduce, scale_point, solve, sub_points, Point,
};
pub use lp::{lp_solve, pivot_cap, set_pivot_cap, LPOutcome, DEFAULT_PIVOT_CAP};
pub use polyhedron::{Polyhedron, Row};
pub use sets::{
    barycentric_coordinates, clip_by_halfspace, covered, hull_simplexes, point_in_simplex,
    point_in_simplex_interior, point_in_union, simplex_hyperplanes, simplex_interior_point,
    simplex_polyhedron, st_of_simplex_union, union_set_equal, union_subset, vertex_list_st,
    Barycentric, VertexSet,
};
