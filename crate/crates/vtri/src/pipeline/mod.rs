//! The lifting construction, distinctness-condition enforcement, vertical
//! cell decomposition, the full V-triangulation pipeline, Hausdorff limits
//! of definable families, and the independent verifier.

mod decomp;
mod hauslim;
mod lift;
mod triangulate;
mod types;
mod verify;

pub use decomp::{vertical_decomposition, Cell, CellDecomposition, CellFunction};
pub use hauslim::hausdorff_limit;
pub use lift::{enforce_star_conditions, epsilon0_witness, lift_triangulation};
pub use triangulate::{
    dim_cap, set_dim_cap, v_triangulate, DEFAULT_DIM_CAP, DEFAULT_MAX_SUBDIVISIONS,
};
pub use types::{order_vertices_st_coherent, VTriangulation};
pub use verify::{verify_v_triangulation, CheckLine, VerificationReport};
