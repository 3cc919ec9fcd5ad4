//! Piecewise-affine maps, induced maps over the residue field,
//! multifunctions with the trichotomy property, good directions, shears,
//! and extension of PL data over complexes.

mod direction;
mod extend;
mod map;
mod multi;

pub use extend::{extend_from_boundary, extend_over_subcomplex};

pub use direction::{
    is_good_direction, shear_to_vertical, v_good_direction, Shear, DIRECTION_BUDGET,
};
pub use map::{induced_map, PLMap};
pub use multi::{
    band_simplexes, region_complexes, st_coherent_vertex_order, successor,
    validate_multifunction, Multifunction, Regions,
};
