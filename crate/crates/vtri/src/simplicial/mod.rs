//! Simplexes, complexes, V-complexes, simplicial vertex orders, prism
//! complexes, flag subdivisions, and combinatorial complex types.

mod complex;
mod order;
mod prism;
mod simplex;
mod subdivision;
mod types;
mod vcomplex;

pub use complex::{validate_complex, Complex};
pub use order::{is_simplicial_sequence, v_simplex_order, VSimplexOrder};
pub use prism::prism_complex;
pub use simplex::{format_point, Simplex};
pub use subdivision::{
    barycentric_subdivision, choose_interior_point, flag_subdivision, flag_subdivision_default,
};
pub use types::{
    canonical_v_homeomorphism, complex_type, type_bijection, type_equal, ComplexType,
    TYPE_VERTEX_CAP,
};
pub use vcomplex::{st_simplex, VComplex};
