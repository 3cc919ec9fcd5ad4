//! Exact toolkit for triangulations over a non-archimedean ordered field
//! with standard part map.
//!
//! The scalar domain is `R = Q(e)` with `e` a positive infinitesimal; `V`
//! is the convex subring of finite elements, `m` its maximal ideal, and
//! `st: V -> Q` the standard part map, applied coordinatewise to points
//! and elementwise to sets. On top of that the crate provides exact linear
//! algebra and linear programming, simplicial complexes and V-complexes,
//! piecewise-affine maps with their induced maps over `Q`, and the full
//! lifting/V-triangulation pipeline together with an independent verifier.

pub mod error;
pub mod scalar;

pub mod exactlin;
pub mod pipeline;
pub mod plmap;
pub mod scene;
pub mod simplicial;

pub use error::{Error, Result};
