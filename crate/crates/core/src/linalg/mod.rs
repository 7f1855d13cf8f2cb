//! Exact dense linear algebra over the rationals and the d-gridded block
//! representation used by the invariant-subspace computation.

mod gridded;
mod matrix;
mod subspace;

pub use gridded::GriddedMat;
pub use matrix::{solve_right, MatQ};
pub use subspace::{image, intersect, kernel, Subspace};
