//! Exact rational linear algebra over vectorized square matrices.

mod closure;
mod matrix;
mod subspace;

pub use closure::{algebra_closure, MatrixAlgebra};
pub use matrix::{Rational, RationalMatrix};
pub use subspace::{nullspace, rref, span_of, subspace_intersection, Subspace, SubspaceBuilder};

/// Ambient dimension above which the closure routines log a warning.
pub const LARGE_AMBIENT_WARNING: usize = 10_000;
