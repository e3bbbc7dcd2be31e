//! Irreducible `T`-modules inside the standard module.
//!
//! The standard module is split by eigenspaces of a random symmetric
//! element of the commutant of `T`. Each piece is profiled (endpoint,
//! diameter, shell dimensions), thin pieces get their `a_i`/`x_i`
//! parameters, and pieces are grouped into isomorphism and
//! quasi-isomorphism classes by solving for intertwining maps.
//! Everything numeric here is certified afterwards by exact dimension
//! identities against `dim T` and `dim Q`.

mod classify;
mod commutant;
mod decompose;
mod dense;

pub(crate) use dense::singular_values;
mod intertwiner;
mod operators;
mod profile;

use nalgebra::DMatrix;
use serde::Serialize;

pub use classify::{classify_modules, IdentityCheck, IsoClass, ModuleClassification, QuasiClass, Witness};
pub use commutant::commutant;
pub use decompose::{decompose_standard_module, Decomposition, MAX_DECOMPOSITION_ATTEMPTS};
pub use intertwiner::{intertwiner_exists, IntertwinerMode};
pub use operators::NumericOperators;
pub use profile::{module_profile, thin_parameters, ModuleProfile, ThinParameters};

/// Numerical tolerances used by the analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Eigenvalue clustering, relative to the spectral radius.
    pub eigen_cluster: f64,
    /// Singular-value rank threshold, relative to the largest singular value.
    pub rank: f64,
    /// Invariance and eigen-relation residuals, relative to operator norms.
    pub residual: f64,
    /// Agreement of thin-module parameters.
    pub parameter: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen_cluster: 1e-8,
            rank: 1e-8,
            residual: 1e-8,
            parameter: 1e-8,
        }
    }
}

/// An irreducible `T`-submodule of the standard module.
#[derive(Debug, Clone)]
pub struct IrreducibleModuleView {
    /// Orthonormal columns spanning the module.
    pub basis: DMatrix<f64>,
    pub profile: ModuleProfile,
    pub params: Option<ThinParameters>,
}

impl IrreducibleModuleView {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn endpoint(&self) -> usize {
        self.profile.endpoint
    }

    pub fn diameter(&self) -> usize {
        self.profile.diameter
    }

    pub fn is_thin(&self) -> bool {
        self.profile.thin
    }

    /// Orthogonal projector onto the module.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// `B^t G B`: the action of `G` in module coordinates.
    pub fn restrict(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        self.basis.transpose() * g * &self.basis
    }

    /// Key used to order modules deterministically.
    pub(crate) fn sort_key(&self) -> (usize, usize, usize, Vec<usize>) {
        (
            self.endpoint(),
            self.diameter(),
            self.dim(),
            self.profile.shell_dims.clone(),
        )
    }
}

/// Largest singular value.
pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    dense::singular_values(m).first().copied().unwrap_or(0.0)
}
