use std::collections::VecDeque;

use super::matrix::RationalMatrix;
use super::subspace::Subspace;
use super::LARGE_AMBIENT_WARNING;
use crate::error::{Error, Result};

/// A multiplication-closed subspace of `n x n` rational matrices, with the
/// generators it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixAlgebra {
    space: Subspace,
    n: usize,
    unital: bool,
    generators: Vec<RationalMatrix>,
}

impl MatrixAlgebra {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Side length of the matrices.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Whether the identity was adjoined to the seed.
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    pub fn basis_matrices(&self) -> Vec<RationalMatrix> {
        self.space.basis_matrices()
    }

    pub fn contains(&self, m: &RationalMatrix) -> bool {
        self.space.contains(m)
    }

    /// Every product of two basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        let basis = self.basis_matrices();
        basis
            .iter()
            .all(|a| basis.iter().all(|b| self.contains(&(a * b))))
    }

    pub fn is_transpose_closed(&self) -> bool {
        self.basis_matrices()
            .iter()
            .all(|b| self.contains(&b.transpose()))
    }
}

/// Smallest subalgebra containing `seed` (and the identity when
/// `include_identity`).
///
/// Runs a worklist over left multiplication by the seed: every element that
/// enlarges the span is queued, and each queued element is multiplied on the
/// left by every generator. The result is the span of all words in the seed,
/// which is closed under products of any two of its elements.
pub fn algebra_closure(seed: &[RationalMatrix], include_identity: bool) -> Result<MatrixAlgebra> {
    let first = seed
        .first()
        .ok_or_else(|| Error::Argument("algebra closure needs a nonempty seed".into()))?;
    let n = first.rows();
    if let Some(bad) = seed.iter().find(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Argument(format!(
            "seed matrix of shape {}x{} in a {n}x{n} closure",
            bad.rows(),
            bad.cols()
        )));
    }
    if n * n > LARGE_AMBIENT_WARNING {
        eprintln!(
            "warning: algebra closure over a {}-dimensional ambient space",
            n * n
        );
    }
    let mut space = Subspace::zero(n * n);
    let mut queue = VecDeque::new();
    if include_identity {
        let id = RationalMatrix::identity(n);
        space.insert_matrix(&id);
        queue.push_back(id);
    }
    for m in seed {
        if space.insert_matrix(m) {
            queue.push_back(m.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in seed {
            let product = g * &x;
            if space.insert_matrix(&product) {
                queue.push_back(product);
            }
        }
    }
    Ok(MatrixAlgebra {
        space,
        n,
        unital: include_identity,
        generators: seed.to_vec(),
    })
}
