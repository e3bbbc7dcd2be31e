use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classify::group_isomorphic;
use super::dense::singular_values;
use super::{module_profile, spectral_norm, thin_parameters, IrreducibleModuleView, NumericOperators, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

pub const MAX_DECOMPOSITION_ATTEMPTS: usize = 5;

/// A certified splitting of the standard module into irreducible modules.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Sorted by endpoint, diameter, dimension and shell dimensions.
    pub modules: Vec<IrreducibleModuleView>,
    /// Seed of the sample that passed certification.
    pub seed_used: u64,
    pub attempts: usize,
}

/// Splits the standard module into irreducible `T`-modules.
///
/// A random symmetric element `C + C^t` of the commutant (integer
/// coefficients in `[-9, 9]`) is diagonalised and each eigenvalue cluster is
/// taken as a module, after splitting clusters that are still reducible. The split is accepted only if the modules are
/// `T`-invariant, their isomorphism classes satisfy
/// `sum_λ d_λ^2 = dim T` and `sum_λ m_λ^2 = dim commutant`, and the
/// dimensions add up to `|X|`. Otherwise the next seed is tried.
pub fn decompose_standard_module(
    ops: &NumericOperators,
    commutant: &Subspace,
    dim_t: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Decomposition> {
    let basis: Vec<DMatrix<f64>> = commutant
        .basis_matrices()
        .iter()
        .map(|m| m.to_f64())
        .collect();
    let mut last_reason = String::new();
    for attempt in 0..MAX_DECOMPOSITION_ATTEMPTS {
        let seed_used = seed.wrapping_add(attempt as u64);
        match try_decompose(ops, &basis, dim_t, seed_used, tol) {
            Ok(modules) => {
                return Ok(Decomposition {
                    modules,
                    seed_used,
                    attempts: attempt + 1,
                })
            }
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::DecompositionFailure {
        attempts: MAX_DECOMPOSITION_ATTEMPTS,
        reason: last_reason,
    })
}

/// Draws `C + C^t` for a random integer combination `C` of `basis`.
fn random_symmetric_element(basis: &[DMatrix<f64>], rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let k = basis.first().map_or(0, DMatrix::nrows);
    let mut c = DMatrix::<f64>::zeros(k, k);
    for b in basis {
        let coeff: i32 = rng.gen_range(-9..=9);
        c += b * f64::from(coeff);
    }
    &c + c.transpose()
}

/// Dimension of the span of `mats`, relative to the largest singular value.
fn span_rank(mats: &[DMatrix<f64>], rel_tol: f64) -> usize {
    let len = mats.first().map_or(0, |m| m.len());
    if len == 0 {
        return 0;
    }
    let stacked = DMatrix::from_fn(len, mats.len(), |i, j| mats[j].as_slice()[i]);
    let sv = singular_values(&stacked);
    let max = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&x| x > rel_tol * max).count()
}

/// Eigenspaces of `s`, grouped by clustered eigenvalue.
fn eigenspaces(s: DMatrix<f64>, rel_tol: f64) -> Vec<DMatrix<f64>> {
    let n = s.nrows();
    let eig = SymmetricEigen::new(s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    cluster(&sorted, rel_tol)
        .into_iter()
        .map(|range| {
            let cols = &order[range];
            DMatrix::from_fn(n, cols.len(), |i, k| eig.eigenvectors[(i, cols[k])])
        })
        .collect()
}

/// Splits the standard module into pieces whose compressed commutant is
/// one-dimensional. Integer samples can tie eigenvalues of unrelated
/// modules, so a piece that still carries a larger commutant is split again
/// with a fresh sample of the compressed commutant.
fn split_irreducible(
    commutant_basis: &[DMatrix<f64>],
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> std::result::Result<Vec<DMatrix<f64>>, String> {
    const MAX_RESAMPLES: usize = 32;
    let s = random_symmetric_element(commutant_basis, rng);
    let mut pending = eigenspaces(s, tol.eigen_cluster);
    let mut done = Vec::new();
    let mut resamples = 0;
    while let Some(basis) = pending.pop() {
        let compressed: Vec<DMatrix<f64>> = commutant_basis
            .iter()
            .map(|c| basis.transpose() * c * &basis)
            .collect();
        if span_rank(&compressed, tol.rank) <= 1 {
            done.push(basis);
            continue;
        }
        resamples += 1;
        if resamples > MAX_RESAMPLES {
            return Err(format!(
                "a {}-dimensional eigenspace kept a commutant of dimension {} after {MAX_RESAMPLES} resamples",
                basis.ncols(),
                span_rank(&compressed, tol.rank)
            ));
        }
        let parts = eigenspaces(random_symmetric_element(&compressed, rng), tol.eigen_cluster);
        if parts.len() == 1 {
            pending.push(basis);
        } else {
            pending.extend(parts.into_iter().map(|v| &basis * v));
        }
    }
    Ok(done)
}

/// Index ranges of eigenvalues (sorted ascending) that lie within
/// `rel_tol * radius` of their neighbour.
fn cluster(values: &[f64], rel_tol: f64) -> Vec<std::ops::Range<usize>> {
    let radius = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > rel_tol * radius {
            out.push(start..k);
            start = k;
        }
    }
    out
}

fn try_decompose(
    ops: &NumericOperators,
    commutant_basis: &[DMatrix<f64>],
    dim_t: usize,
    seed: u64,
    tol: &Tolerances,
) -> std::result::Result<Vec<IrreducibleModuleView>, String> {
    let n = ops.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = split_irreducible(commutant_basis, &mut rng, tol)?;

    let generator_norms: Vec<(&DMatrix<f64>, f64)> = ops
        .t_generators()
        .into_iter()
        .map(|g| (g, spectral_norm(g).max(1.0)))
        .collect();

    let mut modules = Vec::new();
    for basis in pieces {
        let proj = &basis * basis.transpose();
        for (g, norm) in &generator_norms {
            let image = *g * &basis;
            let residual = &image - &proj * &image;
            let worst = residual.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
            if worst > tol.residual * norm {
                return Err(format!("eigenspace is not T-invariant (residual {worst:e})"));
            }
        }
        let profile = module_profile(&basis, &ops.shells, tol).map_err(|e| e.to_string())?;
        let params = if profile.thin {
            Some(thin_parameters(&basis, &profile, ops, tol).map_err(|e| e.to_string())?)
        } else {
            None
        };
        modules.push(IrreducibleModuleView {
            basis,
            profile,
            params,
        });
    }
    modules.sort_by_key(IrreducibleModuleView::sort_key);

    let total: usize = modules.iter().map(IrreducibleModuleView::dim).sum();
    if total != n {
        return Err(format!("module dimensions sum to {total}, expected {n}"));
    }
    let classes = group_isomorphic(&modules, ops, tol);
    let sum_d2: usize = classes.iter().map(|c| modules[c[0]].dim().pow(2)).sum();
    if sum_d2 != dim_t {
        return Err(format!("sum of d_λ^2 is {sum_d2}, dim T is {dim_t}"));
    }
    let sum_m2: usize = classes.iter().map(|c| c.len().pow(2)).sum();
    if sum_m2 != commutant_basis.len() {
        return Err(format!(
            "sum of m_λ^2 is {sum_m2}, commutant has dimension {}",
            commutant_basis.len()
        ));
    }
    Ok(modules)
}
