use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense::{null_space, singular_values};
use super::{IrreducibleModuleView, NumericOperators, Tolerances};

/// Which maps [`intertwiner_exists`] looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntertwinerMode {
    /// `T`-module isomorphism: commutes with `L, F, R` and every `E_i*`.
    Iso,
    /// Quasi-isomorphism: commutes with `L, F, R` and carries `E_i*` to
    /// `E_{i+n}*` with `n = r(W) - r(U)`.
    Quasi,
}

/// Kronecker product.
fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(a.nrows() * b.nrows(), a.ncols() * b.ncols(), |i, j| {
        a[(i / b.nrows(), j / b.ncols())] * b[(i % b.nrows(), j % b.ncols())]
    })
}

/// Whether an invertible linear map `sigma: U -> W` with the requested
/// intertwining properties exists.
///
/// The unknown is the `dim W x dim U` matrix `S` of `sigma` in the module
/// bases. Each condition `G_W S = S G_U` (with `G_U = B_U^t G B_U`) becomes
/// `(I ⊗ G_W - G_U^t ⊗ I) vec S = 0`; the stacked system is solved by SVD
/// and a generic solution is tested for invertibility.
pub fn intertwiner_exists(
    u: &IrreducibleModuleView,
    w: &IrreducibleModuleView,
    ops: &NumericOperators,
    mode: IntertwinerMode,
    tol: &Tolerances,
) -> bool {
    let (du, dw) = (u.dim(), w.dim());
    if du != dw || du == 0 {
        return false;
    }
    let shift = match mode {
        IntertwinerMode::Iso => 0,
        IntertwinerMode::Quasi => w.endpoint() as i64 - u.endpoint() as i64,
    };
    let id_u = DMatrix::<f64>::identity(du, du);
    let id_w = DMatrix::<f64>::identity(dw, dw);
    let zero_u = DMatrix::<f64>::zeros(du, du);
    let zero_w = DMatrix::<f64>::zeros(dw, dw);

    let mut blocks: Vec<DMatrix<f64>> = Vec::new();
    for g in [&ops.l, &ops.f, &ops.r] {
        blocks.push(kron(&id_u, &w.restrict(g)) - kron(&u.restrict(g).transpose(), &id_w));
    }
    let d = ops.diameter() as i64;
    for i in -d..=2 * d {
        let eu = ops.e_star(i).map_or_else(|| zero_u.clone(), |e| u.restrict(e));
        let ew = ops
            .e_star(i + shift)
            .map_or_else(|| zero_w.clone(), |e| w.restrict(e));
        if eu.iter().all(|v| *v == 0.0) && ew.iter().all(|v| *v == 0.0) {
            continue;
        }
        // S E_i^U - E_{i+n}^W S
        blocks.push(kron(&eu.transpose(), &id_w) - kron(&id_u, &ew));
    }
    let k = du * dw;
    let rows: usize = blocks.iter().map(DMatrix::nrows).sum();
    let mut system = DMatrix::<f64>::zeros(rows, k);
    let mut at = 0;
    for b in &blocks {
        system.rows_mut(at, b.nrows()).copy_from(b);
        at += b.nrows();
    }

    let null = null_space(&system, |max| tol.rank * max.max(ops.scale));
    if null.is_empty() {
        return false;
    }
    // A generic combination of the solutions is invertible iff any is.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut combo = DVector::<f64>::zeros(k);
    for v in &null {
        combo += v * rng.gen_range(0.5..1.5);
    }
    let sol = DMatrix::from_column_slice(dw, du, combo.as_slice());
    let sv = singular_values(&sol);
    let max = sv.first().copied().unwrap_or(0.0);
    sv.len() == du && max > 0.0 && sv[du - 1] > tol.rank * max
}
