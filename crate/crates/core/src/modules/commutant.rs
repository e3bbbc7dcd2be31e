use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, Subspace};

/// `{ X : XG = GX for every generator G }`, exactly.
///
/// Each generator contributes the `n^2` scalar equations
/// `sum_k X_ik G_kj - G_ik X_kj = 0` in the unknowns `X_ij` (row-major).
/// Short equations are eliminated first, so diagonal generators cut the
/// system down to block-diagonal unknowns before the dense ones arrive.
pub fn commutant(generators: &[RationalMatrix]) -> Result<Subspace> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Argument("commutant of an empty generator list".into()))?;
    let n = first.rows();
    if let Some(bad) = generators.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::Argument(format!(
            "generator of shape {}x{} among {n}x{n} matrices",
            bad.rows(),
            bad.cols()
        )));
    }
    let mut equations: Vec<Vec<(usize, Rational)>> = Vec::new();
    for g in generators {
        let nonzero: Vec<(usize, usize, &Rational)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, g.get(i, j)))
            .filter(|(_, _, v)| !v.is_zero())
            .collect();
        // row[i][j] collects the terms of equation (i, j).
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * n];
        for &(k, j, v) in &nonzero {
            // X_ik G_kj contributes to equation (i, j) for every i.
            for i in 0..n {
                rows[i * n + j].push((i * n + k, v.clone()));
            }
        }
        for &(i, k, v) in &nonzero {
            // -G_ik X_kj contributes to equation (i, j) for every j.
            for j in 0..n {
                rows[i * n + j].push((k * n + j, -v.clone()));
            }
        }
        for mut row in rows {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            if !merged.is_empty() {
                equations.push(merged);
            }
        }
    }
    equations.sort_by_key(Vec::len);
    let mut system = Subspace::zero(n * n);
    for eq in &equations {
        if system.dim() == n * n {
            break;
        }
        system.insert_sparse(eq);
    }
    let mut out = Subspace::zero(n * n);
    for v in system.annihilator_basis() {
        out.insert(v);
    }
    Ok(out)
}
