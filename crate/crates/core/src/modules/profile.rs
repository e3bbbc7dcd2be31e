use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::dense::{singular_values, top_left_singular_vector};
use super::{NumericOperators, Tolerances};
use crate::error::{Error, Result};

/// Endpoint, diameter and shell dimensions of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleProfile {
    /// First shell the module meets.
    pub endpoint: usize,
    /// Number of shells met, minus one.
    pub diameter: usize,
    /// `dim E_{r+i}* W` for `0 <= i <= d`.
    pub shell_dims: Vec<usize>,
    pub thin: bool,
}

/// Parameters of a thin module on its standard basis `v_i = R^i u`:
/// `F v_i = a_i v_i` and `L v_i = x_i v_{i-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinParameters {
    /// `a_0..a_d`.
    pub a: Vec<f64>,
    /// `x_1..x_d`.
    pub x: Vec<f64>,
}

impl ThinParameters {
    /// Same length and entrywise within `tol`.
    pub fn approx_eq(&self, other: &ThinParameters, tol: f64) -> bool {
        let close = |p: &[f64], q: &[f64]| {
            p.len() == q.len() && p.iter().zip(q).all(|(s, t)| (s - t).abs() <= tol * s.abs().max(t.abs()).max(1.0))
        };
        close(&self.a, &other.a) && close(&self.x, &other.x)
    }
}

/// Rows of `basis` belonging to shell `i`.
fn shell_block(basis: &DMatrix<f64>, shells: &[usize], i: usize) -> DMatrix<f64> {
    let rows: Vec<usize> = (0..shells.len()).filter(|&y| shells[y] == i).collect();
    DMatrix::from_fn(rows.len(), basis.ncols(), |k, c| basis[(rows[k], c)])
}

/// Endpoint, diameter and shell dimensions of the span of `basis`.
///
/// `basis` must have orthonormal columns. The occupied shells have to form
/// one contiguous window and their dimensions must add up to the module
/// dimension; anything else means `basis` does not span a `T`-module.
pub fn module_profile(basis: &DMatrix<f64>, shells: &[usize], tol: &Tolerances) -> Result<ModuleProfile> {
    let shell_count = shells.iter().copied().max().map_or(0, |d| d + 1);
    let dims: Vec<usize> = (0..shell_count)
        .map(|i| {
            let block = shell_block(basis, shells, i);
            // Orthonormal columns: singular values are at most one.
            let sv = singular_values(&block);
            sv.iter().filter(|&&s| s > tol.rank).count()
        })
        .collect();
    let occupied: Vec<usize> = (0..shell_count).filter(|&i| dims[i] > 0).collect();
    let (Some(&first), Some(&last)) = (occupied.first(), occupied.last()) else {
        return Err(Error::Profile("module meets no shell".into()));
    };
    if last - first + 1 != occupied.len() {
        return Err(Error::Profile(format!(
            "occupied shells {occupied:?} are not contiguous"
        )));
    }
    let shell_dims = dims[first..=last].to_vec();
    let total: usize = shell_dims.iter().sum();
    if total != basis.ncols() {
        return Err(Error::Profile(format!(
            "shell dimensions {shell_dims:?} sum to {total}, module has dimension {}",
            basis.ncols()
        )));
    }
    Ok(ModuleProfile {
        endpoint: first,
        diameter: last - first,
        thin: shell_dims.iter().all(|&d| d == 1),
        shell_dims,
    })
}

/// `a_i` and `x_i` of a thin module, measured on `v_i = R^i u` where `u`
/// spans `E_r* W`.
pub fn thin_parameters(
    basis: &DMatrix<f64>,
    profile: &ModuleProfile,
    ops: &NumericOperators,
    tol: &Tolerances,
) -> Result<ThinParameters> {
    if !profile.thin {
        return Err(Error::NotThin(format!(
            "shell dimensions {:?}",
            profile.shell_dims
        )));
    }
    let r = profile.endpoint;
    let d = profile.diameter;
    let top = &ops.e[r] * basis;
    let u = top_left_singular_vector(&top);

    let mut v: Vec<DVector<f64>> = vec![u.normalize()];
    for i in 1..=d {
        let next = &ops.r * &v[i - 1];
        if next.norm() <= tol.residual * ops.scale * v[i - 1].norm() {
            return Err(Error::Consistency(format!(
                "R^{i} u vanishes inside a module of diameter {d}"
            )));
        }
        v.push(next);
    }
    let bound = |w: &DVector<f64>| tol.residual * ops.scale * w.norm();

    let mut a = Vec::with_capacity(d + 1);
    for (i, vi) in v.iter().enumerate() {
        let fv = &ops.f * vi;
        let ai = fv.dot(vi) / vi.norm_squared();
        if (&fv - vi * ai).norm() > bound(vi) {
            return Err(Error::NotThin(format!("F v_{i} is not a multiple of v_{i}")));
        }
        a.push(ai);
    }
    let mut x = Vec::with_capacity(d);
    for i in 1..=d {
        let lv = &ops.l * &v[i];
        let prev = &v[i - 1];
        let xi = lv.dot(prev) / prev.norm_squared();
        if (&lv - prev * xi).norm() > bound(&v[i]) {
            return Err(Error::NotThin(format!(
                "L v_{i} is not a multiple of v_{}",
                i - 1
            )));
        }
        x.push(xi);
    }
    if (&ops.r * &v[d]).norm() > bound(&v[d]) {
        return Err(Error::NotThin(format!("R v_{d} is not zero")));
    }
    Ok(ThinParameters { a, x })
}

