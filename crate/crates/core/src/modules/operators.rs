use nalgebra::DMatrix;

use super::spectral_norm;
use crate::algebra::QuantumDecomposition;

/// Floating-point copies of `A, L, F, R, E_i*` for the numeric analysis.
#[derive(Debug, Clone)]
pub struct NumericOperators {
    pub a: DMatrix<f64>,
    pub l: DMatrix<f64>,
    pub f: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub e: Vec<DMatrix<f64>>,
    /// Shell index of every vertex.
    pub shells: Vec<usize>,
    /// `max(1, ||A||_2)`; residuals are measured relative to it.
    pub scale: f64,
}

impl NumericOperators {
    pub fn from_decomposition(dec: &QuantumDecomposition) -> Self {
        let e: Vec<DMatrix<f64>> = dec.e.iter().map(|m| m.to_f64()).collect();
        let shells = (0..dec.size())
            .map(|y| e.iter().position(|m| m[(y, y)] != 0.0).expect("shells cover X"))
            .collect();
        let a = dec.a.to_f64();
        let scale = spectral_norm(&a).max(1.0);
        NumericOperators {
            l: dec.l.to_f64(),
            f: dec.f.to_f64(),
            r: dec.r.to_f64(),
            a,
            e,
            shells,
            scale,
        }
    }

    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    pub fn diameter(&self) -> usize {
        self.e.len() - 1
    }

    /// `E_i*`, or `None` outside `0..=D`.
    pub fn e_star(&self, i: i64) -> Option<&DMatrix<f64>> {
        usize::try_from(i).ok().and_then(|i| self.e.get(i))
    }

    /// Generators of `T`: `A` and every `E_i*`.
    pub fn t_generators(&self) -> Vec<&DMatrix<f64>> {
        std::iter::once(&self.a).chain(self.e.iter()).collect()
    }
}
