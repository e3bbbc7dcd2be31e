//! The concrete matrices and algebras attached to a rooted graph: the
//! adjacency matrix, the dual idempotents, the lowering/flat/raising split,
//! the algebras `T` and `Q`, and their gradings by shell shift.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{DistancePartition, Graph};
use crate::linalg::{
    algebra_closure, span_of, subspace_intersection, MatrixAlgebra, Rational, RationalMatrix,
    Subspace,
};

/// 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> RationalMatrix {
    let n = g.vertex_count();
    let mut a = RationalMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a.set(u, v, Rational::one());
        a.set(v, u, Rational::one());
    }
    a
}

/// `E_0*, ..., E_D*`: the diagonal projections onto the distance shells.
pub fn dual_idempotents(p: &DistancePartition) -> Vec<RationalMatrix> {
    (0..=p.diameter)
        .map(|i| {
            let diag: Vec<Rational> = p
                .dist
                .iter()
                .map(|&d| if d == i { Rational::one() } else { Rational::zero() })
                .collect();
            RationalMatrix::diagonal(&diag)
        })
        .collect()
}

/// Shell index of each coordinate, read off the dual idempotents.
fn coordinate_shells(e: &[RationalMatrix]) -> Vec<usize> {
    let n = e.first().map_or(0, RationalMatrix::rows);
    (0..n)
        .map(|y| {
            e.iter()
                .position(|m| !m.get(y, y).is_zero())
                .expect("dual idempotents sum to the identity")
        })
        .collect()
}

/// `A = L + F + R` relative to the distance partition.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDecomposition {
    pub a: RationalMatrix,
    pub l: RationalMatrix,
    pub f: RationalMatrix,
    pub r: RationalMatrix,
    /// Dual idempotents `E_0*..E_D*`.
    pub e: Vec<RationalMatrix>,
    pub diameter: usize,
}

impl QuantumDecomposition {
    /// `E_i*` for any integer `i`, zero outside `0..=D`.
    pub fn e_star(&self, i: i64) -> RationalMatrix {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.e.get(i).cloned())
            .unwrap_or_else(|| RationalMatrix::zeros(self.a.rows(), self.a.cols()))
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// Every exact identity the decomposition must satisfy, by name.
    pub fn identity_checks(&self) -> Vec<(&'static str, bool)> {
        let n = self.size();
        let d = self.diameter as i64;
        let id = RationalMatrix::identity(n);
        let zero = RationalMatrix::zeros(n, n);
        let sum_e = self.e.iter().fold(zero.clone(), |acc, m| &acc + m);
        let lfr = &(&self.l + &self.f) + &self.r;
        let orthogonal = (0..self.e.len()).all(|i| {
            (0..self.e.len()).all(|j| {
                let p = &self.e[i] * &self.e[j];
                if i == j {
                    p == self.e[i]
                } else {
                    p.is_zero()
                }
            })
        });
        let banded = (0..self.e.len()).all(|i| {
            (0..self.e.len())
                .filter(|j| i.abs_diff(*j) > 1)
                .all(|j| (&(&self.e[i] * &self.a) * &self.e[j]).is_zero())
        });
        let commute = (0..=d).all(|i| {
            &self.l * &self.e_star(i) == &self.e_star(i - 1) * &self.l
                && &self.f * &self.e_star(i) == &self.e_star(i) * &self.f
                && &self.r * &self.e_star(i - 1) == &self.e_star(i) * &self.r
        });
        let ends = (&self.l * &self.e_star(0)).is_zero()
            && (&self.e_star(d) * &self.l).is_zero()
            && (&self.r * &self.e_star(d)).is_zero()
            && (&self.e_star(0) * &self.r).is_zero();
        vec![
            ("A = L+F+R", lfr == self.a),
            ("L^t = R", self.l.transpose() == self.r),
            ("F^t = F", self.f.transpose() == self.f),
            ("sum E_i* = I", sum_e == id),
            ("E_i*E_j* = delta_ij E_i*", orthogonal),
            ("E_i*AE_j* = 0 for |i-j| > 1", banded),
            ("L,F,R shift E_i* by -1,0,+1", commute),
            ("LE_0* = E_D*L = RE_D* = E_0*R = 0", ends),
        ]
    }
}

/// Lowering, flat and raising parts of `A` as sums of `E_i* A E_j*`.
pub fn lfr_decomposition(a: &RationalMatrix, e: &[RationalMatrix]) -> Result<QuantumDecomposition> {
    if e.is_empty() {
        return Err(Error::Argument("no dual idempotents".into()));
    }
    let n = a.rows();
    let diameter = e.len() - 1;
    let sandwich = |i: usize, j: usize| &(&e[i] * a) * &e[j];
    let mut l = RationalMatrix::zeros(n, n);
    let mut f = RationalMatrix::zeros(n, n);
    let mut r = RationalMatrix::zeros(n, n);
    for i in 0..=diameter {
        f = &f + &sandwich(i, i);
        if i >= 1 {
            l = &l + &sandwich(i - 1, i);
        }
        if i < diameter {
            r = &r + &sandwich(i + 1, i);
        }
    }
    let decomp = QuantumDecomposition {
        a: a.clone(),
        l,
        f,
        r,
        e: e.to_vec(),
        diameter,
    };
    if let Some((name, _)) = decomp.identity_checks().into_iter().find(|(_, ok)| !ok) {
        return Err(Error::Consistency(format!("quantum decomposition: {name}")));
    }
    Ok(decomp)
}

/// `T`: the unital algebra generated by `A` and the dual idempotents.
pub fn build_t(a: &RationalMatrix, e: &[RationalMatrix]) -> Result<MatrixAlgebra> {
    let mut seed = vec![a.clone()];
    seed.extend(e.iter().cloned());
    algebra_closure(&seed, true)
}

/// `Q`: the algebra generated by `L, F, R`, checked to sit inside `T`.
pub fn build_q(
    decomp: &QuantumDecomposition,
    t: &MatrixAlgebra,
    include_identity: bool,
) -> Result<MatrixAlgebra> {
    let q = algebra_closure(
        &[decomp.l.clone(), decomp.f.clone(), decomp.r.clone()],
        include_identity,
    )?;
    if !q.space().is_subspace_of(t.space()) {
        return Err(Error::Consistency("Q is not contained in T".into()));
    }
    Ok(q)
}

/// `sum_i E_{i+n}* m E_i*`: the entries of `m` that move shell `i` to `i+n`.
fn shift_component(m: &RationalMatrix, shells: &[usize], n: i64) -> RationalMatrix {
    m.masked(|row, col| shells[row] as i64 - shells[col] as i64 == n)
}

/// Grading pieces `n -> span{ sum_i E_{i+n}* B E_i* : B in basis }` for
/// `n` in `-D..=D`.
///
/// Fails if the pieces do not add up to the algebra as a direct sum, which
/// happens iff the algebra is not stable under the sandwich projections.
pub fn grading_components(
    alg: &MatrixAlgebra,
    e: &[RationalMatrix],
) -> Result<BTreeMap<i64, Subspace>> {
    let shells = coordinate_shells(e);
    let d = e.len() as i64 - 1;
    let basis = alg.basis_matrices();
    let ambient = alg.space().ambient();
    let mut out = BTreeMap::new();
    for n in -d..=d {
        let mut piece = Subspace::zero(ambient);
        for b in &basis {
            piece.insert_matrix(&shift_component(b, &shells, n));
        }
        out.insert(n, piece);
    }
    let total: usize = out.values().map(Subspace::dim).sum();
    if total != alg.dim() {
        return Err(Error::Consistency(format!(
            "grading pieces have total dimension {total}, algebra has {}",
            alg.dim()
        )));
    }
    let mut sum = Subspace::zero(ambient);
    for piece in out.values() {
        sum = sum.sum(piece)?;
    }
    if &sum != alg.space() {
        return Err(Error::Consistency(
            "grading pieces do not span the algebra".into(),
        ));
    }
    Ok(out)
}

/// `Q_n = Q ∩ T_n`, computed by intersection and independently by sandwich
/// projection of `Q`; the two must agree.
pub fn q_grading(
    q: &MatrixAlgebra,
    t_components: &BTreeMap<i64, Subspace>,
    e: &[RationalMatrix],
) -> Result<BTreeMap<i64, Subspace>> {
    let projected = grading_components(q, e)?;
    let mut out = BTreeMap::new();
    for (&n, t_n) in t_components {
        let q_n = subspace_intersection(q.space(), t_n)?;
        let via_projection = projected
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(q_n.ambient()));
        if q_n != via_projection {
            return Err(Error::Consistency(format!(
                "Q_{n}: intersection (dim {}) and projection (dim {}) disagree",
                q_n.dim(),
                via_projection.dim()
            )));
        }
        out.insert(n, q_n);
    }
    Ok(out)
}

/// `theta_i* = (N-1)(D-i) - i`.
pub fn hamming_dual_eigenvalue(d: usize, n: usize, i: usize) -> i64 {
    (n as i64 - 1) * (d as i64 - i as i64) - i as i64
}

/// `A* = sum_i theta_i* E_i*` for `H(D, N)`.
pub fn hamming_dual_adjacency(e: &[RationalMatrix], d: usize, n: usize) -> Result<RationalMatrix> {
    if e.len() != d + 1 {
        return Err(Error::Argument(format!(
            "expected {} dual idempotents for H({d},{n}), got {}",
            d + 1,
            e.len()
        )));
    }
    let size = e[0].rows();
    Ok(e.iter().enumerate().fold(RationalMatrix::zeros(size, size), |acc, (i, m)| {
        &acc + &m.scale(&Rational::from_integer(hamming_dual_eigenvalue(d, n, i).into()))
    }))
}

/// `T`, `Q` and their graded pieces.
#[derive(Debug, Clone)]
pub struct GradedAlgebraPair {
    pub t: MatrixAlgebra,
    pub q: MatrixAlgebra,
    pub t_grading: BTreeMap<i64, Subspace>,
    pub q_grading: BTreeMap<i64, Subspace>,
}

impl GradedAlgebraPair {
    pub fn build(decomp: &QuantumDecomposition) -> Result<Self> {
        let t = build_t(&decomp.a, &decomp.e)?;
        let q = build_q(decomp, &t, true)?;
        let t_grading = grading_components(&t, &decomp.e)?;
        let q_grading = q_grading(&q, &t_grading, &decomp.e)?;
        Ok(GradedAlgebraPair {
            t,
            q,
            t_grading,
            q_grading,
        })
    }
}

/// Span of all products `x * y` with `x` in `xs`, `y` in `ys`.
pub fn product_span(xs: &[RationalMatrix], ys: &[RationalMatrix]) -> Result<Subspace> {
    let products: Vec<RationalMatrix> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| x * y))
        .collect();
    span_of(&products)
}
