use num_traits::{One, Zero};

use super::matrix::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Sparse row of a reduced echelon basis; `idx[0]` is the pivot, whose value
/// is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SparseRow {
    idx: Vec<usize>,
    val: Vec<Rational>,
}

impl SparseRow {
    fn pivot(&self) -> usize {
        self.idx[0]
    }

    fn entry(&self, col: usize) -> Option<&Rational> {
        self.idx.binary_search(&col).ok().map(|k| &self.val[k])
    }

    /// `self - c * other`, dropping cancelled entries.
    fn sub_scaled(&self, c: &Rational, other: &SparseRow) -> SparseRow {
        let mut idx = Vec::with_capacity(self.idx.len() + other.idx.len());
        let mut val = Vec::with_capacity(idx.capacity());
        let (mut i, mut j) = (0, 0);
        while i < self.idx.len() || j < other.idx.len() {
            let a = self.idx.get(i).copied().unwrap_or(usize::MAX);
            let b = other.idx.get(j).copied().unwrap_or(usize::MAX);
            let (col, v) = if a < b {
                i += 1;
                (a, self.val[i - 1].clone())
            } else if b < a {
                j += 1;
                (b, -(c * &other.val[j - 1]))
            } else {
                i += 1;
                j += 1;
                (a, &self.val[i - 1] - c * &other.val[j - 1])
            };
            if !v.is_zero() {
                idx.push(col);
                val.push(v);
            }
        }
        SparseRow { idx, val }
    }

    fn to_dense(&self, ambient: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); ambient];
        for (&j, v) in self.idx.iter().zip(&self.val) {
            out[j] = v.clone();
        }
        out
    }
}

/// Subspace of `Q^ambient` held as its unique reduced row echelon basis.
///
/// Two subspaces are equal iff their bases agree entrywise, so the derived
/// `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseRow>,
}

/// Incremental construction is done directly on [`Subspace`].
pub type SubspaceBuilder = Subspace;

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| SparseRow {
                idx: vec![i],
                val: vec![Rational::one()],
            })
            .collect();
        Subspace { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(SparseRow::pivot).collect()
    }

    /// Dense echelon basis vectors, in pivot order.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.to_dense(self.ambient)).collect()
    }

    /// Basis vectors reshaped into `n x n` matrices (row-major).
    pub fn basis_matrices(&self) -> Vec<RationalMatrix> {
        let n = square_side(self.ambient);
        self.basis()
            .into_iter()
            .map(|v| RationalMatrix::from_entries(n, n, v))
            .collect()
    }

    /// Subtracts basis rows until `v` vanishes on every pivot column.
    fn reduce(&self, v: &mut [Rational]) {
        for row in &self.rows {
            let p = row.pivot();
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (&j, x) in row.idx.iter().zip(&row.val) {
                v[j] -= &f * x;
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let mut idx = Vec::new();
        let mut val = Vec::new();
        for (j, x) in v.into_iter().enumerate().skip(p) {
            if !x.is_zero() {
                idx.push(j);
                val.push(x * &inv);
            }
        }
        let new = SparseRow { idx, val };
        for row in &mut self.rows {
            if let Some(c) = row.entry(p).cloned() {
                *row = row.sub_scaled(&c, &new);
            }
        }
        let at = self.rows.partition_point(|r| r.pivot() < p);
        self.rows.insert(at, new);
        true
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, Rational)]) -> bool {
        let mut v = vec![Rational::zero(); self.ambient];
        for (j, x) in entries {
            v[*j] += x;
        }
        self.insert(v)
    }

    pub fn insert_matrix(&mut self, m: &RationalMatrix) -> bool {
        self.insert(m.as_slice().to_vec())
    }

    pub fn contains_vec(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Exact membership of a vectorized matrix.
    pub fn contains(&self, m: &RationalMatrix) -> bool {
        self.contains_vec(m.as_slice())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis().iter().all(|v| other.contains_vec(v))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        let mut out = self.clone();
        for v in other.basis() {
            out.insert(v);
        }
        Ok(out)
    }

    /// Basis of `{ y : <r, y> = 0 for every basis row r }`, i.e. the kernel
    /// of the matrix whose rows span `self`.
    pub fn annihilator_basis(&self) -> Vec<Vec<Rational>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ambient];
                v[f] = Rational::one();
                for row in &self.rows {
                    if let Some(c) = row.entry(f) {
                        v[row.pivot()] = -c.clone();
                    }
                }
                v
            })
            .collect()
    }
}

fn square_side(ambient: usize) -> usize {
    let n = (ambient as f64).sqrt().round() as usize;
    assert_eq!(n * n, ambient, "ambient dimension {ambient} is not a square");
    n
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::Argument(format!(
            "ambient dimensions differ: {} vs {}",
            a.ambient, b.ambient
        )));
    }
    Ok(())
}

/// Reduced row echelon form of `m`, its rank, and its pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, usize, Vec<usize>) {
    let mut space = Subspace::zero(m.cols());
    for i in 0..m.rows() {
        space.insert(m.as_slice()[i * m.cols()..(i + 1) * m.cols()].to_vec());
    }
    let rank = space.dim();
    let pivots = space.pivots();
    let mut entries: Vec<Rational> = space.basis().into_iter().flatten().collect();
    entries.resize(m.rows() * m.cols(), Rational::zero());
    (
        RationalMatrix::from_entries(m.rows(), m.cols(), entries),
        rank,
        pivots,
    )
}

/// Canonical span of vectorized matrices of a common shape.
pub fn span_of(matrices: &[RationalMatrix]) -> Result<Subspace> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::Argument("cannot infer the ambient space of an empty list".into()))?;
    let shape = (first.rows(), first.cols());
    let mut space = Subspace::zero(shape.0 * shape.1);
    for m in matrices {
        if (m.rows(), m.cols()) != shape {
            return Err(Error::Argument(format!(
                "matrix shape {}x{} differs from {}x{}",
                m.rows(),
                m.cols(),
                shape.0,
                shape.1
            )));
        }
        space.insert_matrix(m);
    }
    Ok(space)
}

/// `a ∩ b` by the Zassenhaus sum-intersection method.
pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    let n = a.ambient;
    let mut joint = Subspace::zero(2 * n);
    for v in a.basis() {
        let mut w = v.clone();
        w.extend(v);
        joint.insert(w);
    }
    for v in b.basis() {
        let mut w = v;
        w.resize(2 * n, Rational::zero());
        joint.insert(w);
    }
    let mut out = Subspace::zero(n);
    for row in joint.rows.iter().filter(|r| r.pivot() >= n) {
        out.insert(row.to_dense(2 * n).split_off(n));
    }
    Ok(out)
}

/// Kernel of the linear map whose matrix has the given rows.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut space = Subspace::zero(cols);
    for r in rows {
        space.insert(r.clone());
    }
    space.annihilator_basis()
}

#[cfg(test)]
mod tests {
    use super::super::matrix::int;
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn span(rows: &[&[i64]]) -> Subspace {
        let mut s = Subspace::zero(rows[0].len());
        for v in vecs(rows) {
            s.insert(v);
        }
        s
    }

    #[test]
    fn rref_identity() {
        let i3 = RationalMatrix::identity(3);
        let (r, rank, piv) = rref(&i3);
        assert_eq!((r, rank, piv), (i3, 3, vec![0, 1, 2]));
    }

    #[test]
    fn rref_proportional_rows() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        let (r, rank, _) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r, RationalMatrix::from_i64_rows(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn rref_c4_adjacency() {
        let a = RationalMatrix::from_i64_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ]);
        let (r, rank, piv) = rref(&a);
        assert_eq!(rank, 2);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(
            r,
            RationalMatrix::from_i64_rows(&[
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ])
        );
    }

    #[test]
    fn rref_with_fractions() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1, 0], vec![4, 0, 1]]);
        let (r, _, _) = rref(&m);
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let expected = RationalMatrix::from_entries(
            2,
            3,
            vec![q(1, 1), q(0, 1), q(1, 4), q(0, 1), q(1, 1), q(-1, 2)],
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn span_of_examples() {
        assert_eq!(span_of(&[RationalMatrix::identity(3)]).unwrap().dim(), 1);
        let a = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(span_of(&[a.clone(), a.scale(&int(2))]).unwrap().dim(), 1);
        let e: Vec<_> = (0..3)
            .map(|i| {
                let mut m = RationalMatrix::zeros(4, 4);
                for &y in [[0usize].as_slice(), &[1, 3], &[2]][i] {
                    m.set(y, y, int(1));
                }
                m
            })
            .collect();
        assert_eq!(span_of(&e).unwrap().dim(), 3);
    }

    #[test]
    fn span_of_shape_mismatch() {
        let r = span_of(&[RationalMatrix::identity(2), RationalMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::Argument(_))));
        assert!(matches!(span_of(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn intersections() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(subspace_intersection(&a, &a).unwrap(), a);
        assert_eq!(
            subspace_intersection(&span(&[&[1, 0, 0]]), &span(&[&[0, 1, 0]]))
                .unwrap()
                .dim(),
            0
        );
        assert_eq!(subspace_intersection(&a, &b).unwrap(), span(&[&[0, 1, 0]]));
        assert!(matches!(
            subspace_intersection(&a, &Subspace::zero(4)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn membership() {
        let a = RationalMatrix::from_i64_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ]);
        let s = span_of(&[RationalMatrix::identity(4)]).unwrap();
        assert!(s.contains(&RationalMatrix::zeros(4, 4)));
        assert!(!s.contains(&a));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let k = nullspace(&vecs(&[&[1, 1, 1]]), 3);
        assert_eq!(k, vecs(&[&[-1, 1, 0], &[-1, 0, 1]]));
    }
}
