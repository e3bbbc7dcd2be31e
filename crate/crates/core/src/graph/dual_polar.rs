//! Bipartite dual polar graphs `D_D(q)` for prime `q`.
//!
//! Vertices are the maximal (dimension `D`) totally singular subspaces of
//! `F_q^{2D}` under the hyperbolic form `x_1 x_2 + x_3 x_4 + ... +
//! x_{2D-1} x_{2D}`. Each subspace is stored as its reduced row echelon
//! basis; vertex indices follow the enumeration order: pivot column sets in
//! lexicographic order, then free entries as base-`q` counters with the
//! first free entry most significant.

use super::Graph;
use crate::error::{Error, Result};

/// `prod_{i=0}^{D-1} (q^i + 1)`, saturating on overflow.
pub fn dual_polar_vertex_count(d: usize, q: u64) -> u128 {
    let q = q as u128;
    let mut total: u128 = 1;
    let mut power: u128 = 1;
    for _ in 0..d {
        total = total.saturating_mul(power.saturating_add(1));
        power = power.saturating_mul(q);
    }
    total
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

/// Generates `D_D(q)` together with the echelon basis of every vertex.
pub fn gen_dual_polar(d: usize, q: u64, size_cap: usize) -> Result<Graph> {
    gen_dual_polar_with_subspaces(d, q, size_cap).map(|(g, _)| g)
}

pub(crate) fn gen_dual_polar_with_subspaces(
    d: usize,
    q: u64,
    size_cap: usize,
) -> Result<(Graph, Vec<Vec<Vec<u64>>>)> {
    if d < 2 {
        return Err(Error::UnsupportedParameter(
            "dual polar rank D must be at least 2".into(),
        ));
    }
    if !is_prime(q) {
        return Err(Error::UnsupportedParameter(format!(
            "q = {q} is not prime; only prime fields are supported"
        )));
    }
    let expected = dual_polar_vertex_count(d, q);
    if expected > size_cap as u128 {
        return Err(Error::Capacity {
            requested: expected,
            cap: size_cap,
        });
    }
    let field = PrimeField { p: q };
    let dim = 2 * d;
    let mut vertices = Vec::new();
    for pivots in combinations(dim, d) {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..dim)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = (q as u128).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u64; dim]; d];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in free.iter().rev() {
                rows[r][c] = (code % q as u128) as u64;
                code /= q as u128;
            }
            if field.totally_singular(&rows) {
                vertices.push(rows);
            }
        }
    }
    if vertices.len() as u128 != expected {
        return Err(Error::Consistency(format!(
            "enumerated {} maximal totally singular subspaces, expected {expected}",
            vertices.len()
        )));
    }
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let mut stacked = vertices[i].clone();
            stacked.extend(vertices[j].iter().cloned());
            if field.rank(stacked) == d + 1 {
                edges.push((i, j));
            }
        }
    }
    Ok((Graph::from_edges(vertices.len(), &edges)?, vertices))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

struct PrimeField {
    p: u64,
}

impl PrimeField {
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2).
        let mut result = 1;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn quadratic_form(&self, x: &[u64]) -> u64 {
        x.chunks(2).fold(0, |acc, pair| (acc + self.mul(pair[0], pair[1])) % self.p)
    }

    fn polar_form(&self, x: &[u64], y: &[u64]) -> u64 {
        x.chunks(2).zip(y.chunks(2)).fold(0, |acc, (a, b)| {
            (acc + self.mul(a[0], b[1]) + self.mul(a[1], b[0])) % self.p
        })
    }

    /// The form vanishes on the span iff it vanishes on each basis vector
    /// and the polar form vanishes on each pair.
    fn totally_singular(&self, rows: &[Vec<u64>]) -> bool {
        rows.iter().all(|r| self.quadratic_form(r) == 0)
            && (0..rows.len())
                .all(|i| (i + 1..rows.len()).all(|j| self.polar_form(&rows[i], &rows[j]) == 0))
    }

    fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][c]);
            for v in rows[rank].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = rows[r][c];
                    for k in 0..cols {
                        let sub = self.mul(f, rows[rank][k]);
                        rows[r][k] = (rows[r][k] + self.p - sub) % self.p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
