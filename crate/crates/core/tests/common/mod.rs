//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use subconst::Graph;

/// Mersenne prime 2^61 - 1.
const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Square matrix over `Z/P`, row-major.
pub type ModMatrix = Vec<u64>;

pub fn mod_mul(a: &ModMatrix, b: &ModMatrix, n: usize) -> ModMatrix {
    let mut c = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + mulmod(x, b[k * n + j])) % P;
            }
        }
    }
    c
}

pub fn from_i64(n: usize, f: impl Fn(usize, usize) -> i64) -> ModMatrix {
    (0..n * n)
        .map(|k| f(k / n, k % n).rem_euclid(P as i64) as u64)
        .collect()
}

/// Incremental row echelon basis over `Z/P`.
#[derive(Default)]
pub struct ModSpan {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModSpan {
    /// Reduces `v` and keeps it when independent.
    pub fn add(&mut self, mut v: Vec<u64>) -> bool {
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + P - mulmod(c, *y)) % P;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = powmod(v[p], P - 2);
                for x in v.iter_mut() {
                    *x = mulmod(*x, inv);
                }
                for (_, r) in self.rows.iter_mut() {
                    let c = r[p];
                    if c != 0 {
                        for (x, y) in r.iter_mut().zip(&v) {
                            *x = (*x + P - mulmod(c, *y)) % P;
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the span of all words in `gens` (plus the empty word when
/// `unital`). Words are grown one letter at a time on the right; only words
/// that enlarged the span are extended, and the search stops once a whole
/// length adds nothing.
pub fn word_closure_dim(gens: &[ModMatrix], n: usize, unital: bool) -> usize {
    let mut span = ModSpan::default();
    let mut frontier: Vec<ModMatrix> = Vec::new();
    if unital {
        let id = from_i64(n, |i, j| i64::from(i == j));
        span.add(id.clone());
        frontier.push(id);
    }
    for g in gens {
        if span.add(g.clone()) {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let wg = mod_mul(w, g, n);
                if span.add(wg.clone()) {
                    next.push(wg);
                }
            }
        }
        frontier = next;
    }
    span.dim()
}

/// BFS distances from `base`, computed from scratch.
pub fn bfs(g: &Graph, base: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[base] = 0;
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if g.has_edge(u, v) && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Generators of `T` (adjacency and shell projectors) and of `Q` (lowering,
/// flat and raising parts) built directly from BFS distances.
pub fn oracle_generators(g: &Graph, base: usize) -> (Vec<ModMatrix>, Vec<ModMatrix>) {
    let n = g.vertex_count();
    let dist = bfs(g, base);
    let diam = *dist.iter().max().unwrap();
    let adj = |i: usize, j: usize| g.has_edge(i, j);
    let mut t = vec![from_i64(n, |i, j| i64::from(adj(i, j)))];
    for s in 0..=diam {
        t.push(from_i64(n, |i, j| i64::from(i == j && dist[i] == s)));
    }
    // Row vertex i, column vertex j: L lowers the shell of the column.
    let part = |delta: i64| {
        from_i64(n, |i, j| {
            i64::from(adj(i, j) && dist[i] as i64 - dist[j] as i64 == delta)
        })
    };
    (t, vec![part(-1), part(0), part(1)])
}

/// graph6 encoder written from the format description.
pub fn reference_graph6(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)));
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for k in 0..6 {
            v = (v << 1) | u8::from(chunk.get(k).copied().unwrap_or(false));
        }
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}
