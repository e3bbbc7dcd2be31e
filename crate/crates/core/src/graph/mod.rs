//! Simple connected graphs, their generators, and distance partitions
//! around a base vertex.

mod dual_polar;
mod enumerate;
pub mod graph6;
mod hamming;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

pub use dual_polar::{dual_polar_vertex_count, gen_dual_polar};
pub use enumerate::connected_graphs;
pub use hamming::{gen_hamming, hamming_tuple};

/// Default cap on the number of vertices a generator may produce.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Finite, simple, undirected, connected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges,
    /// out-of-range endpoints and disconnected results.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges_unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(Error::Validation("graph is disconnected".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_edges_unchecked_connectivity(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("loop at vertex {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::Validation(format!("repeated edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Degree of every vertex if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }
}

/// BFS shells around a base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistancePartition {
    pub base: usize,
    pub dist: Vec<usize>,
    /// `D(x)`, the largest distance from the base.
    pub diameter: usize,
    pub shells: Vec<Vec<usize>>,
}

impl DistancePartition {
    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }

    pub fn shell_sizes(&self) -> Vec<usize> {
        self.shells.iter().map(Vec::len).collect()
    }
}

/// Distances from `base` and the shells they induce.
pub fn distance_partition(g: &Graph, base: usize) -> Result<DistancePartition> {
    if base >= g.vertex_count() {
        return Err(Error::Argument(format!(
            "base vertex {base} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    let dist: Vec<usize> = g
        .bfs(base)
        .into_iter()
        .map(|d| d.expect("graph is connected"))
        .collect();
    let diameter = dist.iter().copied().max().unwrap_or(0);
    let mut shells = vec![Vec::new(); diameter + 1];
    for (v, &d) in dist.iter().enumerate() {
        shells[d].push(v);
    }
    Ok(DistancePartition {
        base,
        dist,
        diameter,
        shells,
    })
}
