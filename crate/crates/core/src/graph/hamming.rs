use super::Graph;
use crate::error::{Error, Result};

/// Hamming graph `H(D, N)`.
///
/// Vertex `k` is the `D`-tuple over `{1..N}` whose base-`N` digits (most
/// significant first) are the coordinates minus one, so vertices appear in
/// lexicographic order. Two tuples are adjacent iff they differ in exactly
/// one coordinate.
pub fn gen_hamming(d: usize, n: usize, size_cap: usize) -> Result<Graph> {
    if d == 0 {
        return Err(Error::UnsupportedParameter(
            "Hamming diameter D must be positive".into(),
        ));
    }
    if n < 2 {
        return Err(Error::UnsupportedParameter(
            "Hamming alphabet size N must be at least 2".into(),
        ));
    }
    let count = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > size_cap as u128 {
        return Err(Error::Capacity {
            requested: count,
            cap: size_cap,
        });
    }
    let count = count as usize;
    let mut edges = Vec::with_capacity(count * d * (n - 1) / 2);
    for v in 0..count {
        let mut stride = 1;
        for _ in 0..d {
            let digit = (v / stride) % n;
            for other in digit + 1..n {
                edges.push((v, v + (other - digit) * stride));
            }
            stride *= n;
        }
    }
    Graph::from_edges(count, &edges)
}

/// Coordinates of a Hamming vertex, values in `1..=N`.
pub fn hamming_tuple(v: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    let mut rest = v;
    for slot in out.iter_mut().rev() {
        *slot = rest % n + 1;
        rest /= n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{distance_partition, DEFAULT_SIZE_CAP};

    #[test]
    fn h12_is_k2() {
        let g = gen_hamming(1, 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn h22_is_c4() {
        let g = gen_hamming(2, 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn cube() {
        let g = gen_hamming(3, 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert_eq!(g.regular_degree(), Some(3));
        for x in 0..8 {
            let p = distance_partition(&g, x).unwrap();
            assert_eq!(p.shell_sizes(), vec![1, 3, 3, 1]);
        }
    }

    #[test]
    fn adjacency_matches_tuples() {
        let (d, n) = (3, 3);
        let g = gen_hamming(d, n, DEFAULT_SIZE_CAP).unwrap();
        for u in 0..27 {
            for v in 0..27 {
                let tu = hamming_tuple(u, d, n);
                let tv = hamming_tuple(v, d, n);
                let diff = tu.iter().zip(&tv).filter(|(a, b)| a != b).count();
                assert_eq!(g.has_edge(u, v), diff == 1);
            }
        }
        assert_eq!(hamming_tuple(0, d, n), vec![1, 1, 1]);
        assert_eq!(hamming_tuple(26, d, n), vec![3, 3, 3]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            gen_hamming(13, 2, DEFAULT_SIZE_CAP),
            Err(Error::Capacity { requested: 8192, .. })
        ));
        assert!(gen_hamming(12, 2, DEFAULT_SIZE_CAP).is_ok());
    }
}
