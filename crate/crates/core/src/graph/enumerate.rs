use std::collections::BTreeSet;

use super::Graph;

/// All connected graphs on `n` vertices up to isomorphism (`n <= 7`),
/// each labelled by its lexicographically smallest edge mask.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "enumeration supports 1..=7 vertices");
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if !connected(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .fold(0u64, |acc, (_, &(i, j))| acc | 1 << index[p[i]][p[j]])
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("connected by construction")
        })
        .collect()
}

fn connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (reach >> i & 1 == 1 || reach >> j & 1 == 1) {
                next |= 1 << i | 1 << j;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // OEIS A001349.
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }
}
