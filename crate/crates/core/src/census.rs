//! Isomorphism types of small graphs, for exhaustive sweeps.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::graph::Graph;

fn pair_bit(n: usize, u: usize, w: usize) -> u32 {
    let (a, b) = (u.min(w), u.max(w));
    (a * (2 * n - a - 1) / 2 + (b - a - 1)) as u32
}

fn edge_mask(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    edges.iter().fold(0, |m, &(u, w)| m | 1 << pair_bit(n, perm[u], perm[w]))
}

/// Smallest edge bitmask over all vertex relabellings. Equal for isomorphic graphs.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 10, "canonical forms are computed by brute force");
    (0..n)
        .permutations(n)
        .map(|p| edge_mask(n, g.edges(), &p))
        .min()
        .unwrap_or(0)
}

fn from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, w)| mask >> pair_bit(n, u, w) & 1 == 1)
        .collect();
    Graph::from_edges(n, &edges).expect("valid mask")
}

/// One graph per isomorphism type on `n` vertices, built by adding a vertex to
/// every type on `n - 1` vertices in every possible way.
pub fn graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut seen = BTreeSet::new();
    for g in graphs(n - 1) {
        for nbrs in 0u64..1 << (n - 1) {
            let mut edges = g.edges().to_vec();
            edges.extend((0..n - 1).filter(|&v| nbrs >> v & 1 == 1).map(|v| (v, n - 1)));
            seen.insert(canonical_mask(&Graph::from_edges(n, &edges).expect("simple")));
        }
    }
    seen.into_iter().map(|m| from_mask(n, m)).collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    graphs(n).into_iter().filter(Graph::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequences() {
        let all: Vec<usize> = (1..=5).map(|n| graphs(n).len()).collect();
        assert_eq!(all, [1, 2, 4, 11, 34]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn isomorphic_graphs_share_a_mask() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_mask(&a), canonical_mask(&b));
        assert_ne!(canonical_mask(&a), canonical_mask(&Graph::cycle(4)));
    }
}
