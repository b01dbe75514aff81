#![allow(dead_code)]

use std::sync::OnceLock;

use bbgroups::census;
use bbgroups::Graph;
use proptest::prelude::*;

/// Every isomorphism type on at most 7 vertices.
pub fn graphs_up_to_7() -> &'static [Graph] {
    static ALL: OnceLock<Vec<Graph>> = OnceLock::new();
    ALL.get_or_init(|| (0..=7).flat_map(census::graphs).collect())
}

pub fn graphs_up_to(n: usize) -> impl Iterator<Item = &'static Graph> {
    graphs_up_to_7().iter().filter(move |g| g.n() <= n)
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for w in u + 1..n {
            if bits[i] {
                edges.push((u, w));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random labelled graph on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.is_connected())
}
