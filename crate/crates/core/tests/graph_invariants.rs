mod common;

use bbgroups::{Graph, VertexSet};
use common::{arb_graph, graphs_up_to_7};
use proptest::prelude::*;

/// Components of the induced subgraph by repeated flood fill over an edge list.
fn components(g: &Graph, subset: &[usize]) -> usize {
    let mut label: Vec<Option<usize>> = vec![None; g.n()];
    let mut count = 0;
    for &s in subset {
        if label[s].is_some() {
            continue;
        }
        label[s] = Some(count);
        let mut frontier = vec![s];
        while let Some(v) = frontier.pop() {
            for &(a, b) in g.edges() {
                let other = if a == v { b } else if b == v { a } else { continue };
                if subset.contains(&other) && label[other].is_none() {
                    label[other] = Some(count);
                    frontier.push(other);
                }
            }
        }
        count += 1;
    }
    count
}

fn cut_oracle(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut c = vec![0u64; n + 1];
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        c[subset.len()] += components(g, &subset) as u64 - 1;
    }
    c
}

#[test]
fn cut_coefficients_match_subset_oracle() {
    for g in graphs_up_to_7() {
        let cut = g.cut_coefficients(None);
        let oracle = cut_oracle(g);
        for (j, &c) in oracle.iter().enumerate() {
            assert_eq!(cut.get(j), Some(c), "{g:?} j={j}");
        }
    }
}

#[test]
fn cut_coefficients_vanish_outside_connectivity_window() {
    for g in graphs_up_to_7() {
        let (n, kappa) = (g.n(), g.connectivity());
        let cut = g.cut_coefficients(None);
        for j in 0..=n {
            let zero = cut.get(j) == Some(0);
            assert_eq!(zero, j < 2 || j > n - kappa, "{g:?} j={j} kappa={kappa}");
        }
    }
}

#[test]
fn maximal_disconnected_subsets_are_maximal() {
    for g in graphs_up_to_7() {
        let n = g.n();
        let full = g.vertex_set();
        for w in g.maximal_disconnected_subsets() {
            assert!(components(g, &w.to_vec()) > 1, "{g:?} {w:?}");
            for mask in 0u64..(1 << n) {
                let u = VertexSet::from_indices((0..n).filter(|&v| mask >> v & 1 == 1));
                if w.is_subset(u) && u != w && u.is_subset(full) {
                    assert_eq!(components(g, &u.to_vec()), 1, "{g:?} {w:?} ⊂ {u:?}");
                }
            }
        }
    }
}

#[test]
fn edge_counts_complement_non_edges() {
    for g in graphs_up_to_7() {
        let f = g.clique_counts();
        let f2 = f.get(2).copied().unwrap_or(0) as usize;
        assert_eq!(f2 + g.non_edges().len(), g.n() * g.n().saturating_sub(1) / 2);
    }
}

proptest! {
    #[test]
    fn cut_coefficients_match_oracle_on_larger_graphs(g in arb_graph(10)) {
        let cut = g.cut_coefficients(None);
        let oracle = cut_oracle(&g);
        for (j, &c) in oracle.iter().enumerate() {
            prop_assert_eq!(cut.get(j), Some(c));
        }
    }

    #[test]
    fn truncated_cut_agrees_on_its_window(g in arb_graph(9), m in 0usize..9) {
        let full = g.cut_coefficients(None);
        let cut = g.cut_coefficients(Some(m));
        for j in 0..=cut.computed_up_to() {
            prop_assert_eq!(cut.get(j), full.get(j));
        }
        prop_assert_eq!(cut.truncated, m < g.n());
    }

    #[test]
    fn connectivity_is_the_smallest_separator(g in arb_graph(8)) {
        let n = g.n();
        let kappa = g.connectivity();
        let separates = |k: usize| (0u64..(1 << n)).any(|mask| {
            let removed = VertexSet::from_indices((0..n).filter(|&v| mask >> v & 1 == 1));
            removed.len() == k && n - k >= 2 && components(&g, &removed.complement(n).to_vec()) > 1
        });
        if g.edge_count() == n * (n - 1) / 2 {
            prop_assert_eq!(kappa, n.saturating_sub(1));
        } else {
            prop_assert!(separates(kappa));
            for k in 0..kappa {
                prop_assert!(!separates(k));
            }
        }
    }
}
