mod common;

use bbgroups::series::{
    chen_ranks, chen_ranks_by_substitution, clique_polynomial, graph_lcs_ranks, lcs_generating_series, lcs_ranks,
    product_from_ranks, witt_ranks,
};
use bbgroups::GroupKind;
use common::{arb_connected_graph, arb_graph, graphs_up_to, graphs_up_to_7};
use proptest::prelude::*;

#[test]
fn trees_give_free_groups() {
    for t in graphs_up_to_7().iter().filter(|g| g.n() >= 2 && g.is_connected() && g.edge_count() == g.n() - 1) {
        let lcs = graph_lcs_ranks(t, GroupKind::Bb, 8).unwrap();
        assert_eq!(lcs.values, witt_ranks(t.n() as u64 - 1, 8).values, "{t:?}");
    }
}

#[test]
fn bb_and_raag_ranks_differ_only_in_degree_one() {
    for g in graphs_up_to(6).filter(|g| g.is_connected()) {
        let bb = graph_lcs_ranks(g, GroupKind::Bb, 10).unwrap().to_u64s();
        let raag = graph_lcs_ranks(g, GroupKind::Raag, 10).unwrap().to_u64s();
        assert_eq!(raag[0], bb[0] + 1, "{g:?}");
        assert_eq!(raag[1..], bb[1..], "{g:?}");
    }
}

#[test]
fn chen_closed_form_matches_substitution() {
    for g in graphs_up_to_7() {
        let cut = g.cut_coefficients(None);
        for mode in [GroupKind::Raag, GroupKind::Bb] {
            assert_eq!(
                chen_ranks(&cut, mode, 12).values,
                chen_ranks_by_substitution(&cut, mode, 12).values,
                "{g:?} {mode:?}"
            );
        }
    }
}

#[test]
fn chen_and_lcs_agree_through_degree_three() {
    for g in graphs_up_to(6).filter(|g| g.is_connected()) {
        for mode in [GroupKind::Raag, GroupKind::Bb] {
            let phi = graph_lcs_ranks(g, mode, 3).unwrap().to_u64s();
            let theta = chen_ranks(&g.cut_coefficients(None), mode, 3).to_u64s();
            assert_eq!(phi[1..], theta[1..], "{g:?} {mode:?}");
        }
    }
}

proptest! {
    #[test]
    fn extraction_round_trip(g in arb_graph(9), n in 1usize..=12) {
        for mode in [GroupKind::Raag, GroupKind::Bb] {
            let p = clique_polynomial(&g);
            let ranks = lcs_ranks(&p, mode, n).unwrap();
            let f = lcs_generating_series(&p, mode, n + 1);
            let rebuilt = product_from_ranks(&ranks.values, n + 1);
            prop_assert_eq!(rebuilt.coeffs(), f.coeffs());
        }
    }

    #[test]
    fn falk_randell_on_larger_graphs(g in arb_connected_graph(9)) {
        let bb = graph_lcs_ranks(&g, GroupKind::Bb, 8).unwrap().to_u64s();
        let raag = graph_lcs_ranks(&g, GroupKind::Raag, 8).unwrap().to_u64s();
        prop_assert_eq!(raag[0], bb[0] + 1);
        prop_assert_eq!(&raag[1..], &bb[1..]);
    }

    #[test]
    fn truncated_chen_is_a_prefix(g in arb_graph(8), m in 0usize..8) {
        let full = chen_ranks(&g.cut_coefficients(None), GroupKind::Raag, 10);
        let cut = chen_ranks(&g.cut_coefficients(Some(m)), GroupKind::Raag, 10);
        prop_assert_eq!(&full.values[..cut.values.len()], &cut.values[..]);
        prop_assert_eq!(cut.truncated, cut.values.len() < 10);
    }
}
