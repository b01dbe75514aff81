mod common;

use bbgroups::alexander::{alexander_presentation, infinitesimal_presentation};
use bbgroups::homology::{simply_connected_status, FlagComplex, Status};
use bbgroups::jump_loci::{
    crosscheck, not_artin_certificate, resonance_components, subspace_intersection_dim, CertificateKind,
    ResonanceVariety, SubspaceComponent,
};
use bbgroups::triangulation::{build_special_random, extend_extra_special};
use bbgroups::{GroupKind, VertexSet};
use common::graphs_up_to;
use proptest::prelude::*;

#[test]
fn alexander_matrix_shapes() {
    for g in graphs_up_to(7) {
        let f = g.clique_counts();
        let triangles = f.get(3).copied().unwrap_or(0) as usize;
        let n = g.n();
        let triples = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        for m in [alexander_presentation(g), infinitesimal_presentation(g)] {
            assert_eq!(m.ncols(), g.non_edges().len(), "{g:?}");
            assert_eq!(m.nrows(), triples - triangles, "{g:?}");
        }
    }
}

#[test]
fn raag_components_agree_with_alexander_oracles_on_all_small_graphs() {
    for (i, g) in graphs_up_to(6).filter(|g| g.n() > 0).enumerate() {
        let s = crosscheck(g, i as u64, 10, false);
        let raag: Vec<_> = s.disagreements.iter().filter(|d| d.target == GroupKind::Raag).collect();
        assert!(raag.is_empty(), "{g:?}: {raag:?}");
        assert!(s.all_agree(), "{g:?}: {:?}", s.disagreements);
    }
}

fn components(g: &bbgroups::Graph, target: GroupKind) -> Vec<SubspaceComponent> {
    match resonance_components(g, target, false).unwrap() {
        ResonanceVariety::Components(cs) => cs,
        ResonanceVariety::Full { .. } => Vec::new(),
    }
}

#[test]
fn component_lists_are_antichains_of_the_right_dimension() {
    for g in graphs_up_to(6).filter(|g| g.n() >= 2) {
        let mut targets = vec![GroupKind::Raag];
        if g.is_connected() && simply_connected_status(&FlagComplex::new(g)).status == Status::Yes {
            targets.push(GroupKind::Bb);
        }
        for target in targets {
            let cs = components(g, target);
            for (i, a) in cs.iter().enumerate() {
                assert_eq!(a.dim(), a.subset.len(), "{g:?} {target:?} {:?}", a.subset);
                for (j, b) in cs.iter().enumerate() {
                    if i != j {
                        assert!(!a.subset.is_subset(b.subset), "{g:?} {target:?}");
                        assert!(subspace_intersection_dim(&[a, b]).unwrap() < a.dim());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extra_special_boundary_components_have_codimension_r_minus_one(seed in 0u64..1000, count in 0usize..5) {
        let d = extend_extra_special(&build_special_random(seed, count)).unwrap();
        let g = d.graph();
        let cs = components(g, GroupKind::Bb);
        let boundary: Vec<&SubspaceComponent> = d
            .core_boundary()
            .iter()
            .map(|&(a, b)| {
                let w = g.vertex_set().difference(VertexSet::from_indices([a, b]));
                cs.iter().find(|c| c.subset == w).expect("boundary component")
            })
            .collect();
        let r = boundary.len();
        let codim = boundary[0].ambient_dim() - subspace_intersection_dim(&boundary).unwrap();
        prop_assert_eq!(codim, r - 1);
        let cert = not_artin_certificate(g, false).unwrap();
        prop_assert_eq!(cert.kind, CertificateKind::NotArtin);
    }
}
