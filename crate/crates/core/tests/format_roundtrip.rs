//! Serialization round trips and structural graph properties.

use pathstab_core::digraph::{Digraph, LayeredDigraph};
use pathstab_core::format::{
    parse_digraph, parse_layered_json, parse_ugraph, write_digraph, write_layered_json,
    write_ugraph,
};
use pathstab_core::graph::{Layering, UGraph};

use proptest::prelude::*;

fn arb_ugraph() -> impl Strategy<Value = UGraph> {
    (1usize..14)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, slots)| {
            let mut edges = Vec::new();
            let mut it = slots.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            UGraph::from_edges(n, edges).unwrap()
        })
}

fn arb_digraph() -> impl Strategy<Value = Digraph> {
    (1usize..12)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, slots)| {
            let mut arcs = Vec::new();
            let mut it = slots.into_iter();
            for u in 0..n {
                for v in 0..n {
                    let present = it.next().unwrap();
                    if u != v && present {
                        arcs.push((u, v));
                    }
                }
            }
            Digraph::from_arcs(n, arcs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ugraph_text_round_trip(g in arb_ugraph()) {
        let text = write_ugraph(&g);
        prop_assert_eq!(parse_ugraph(&text).unwrap(), g);
    }

    #[test]
    fn digraph_text_round_trip(d in arb_digraph()) {
        let text = write_digraph(&d);
        prop_assert_eq!(parse_digraph(&text).unwrap(), d);
    }

    #[test]
    fn complement_involution_randomized(g in arb_ugraph()) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(
            g.edge_count() + g.complement().edge_count(),
            g.n() * (g.n() - 1) / 2
        );
    }
}

#[test]
fn complement_involution_exhaustive_up_to_n5() {
    for n in 0..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = UGraph::from_edges(n, edges).unwrap();
            assert_eq!(g.complement().complement(), g);
            assert_eq!(
                g.edge_count() + g.complement().edge_count(),
                n * (n.max(1) - 1) / 2
            );
        }
    }
}

#[test]
fn layered_json_round_trip_from_pipeline_artifacts() {
    use pathstab_core::cliques::greedy_disjoint_cliques;
    use pathstab_core::random::{sample_gnp_with, substream};
    for trial in 0..20u64 {
        let g = sample_gnp_with(14, 0.5, &mut substream(90_000 + trial, 0));
        let layering = greedy_disjoint_cliques(&g, 2);
        if layering.is_empty() {
            continue;
        }
        let d = LayeredDigraph::build(&g, &layering);
        let text = write_layered_json(&d);
        let parsed = parse_layered_json(&text).unwrap();
        assert_eq!(parsed.layers(), d.layers());
        assert_eq!(parsed.arcs_host(), d.arcs_host());
        assert_eq!(parsed.host_n(), d.host_n());
        assert_eq!(write_layered_json(&parsed), text);
    }
}

#[test]
fn layering_round_trips_through_report_arrays() {
    // Layerings serialize inside reports as nested arrays and are
    // re-validated against the host graph on the way back in.
    let g = UGraph::complete(6);
    let layering = Layering::new(2, vec![vec![0, 1], vec![4, 5]], &g).unwrap();
    let text = serde_json::to_string(layering.layers()).unwrap();
    let layers: Vec<Vec<usize>> = serde_json::from_str(&text).unwrap();
    let parsed = Layering::new(2, layers, &g).unwrap();
    assert_eq!(parsed, layering);
}
