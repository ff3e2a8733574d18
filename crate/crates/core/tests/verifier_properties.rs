//! Differential and property tests for the verifiers.

use pathstab_core::cliques::StabilitySolver;
use pathstab_core::digraph::{Digraph, LayeredDigraph};
use pathstab_core::graph::{Layering, UGraph};
use pathstab_core::random::{sample_digraph_with, substream};
use pathstab_core::verifier::{
    gallai_milgram_partition, lower_bound_remaining, maximal_paths, validate_path_partition,
    verify_adversarial, verify_exhaustive, Budget, VerdictOutcome,
};

use proptest::prelude::*;

mod oracle {
    use pathstab_core::digraph::Digraph;

    pub fn stability_masked(d: &Digraph, alive: u32) -> usize {
        let n = d.n();
        assert!(n <= 16);
        let mut best = 0;
        for mask in 0u32..1u32 << n {
            if mask & !alive != 0 {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() <= best {
                continue;
            }
            let ok = verts.iter().enumerate().all(|(i, &u)| {
                verts[i + 1..]
                    .iter()
                    .all(|&v| !d.has_arc(u, v) && !d.has_arc(v, u))
            });
            if ok {
                best = verts.len();
            }
        }
        best
    }

    pub fn stability(d: &Digraph) -> usize {
        stability_masked(d, (1u32 << d.n()) - 1)
    }

    /// All simple directed paths as vertex masks, by plain DFS extension.
    pub fn all_path_masks(d: &Digraph) -> Vec<u32> {
        let n = d.n();
        let mut out = Vec::new();
        fn extend(d: &Digraph, last: usize, mask: u32, out: &mut Vec<u32>) {
            out.push(mask);
            for v in d.out_neighbors(last).iter() {
                if mask >> v & 1 == 0 {
                    extend(d, v, mask | 1 << v, out);
                }
            }
        }
        for s in 0..n {
            extend(d, s, 1 << s, &mut out);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Naive check over unions of up to k-1 arbitrary directed paths
    /// (not just maximal ones): true iff every deletion leaves stability
    /// at least k and the digraph's own stability equals k.
    pub fn deletion_property_holds(d: &Digraph, k: usize) -> bool {
        if stability(d) != k {
            return false;
        }
        let full = (1u32 << d.n()) - 1;
        let paths = all_path_masks(d);
        let mut unions = vec![0u32];
        if k >= 2 {
            unions.extend(paths.iter().copied());
        }
        if k >= 3 {
            for (i, &a) in paths.iter().enumerate() {
                for &b in &paths[i..] {
                    unions.push(a | b);
                }
            }
        }
        assert!(k <= 3, "oracle written for k <= 3");
        unions.sort_unstable();
        unions.dedup();
        unions
            .into_iter()
            .all(|u| stability_masked(d, full & !u) >= k)
    }
}

#[test]
fn exhaustive_agrees_with_all_paths_oracle() {
    let mut checked_holds = 0usize;
    let mut checked_fails = 0usize;
    let mut trial = 0u64;
    for n in 2..=7usize {
        for p in [0.1, 0.25, 0.4, 0.6] {
            for _ in 0..8 {
                trial += 1;
                let d = sample_digraph_with(n, p, &mut substream(40_000 + trial, 0));
                for k in 1..=3usize {
                    let verdict = verify_exhaustive(&d, k, 10_000_000, false);
                    let expected = oracle::deletion_property_holds(&d, k);
                    match verdict.outcome {
                        VerdictOutcome::HoldsExhaustive => {
                            assert!(expected, "false positive at n={n} k={k} trial={trial}");
                            checked_holds += 1;
                        }
                        VerdictOutcome::Fails => {
                            assert!(!expected, "false negative at n={n} k={k} trial={trial}");
                            checked_fails += 1;
                        }
                        other => panic!("unexpected outcome {other:?}"),
                    }
                }
            }
        }
    }
    assert!(
        checked_holds > 0 && checked_fails > 0,
        "both sides exercised"
    );
}

#[test]
fn negative_controls() {
    // Two isolated vertices at k = 2 fail; any tournament at k = 1 holds.
    let v = verify_exhaustive(&Digraph::empty(2), 2, 100_000, false);
    assert_eq!(v.outcome, VerdictOutcome::Fails);
    let v = verify_exhaustive(&Digraph::transitive_tournament(6), 1, 100_000, false);
    assert_eq!(v.outcome, VerdictOutcome::HoldsExhaustive);
}

#[test]
fn failing_counterexamples_revalidate() {
    let mut seen = 0usize;
    for trial in 0..60u64 {
        let n = 4 + (trial as usize % 4);
        let d = sample_digraph_with(n, 0.3, &mut substream(50_000 + trial, 0));
        for k in 2..=3usize {
            let verdict = verify_exhaustive(&d, k, 10_000_000, false);
            if verdict.outcome != VerdictOutcome::Fails {
                continue;
            }
            let c = verdict
                .counterexample
                .expect("fails carries counterexample");
            assert!(c.paths.len() < k);
            let mut deleted = 0u32;
            for path in &c.paths {
                assert!(pathstab_core::digraph::is_directed_path(&d, path));
                for &v in path {
                    deleted |= 1 << v;
                }
            }
            let full = (1u32 << d.n()) - 1;
            let alpha = oracle::stability_masked(&d, full & !deleted);
            assert_eq!(alpha, c.remaining_stability);
            assert!(alpha < k || c.paths.is_empty());
            seen += 1;
        }
    }
    assert!(seen > 5, "enough failing instances exercised");
}

#[test]
fn adversarial_agrees_on_deletion_failures() {
    // On instances where the exhaustive check finds a damaging deletion
    // (not a stability mismatch), the adversarial search must find one
    // too, given budget.
    let mut seen = 0usize;
    for trial in 0..80u64 {
        let n = 4 + (trial as usize % 5);
        let d = sample_digraph_with(n, 0.35, &mut substream(60_000 + trial, 0));
        for k in 2..=3usize {
            let exhaustive = verify_exhaustive(&d, k, 10_000_000, false);
            let mismatch = exhaustive
                .counterexample
                .as_ref()
                .is_some_and(|c| c.paths.is_empty());
            if exhaustive.outcome != VerdictOutcome::Fails || mismatch {
                continue;
            }
            let adversarial = verify_adversarial(&d, k, 3_000, trial, false);
            assert_eq!(
                adversarial.outcome,
                VerdictOutcome::Fails,
                "n={n} k={k} trial={trial}"
            );
            seen += 1;
        }
    }
    assert!(seen > 5, "enough failing instances exercised");
}

#[test]
fn gallai_milgram_bound_on_random_digraphs() {
    for trial in 0..200u64 {
        let n = 5 + (trial as usize % 5); // 5..9
        let p = [0.1, 0.2, 0.3, 0.5][trial as usize % 4];
        let d = sample_digraph_with(n, p, &mut substream(70_000 + trial, 0));
        let partition = gallai_milgram_partition(&d);
        validate_path_partition(&d, &partition).unwrap();
        assert!(partition.len() <= oracle::stability(&d));
    }
}

#[test]
fn lower_bound_equals_minimum_on_complete_layered_digraphs() {
    // Host = disjoint union of layer cliques, so every cross pair is a
    // non-edge and becomes an arc. Then k-1 disjoint maximal paths each
    // hit every layer once, and the brute-force minimum remainder is
    // exactly t.
    for (k, t) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        let n = k * t;
        let layers: Vec<Vec<usize>> = (0..t).map(|i| (i * k..(i + 1) * k).collect()).collect();
        let mut edges = Vec::new();
        for layer in &layers {
            for (a, &u) in layer.iter().enumerate() {
                for &v in layer.iter().skip(a + 1) {
                    edges.push((u, v));
                }
            }
        }
        let host = UGraph::from_edges(n, edges).unwrap();
        let layering = Layering::new(k, layers, &host).unwrap();
        let d = LayeredDigraph::build(&host, &layering);
        assert_eq!(d.arc_count(), k * k * t * (t - 1) / 2);
        assert_eq!(lower_bound_remaining(&d, k), t);
        assert_eq!(brute_min_remaining(d.dense(), k), t);
    }
}

#[test]
fn lower_bound_is_a_true_lower_bound_on_sparse_instances() {
    use pathstab_core::construction::{construct_witness, theoretical_thresholds, PipelineOptions};
    use pathstab_core::format::parse_layered_json;
    use pathstab_core::random::ParamSet;
    for seed in 0..6u64 {
        let params = ParamSet::new(9, 2, 0.45, 900 + seed).unwrap();
        let options = PipelineOptions::new(theoretical_thresholds(2).unwrap(), 3);
        let report = construct_witness(&params, &options).unwrap();
        let Some(candidate) = report.candidate else {
            continue;
        };
        let d = parse_layered_json(&serde_json::to_string(&candidate.d).unwrap()).unwrap();
        if d.vertex_count() == 0 {
            continue;
        }
        let bound = lower_bound_remaining(&d, 2);
        assert!(bound <= brute_min_remaining(d.dense(), 2));
    }
}

/// Exhaustive minimum of remaining vertices over all multisets of up to
/// k-1 maximal paths.
fn brute_min_remaining(d: &Digraph, k: usize) -> usize {
    let paths = maximal_paths(d, &mut Budget::new(10_000_000)).unwrap();
    let masks: Vec<u64> = paths
        .iter()
        .map(|p| p.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut best = d.n();
    let mut stack: Vec<(usize, u64, usize)> = vec![(0, 0, 0)];
    while let Some((next, union, chosen)) = stack.pop() {
        best = best.min(d.n() - union.count_ones() as usize);
        if chosen + 1 >= k {
            continue;
        }
        for (i, mask) in masks.iter().enumerate().skip(next) {
            stack.push((i, union | mask, chosen + 1));
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn deletion_monotonicity(seed in 0u64..10_000, extra in proptest::collection::vec(0usize..8, 0..4)) {
        // stability(d - Y) <= stability(d - X) for X a subset of Y.
        let d = sample_digraph_with(8, 0.3, &mut substream(80_000 + seed, 0));
        let solver = StabilitySolver::new(&d);
        let mut x = pathstab_core::bitset::Bitset::full(8);
        x.remove(seed as usize % 8);
        let mut y = x.clone();
        for v in extra {
            y.remove(v);
        }
        let s_y = solver.stability(Some(&y), None).unwrap().size;
        let s_x = solver.stability(Some(&x), None).unwrap().size;
        prop_assert!(s_y <= s_x);
    }
}
