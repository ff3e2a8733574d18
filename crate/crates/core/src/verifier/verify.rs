//! Path-deletion stability verification.
//!
//! A digraph has the target property for `k` when its stability number is
//! `k` and deleting the vertices of any `k-1` directed paths leaves
//! stability at least `k` (equivalently exactly `k`, since deletion never
//! increases stability). By the same monotonicity, a deleted path's
//! vertices are a subset of some maximal path's, so the exhaustive check
//! only needs maximal paths; paths may share vertices by default, and a
//! single vertex counts as a path. In disjoint mode (pairwise
//! vertex-disjoint paths) the maximality reduction is unsound - extending
//! one chosen path can collide with another - so that mode enumerates all
//! paths instead.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::cliques::{SolverError, StabilitySolver};
use crate::digraph::{Digraph, LayeredDigraph};
use crate::random::substream;
use crate::verifier::paths::{all_paths, maximal_paths, Budget};

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Node budget for each exact stability solve inside verification.
pub const SOLVER_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictOutcome {
    #[serde(rename = "holds-exhaustive")]
    HoldsExhaustive,
    #[serde(rename = "holds-no-counterexample")]
    HoldsNoCounterexample,
    #[serde(rename = "fails")]
    Fails,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// A checkable witness that the property fails: deleting the vertices of
/// `paths` (at most k-1 of them) leaves a digraph whose maximum stable set
/// is `remaining_stable_set`, smaller than `required_stability`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub paths: Vec<Vec<usize>>,
    pub remaining_stable_set: Vec<usize>,
    pub remaining_stability: usize,
    pub required_stability: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyStats {
    pub paths_enumerated: u64,
    pub deletions_examined: u64,
    pub trials: u64,
    pub budget_limit: u64,
    pub budget_used: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub schema_version: String,
    pub mode: String,
    pub outcome: VerdictOutcome,
    pub k: usize,
    pub disjoint: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub stats: VerifyStats,
}

impl Verdict {
    fn new(mode: &str, outcome: VerdictOutcome, k: usize, disjoint: bool) -> Self {
        Verdict {
            schema_version: "1".to_string(),
            mode: mode.to_string(),
            outcome,
            k,
            disjoint,
            reason: None,
            counterexample: None,
            stats: VerifyStats::default(),
        }
    }
}

/// True when all arcs are strictly layer-increasing, which forces every
/// directed path to visit at most one vertex per layer; returns the first
/// violating arc otherwise.
pub fn check_layer_path_property(d: &LayeredDigraph) -> Result<(), (usize, usize)> {
    match d.first_orientation_violation() {
        None => Ok(()),
        Some(arc) => Err(arc),
    }
}

/// Guaranteed number of vertices remaining after deleting any k-1 directed
/// paths from a layer-monotone digraph with t layers: each path meets each
/// layer at most once, so k-1 paths delete at most (k-1)t vertices,
/// leaving |V| - (k-1)t. For t layers of size k this equals t = |V|/k.
pub fn lower_bound_remaining(d: &LayeredDigraph, k: usize) -> usize {
    d.vertex_count()
        .saturating_sub(k.saturating_sub(1) * d.layer_count())
}

fn precondition_failure(
    mode: &str,
    k: usize,
    disjoint: bool,
    solver: &StabilitySolver,
) -> Result<Option<Verdict>, SolverError> {
    let alpha = solver.stability(None, Some(SOLVER_NODE_BUDGET))?;
    if alpha.size != k {
        let mut v = Verdict::new(mode, VerdictOutcome::Fails, k, disjoint);
        v.reason = Some(format!("stability number is {}, expected {k}", alpha.size));
        v.counterexample = Some(Counterexample {
            paths: vec![],
            remaining_stable_set: alpha.witness,
            remaining_stability: alpha.size,
            required_stability: k,
        });
        return Ok(Some(v));
    }
    Ok(None)
}

fn inconclusive(
    mode: &str,
    k: usize,
    disjoint: bool,
    reason: String,
    stats: VerifyStats,
) -> Verdict {
    let mut v = Verdict::new(mode, VerdictOutcome::Inconclusive, k, disjoint);
    v.reason = Some(reason);
    v.stats = stats;
    v
}

/// Exhaustively checks the deletion property: every multiset of up to k-1
/// paths (maximal paths by default, all paths in disjoint mode) is deleted
/// and the exact stability of the remainder computed. Deletion unions are
/// memoized, so each distinct remainder is solved once. `budget` caps
/// enumeration steps plus examined deletions; exhausting it yields an
/// inconclusive verdict, never a pass.
pub fn verify_exhaustive(d: &Digraph, k: usize, budget_limit: u64, disjoint: bool) -> Verdict {
    assert!(k >= 1);
    let mode = "exhaustive";
    let solver = StabilitySolver::new(d);
    let mut stats = VerifyStats {
        budget_limit,
        ..VerifyStats::default()
    };
    match precondition_failure(mode, k, disjoint, &solver) {
        Ok(Some(mut verdict)) => {
            verdict.stats = stats;
            return verdict;
        }
        Ok(None) => {}
        Err(SolverError::BudgetExceeded { .. }) => {
            return inconclusive(
                mode,
                k,
                disjoint,
                "stability solve exceeded its node budget".to_string(),
                stats,
            )
        }
    }
    let mut budget = Budget::new(budget_limit);
    let paths = match if disjoint {
        all_paths(d, &mut budget)
    } else {
        maximal_paths(d, &mut budget)
    } {
        Ok(paths) => paths,
        Err(_) => {
            stats.budget_used = budget.used;
            return inconclusive(
                mode,
                k,
                disjoint,
                "path enumeration exhausted the budget".to_string(),
                stats,
            );
        }
    };
    stats.paths_enumerated = paths.len() as u64;
    let masks: Vec<Bitset> = paths
        .iter()
        .map(|p| Bitset::from_iter(d.n(), p.iter().copied()))
        .collect();

    let mut memo: HashMap<Bitset, (usize, Vec<usize>)> = HashMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    let outcome = search_deletions(
        d,
        &solver,
        k,
        disjoint,
        &paths,
        &masks,
        &mut chosen,
        0,
        &Bitset::new(d.n()),
        &mut budget,
        &mut stats,
        &mut memo,
    );
    stats.budget_used = budget.used;
    match outcome {
        DeletionSearch::AllHold => {
            let mut v = Verdict::new(mode, VerdictOutcome::HoldsExhaustive, k, disjoint);
            v.stats = stats;
            v
        }
        DeletionSearch::Counterexample(c) => {
            let mut v = Verdict::new(mode, VerdictOutcome::Fails, k, disjoint);
            v.reason = Some(format!(
                "deleting {} path(s) leaves stability {}",
                c.paths.len(),
                c.remaining_stability
            ));
            v.counterexample = Some(c);
            v.stats = stats;
            v
        }
        DeletionSearch::OutOfBudget => inconclusive(
            mode,
            k,
            disjoint,
            "deletion enumeration exhausted the budget".to_string(),
            stats,
        ),
        DeletionSearch::SolverOverrun => inconclusive(
            mode,
            k,
            disjoint,
            "a remainder stability solve exceeded its node budget".to_string(),
            stats,
        ),
    }
}

enum DeletionSearch {
    AllHold,
    Counterexample(Counterexample),
    OutOfBudget,
    SolverOverrun,
}

#[allow(clippy::too_many_arguments)]
fn search_deletions(
    d: &Digraph,
    solver: &StabilitySolver,
    k: usize,
    disjoint: bool,
    paths: &[Vec<usize>],
    masks: &[Bitset],
    chosen: &mut Vec<usize>,
    next_index: usize,
    union: &Bitset,
    budget: &mut Budget,
    stats: &mut VerifyStats,
    memo: &mut HashMap<Bitset, (usize, Vec<usize>)>,
) -> DeletionSearch {
    if budget.charge(1).is_err() {
        return DeletionSearch::OutOfBudget;
    }
    stats.deletions_examined += 1;
    let (remaining, witness) = match memo.get(union) {
        Some((r, w)) => (*r, w.clone()),
        None => {
            let mut alive = Bitset::full(d.n());
            alive.subtract(union);
            match solver.stability(Some(&alive), Some(SOLVER_NODE_BUDGET)) {
                Ok(out) => {
                    memo.insert(union.clone(), (out.size, out.witness.clone()));
                    (out.size, out.witness)
                }
                Err(SolverError::BudgetExceeded { .. }) => return DeletionSearch::SolverOverrun,
            }
        }
    };
    if remaining < k {
        return DeletionSearch::Counterexample(Counterexample {
            paths: chosen.iter().map(|&i| paths[i].clone()).collect(),
            remaining_stable_set: witness,
            remaining_stability: remaining,
            required_stability: k,
        });
    }
    if chosen.len() + 1 >= k {
        return DeletionSearch::AllHold;
    }
    for i in next_index..paths.len() {
        if disjoint && !union.is_disjoint(&masks[i]) {
            continue;
        }
        let mut next_union = union.clone();
        next_union.union_with(&masks[i]);
        chosen.push(i);
        let res = search_deletions(
            d,
            solver,
            k,
            disjoint,
            paths,
            masks,
            chosen,
            i,
            &next_union,
            budget,
            stats,
            memo,
        );
        chosen.pop();
        match res {
            DeletionSearch::AllHold => {}
            other => return other,
        }
    }
    DeletionSearch::AllHold
}

/// Randomized search for a damaging deletion: each trial draws up to k-1
/// randomized maximal paths (trial i uses substream i of `seed`), deletes
/// their union, and solves the remainder exactly. Finding a deficient
/// remainder yields a checkable counterexample; surviving all trials is
/// reported as holds-no-counterexample, never as a proof. Unlike the
/// exhaustive mode this op does not require the stability number to equal
/// k up front - it only needs remainder stability to be solvable.
pub fn verify_adversarial(
    d: &Digraph,
    k: usize,
    trials: u64,
    seed: u64,
    disjoint: bool,
) -> Verdict {
    assert!(k >= 1);
    let mode = "adversarial";
    let solver = StabilitySolver::new(d);
    let mut stats = VerifyStats {
        budget_limit: trials,
        ..VerifyStats::default()
    };
    let mut memo: HashMap<Bitset, (usize, Vec<usize>)> = HashMap::new();
    for trial in 0..trials {
        stats.trials = trial + 1;
        stats.budget_used = trial + 1;
        let mut rng = substream(seed, trial);
        let mut union = Bitset::new(d.n());
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        for _ in 0..k.saturating_sub(1) {
            let blocked = if disjoint { Some(&union) } else { None };
            if let Some(path) = random_maximal_path(d, &mut rng, blocked) {
                for &v in &path {
                    union.insert(v);
                }
                chosen.push(path);
            }
        }
        stats.deletions_examined += 1;
        let (remaining, witness) = match memo.get(&union) {
            Some((r, w)) => (*r, w.clone()),
            None => {
                let mut alive = Bitset::full(d.n());
                alive.subtract(&union);
                match solver.stability(Some(&alive), Some(SOLVER_NODE_BUDGET)) {
                    Ok(out) => {
                        memo.insert(union.clone(), (out.size, out.witness.clone()));
                        (out.size, out.witness)
                    }
                    Err(SolverError::BudgetExceeded { .. }) => {
                        return inconclusive(
                            mode,
                            k,
                            disjoint,
                            "a remainder stability solve exceeded its node budget".to_string(),
                            stats,
                        )
                    }
                }
            }
        };
        if remaining < k {
            let mut v = Verdict::new(mode, VerdictOutcome::Fails, k, disjoint);
            v.reason = Some(format!(
                "deleting {} path(s) leaves stability {remaining}",
                chosen.len()
            ));
            v.counterexample = Some(Counterexample {
                paths: chosen,
                remaining_stable_set: witness,
                remaining_stability: remaining,
                required_stability: k,
            });
            v.stats = stats;
            return v;
        }
    }
    let mut v = Verdict::new(mode, VerdictOutcome::HoldsNoCounterexample, k, disjoint);
    v.stats = stats;
    v
}

/// One randomized maximal path: uniform start among allowed vertices, then
/// uniform forward extensions until stuck, then uniform backward
/// extensions. `blocked` vertices (disjoint mode) are never used.
fn random_maximal_path(
    d: &Digraph,
    rng: &mut ChaCha8Rng,
    blocked: Option<&Bitset>,
) -> Option<Vec<usize>> {
    let allowed: Vec<usize> = (0..d.n())
        .filter(|&v| blocked.is_none_or(|b| !b.contains(v)))
        .collect();
    if allowed.is_empty() {
        return None;
    }
    let start = allowed[rng.random_range(0..allowed.len())];
    let mut used = Bitset::new(d.n());
    if let Some(b) = blocked {
        used.union_with(b);
    }
    used.insert(start);
    let mut path = vec![start];
    loop {
        let mut ext = d.out_neighbors(*path.last().unwrap()).clone();
        ext.subtract(&used);
        let options = ext.to_vec();
        match options.choose(rng) {
            Some(&v) => {
                path.push(v);
                used.insert(v);
            }
            None => break,
        }
    }
    loop {
        let mut ext = d.in_neighbors(path[0]).clone();
        ext.subtract(&used);
        let options = ext.to_vec();
        match options.choose(rng) {
            Some(&v) => {
                path.insert(0, v);
                used.insert(v);
            }
            None => break,
        }
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::is_directed_path;

    fn directed_cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn tournament_holds_for_k1() {
        let d = Digraph::transitive_tournament(5);
        let v = verify_exhaustive(&d, 1, 10_000, false);
        assert_eq!(v.outcome, VerdictOutcome::HoldsExhaustive);
    }

    #[test]
    fn two_isolated_vertices_fail_for_k2() {
        let d = Digraph::empty(2);
        let v = verify_exhaustive(&d, 2, 10_000, false);
        assert_eq!(v.outcome, VerdictOutcome::Fails);
        let c = v.counterexample.unwrap();
        assert_eq!(c.paths.len(), 1);
        assert_eq!(c.remaining_stability, 1);
    }

    #[test]
    fn directed_five_cycle_fails_for_k2() {
        // Every maximal path is a Hamiltonian rotation; deleting one leaves
        // nothing.
        let d = directed_cycle(5);
        let v = verify_exhaustive(&d, 2, 100_000, false);
        assert_eq!(v.outcome, VerdictOutcome::Fails);
        let c = v.counterexample.unwrap();
        assert_eq!(c.paths.len(), 1);
        assert_eq!(c.paths[0].len(), 5);
        assert_eq!(c.remaining_stability, 0);
    }

    #[test]
    fn stability_mismatch_is_reported_as_failure() {
        let d = Digraph::empty(3);
        let v = verify_exhaustive(&d, 2, 10_000, false);
        assert_eq!(v.outcome, VerdictOutcome::Fails);
        assert!(v.reason.unwrap().contains("stability number is 3"));
        let c = v.counterexample.unwrap();
        assert!(c.paths.is_empty());
        assert_eq!(c.remaining_stability, 3);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let d = Digraph::transitive_tournament(8);
        let v = verify_exhaustive(&d, 1, 3, false);
        assert_eq!(v.outcome, VerdictOutcome::Inconclusive);
        assert!(v.reason.is_some());
    }

    #[test]
    fn adversarial_zero_budget_records_zero_trials() {
        let d = Digraph::empty(6);
        let v = verify_adversarial(&d, 6, 0, 1, false);
        assert_eq!(v.outcome, VerdictOutcome::HoldsNoCounterexample);
        assert_eq!(v.stats.trials, 0);
    }

    #[test]
    fn adversarial_finds_cycle_counterexample() {
        let d = directed_cycle(5);
        let v = verify_adversarial(&d, 2, 50, 11, false);
        assert_eq!(v.outcome, VerdictOutcome::Fails);
        let c = v.counterexample.unwrap();
        assert!(c.paths.iter().all(|p| is_directed_path(&d, p)));
        assert!(c.paths.len() <= 1);
    }

    #[test]
    fn arcless_digraph_holds_adversarially() {
        // Deleting k-1 paths (singletons here) from n >= 2k isolated
        // vertices leaves at least k+1 of them.
        let d = Digraph::empty(8);
        let v = verify_adversarial(&d, 4, 200, 5, false);
        assert_eq!(v.outcome, VerdictOutcome::HoldsNoCounterexample);
        assert_eq!(v.stats.trials, 200);
    }

    #[test]
    fn layer_path_property_checks() {
        use crate::graph::{Layering, UGraph};
        let g = UGraph::cycle(5);
        let layering = Layering::new(2, vec![vec![0, 1], vec![2, 3]], &g).unwrap();
        let d = LayeredDigraph::build(&g, &layering);
        assert_eq!(check_layer_path_property(&d), Ok(()));

        let bad =
            LayeredDigraph::from_parts(4, 2, vec![vec![0, 1], vec![2, 3]], vec![(0, 2), (1, 0)])
                .unwrap();
        assert_eq!(check_layer_path_property(&bad), Err((1, 0)));

        let no_arcs =
            LayeredDigraph::from_parts(4, 2, vec![vec![0, 1], vec![2, 3]], vec![]).unwrap();
        assert_eq!(check_layer_path_property(&no_arcs), Ok(()));
    }

    #[test]
    fn lower_bound_arithmetic() {
        use crate::graph::{Layering, UGraph};
        let g = UGraph::complete(12);
        let layers = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]];
        let layering = Layering::new(3, layers, &g).unwrap();
        let d = LayeredDigraph::build(&g, &layering);
        assert_eq!(lower_bound_remaining(&d, 3), 4);

        let g1 = UGraph::complete(3);
        let l1 = Layering::new(3, vec![vec![0, 1, 2]], &g1).unwrap();
        let d1 = LayeredDigraph::build(&g1, &l1);
        assert_eq!(lower_bound_remaining(&d1, 3), 1);
        assert_eq!(lower_bound_remaining(&d1, 7), 0);
    }
}
