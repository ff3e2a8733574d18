//! Operations built on the clique kernels: stability numbers, greedy
//! disjoint-clique extraction, clique hitting, and the randomized
//! subset-clique certificate.

use rand::seq::index::sample;

use crate::bitset::Bitset;
use crate::cliques::{first_clique_lex, has_clique, max_clique, SolveOutcome, SolverError};
use crate::digraph::Digraph;
use crate::graph::{Layering, UGraph};
use crate::random::substream;

/// Exact stability solver for one digraph. A stable set has no arcs in
/// either direction between its members, so it is a clique of the
/// complement of the conflict graph; the conversion is done once here and
/// reused across masked queries.
pub struct StabilitySolver {
    complement_conflict: UGraph,
}

impl StabilitySolver {
    pub fn new(d: &Digraph) -> Self {
        StabilitySolver {
            complement_conflict: d.conflict_graph().complement(),
        }
    }

    /// Exact maximum stable set among `alive` (all vertices when `None`).
    pub fn stability(
        &self,
        alive: Option<&Bitset>,
        max_nodes: Option<u64>,
    ) -> Result<SolveOutcome, SolverError> {
        max_clique(&self.complement_conflict, alive, max_nodes)
    }
}

/// Exact stability number of `d` with a witness stable set.
pub fn stability_number(d: &Digraph, max_nodes: Option<u64>) -> Result<SolveOutcome, SolverError> {
    StabilitySolver::new(d).stability(None, max_nodes)
}

/// Pulls out vertex-disjoint k-cliques until none remain, taking the
/// lexicographically smallest k-clique of the current residual graph each
/// time. The residual (vertices in no layer) then has no k-clique.
pub fn greedy_disjoint_cliques(g: &UGraph, k: usize) -> Layering {
    assert!(k >= 1);
    let mut alive = Bitset::full(g.n());
    let mut layers = Vec::new();
    while let Some(clique) = first_clique_lex(g, k, Some(&alive)) {
        for &v in &clique {
            alive.remove(v);
        }
        layers.push(clique);
    }
    Layering::new(k, layers, g).expect("greedy extraction yields valid disjoint cliques")
}

/// Vertices of `g` not covered by the layering, ascending.
pub fn residual_vertices(g: &UGraph, layering: &Layering) -> Vec<usize> {
    let mut alive = Bitset::full(g.n());
    for layer in layering.layers() {
        for &v in layer {
            alive.remove(v);
        }
    }
    alive.to_vec()
}

/// Greedy max-coverage hitting set: repeatedly deletes the vertex lying in
/// the most still-unhit cliques (lowest id on ties) until every listed
/// clique is hit. Returns the deleted vertices, ascending. At most one
/// vertex per clique is deleted, usually far fewer.
pub fn hitting_vertices(cliques: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut remaining: Vec<&Vec<usize>> = cliques.iter().collect();
    let mut deleted = Vec::new();
    while !remaining.is_empty() {
        let mut freq = vec![0usize; n];
        for clique in &remaining {
            for &v in *clique {
                freq[v] += 1;
            }
        }
        let best = (0..n)
            .max_by_key(|&v| (freq[v], std::cmp::Reverse(v)))
            .unwrap();
        deleted.push(best);
        remaining.retain(|clique| !clique.contains(&best));
    }
    deleted.sort_unstable();
    deleted
}

/// Outcome of the randomized subset-clique search. `CertifiedFailure`
/// carries a u-subset with no k-clique, which is independently checkable;
/// `NoCounterexampleFound` is explicitly not a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    CertifiedFailure { subset: Vec<usize> },
    NoCounterexampleFound { trials: u64 },
}

/// Samples `trials` uniform u-subsets of the vertices of `g` (trial i uses
/// substream i of `seed`) and reports the first subset found to contain no
/// k-clique, if any.
pub fn subset_clique_certificate(
    g: &UGraph,
    u: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> CertificateVerdict {
    assert!(u <= g.n(), "subset size exceeds vertex count");
    for trial in 0..trials {
        let mut rng = substream(seed, trial);
        let mut subset: Vec<usize> = sample(&mut rng, g.n(), u).into_iter().collect();
        subset.sort_unstable();
        let mask = Bitset::from_iter(g.n(), subset.iter().copied());
        if !has_clique(g, k, Some(&mask)) {
            return CertificateVerdict::CertifiedFailure { subset };
        }
    }
    CertificateVerdict::NoCounterexampleFound { trials }
}
