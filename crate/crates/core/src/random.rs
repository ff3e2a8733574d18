//! Seeded G(n, p) sampling with reproducible substreams.
//!
//! All randomness flows through ChaCha8 keyed by a 64-bit master seed.
//! Substream `i` of seed `s` is `ChaCha8Rng::seed_from_u64(s)` with its
//! stream index set to `i` (ChaCha supports 2^64 independent streams), so
//! trials and attempts can run in any schedule without changing results.
//! Edge decisions draw one f64 per vertex pair, pairs visited in ascending
//! lexicographic order; single-shot samplers use substream 0.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::UGraph;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("edge probability {0} is not in [0, 1]")]
    BadProbability(f64),
    #[error("vertex count must be at least 1")]
    ZeroVertices,
    #[error("clique size k must be at least 1")]
    ZeroK,
}

/// Parameters of one G(n, p) experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSet {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
}

impl ParamSet {
    pub fn new(n: usize, k: usize, p: f64, seed: u64) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::ZeroVertices);
        }
        if k == 0 {
            return Err(ParamError::ZeroK);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(ParamError::BadProbability(p));
        }
        Ok(ParamSet { n, k, p, seed })
    }
}

/// Substream `index` of the master seed; see the module docs for the
/// derivation rule.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Samples G(n, p) from an explicit generator.
pub fn sample_gnp_with(n: usize, p: f64, rng: &mut ChaCha8Rng) -> UGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    UGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// Samples G(n, p) on substream 0 of the parameter seed.
pub fn sample_gnp(params: &ParamSet) -> UGraph {
    sample_gnp_with(params.n, params.p, &mut substream(params.seed, 0))
}

/// Random digraph: each ordered pair (u, v), u != v, becomes an arc
/// independently with probability `p`. Pairs visited with u ascending,
/// then v ascending.
pub fn sample_digraph_with(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < p {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("generated arcs are valid")
}
