//! Random-graph toolkit for layered witness digraphs.
//!
//! The pipeline: sample G(n, p) with reproducible seeds, prune every
//! (k+1)-clique by deleting a hitting set, pull out disjoint k-cliques as
//! layers, and orient complement arcs by layer index. The resulting
//! digraphs are candidates for path-deletion stability - stability number
//! k surviving the deletion of any k-1 directed paths - which the
//! verifier checks exhaustively or adversarially. Closed-form clique
//! expectation and overlap formulas come with Monte Carlo validators, and
//! a constructive partitioner splits any digraph into at most
//! stability-number many directed paths.
//!
//! Everything downstream of a seed is deterministic; see [`random`] for
//! the substream derivation rule.

pub mod bitset;
pub mod cliques;
pub mod construction;
pub mod digraph;
pub mod format;
pub mod formulas;
pub mod graph;
pub mod montecarlo;
pub mod random;
pub mod report;
pub mod search;
pub mod verifier;

pub use digraph::{Digraph, LayeredDigraph};
pub use graph::{Layering, UGraph};
pub use random::ParamSet;
