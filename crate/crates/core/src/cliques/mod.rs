//! Exact clique kernels: enumeration, maximum clique / stability solvers,
//! greedy disjoint-clique extraction, clique hitting, and a randomized
//! subset-clique certificate.

mod ops;
mod solver;

pub use ops::{
    greedy_disjoint_cliques, hitting_vertices, residual_vertices, stability_number,
    subset_clique_certificate, CertificateVerdict, StabilitySolver,
};
pub use solver::{clique_number, max_clique, SolveOutcome, SolverError};

use crate::bitset::Bitset;
use crate::graph::UGraph;

/// Default cap on enumerated cliques.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Result of an r-clique enumeration. `truncated` is set when the limit
/// cut the listing short; callers must treat a truncated list as
/// incomplete, never as authoritative.
#[derive(Clone, Debug)]
pub struct CliqueEnumeration {
    pub cliques: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// Visits r-cliques of `g` (restricted to `mask` when given) in ascending
/// lexicographic order. The visitor returns false to stop early.
fn visit_cliques(
    g: &UGraph,
    r: usize,
    mask: Option<&Bitset>,
    visitor: &mut impl FnMut(&[usize]) -> bool,
) {
    assert!(r >= 1, "clique size must be at least 1");
    let cand = match mask {
        Some(m) => m.clone(),
        None => Bitset::full(g.n()),
    };
    let mut prefix = Vec::with_capacity(r);
    visit_rec(g, r, &mut prefix, &cand, visitor);
}

fn visit_rec(
    g: &UGraph,
    r: usize,
    prefix: &mut Vec<usize>,
    cand: &Bitset,
    visitor: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if prefix.len() == r {
        return visitor(prefix);
    }
    if cand.len() < r - prefix.len() {
        return true;
    }
    for v in cand.iter().collect::<Vec<_>>() {
        let mut next = cand.intersection(g.neighbors(v));
        next.clear_upto(v);
        prefix.push(v);
        let keep_going = visit_rec(g, r, prefix, &next, visitor);
        prefix.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// All r-cliques of `g` in lexicographic order, truncated at `limit`.
pub fn enumerate_cliques(g: &UGraph, r: usize, limit: u64) -> CliqueEnumeration {
    assert!(limit >= 1, "enumeration limit must be at least 1");
    let mut cliques = Vec::new();
    let mut truncated = false;
    visit_cliques(g, r, None, &mut |c| {
        if (cliques.len() as u64) == limit {
            truncated = true;
            return false;
        }
        cliques.push(c.to_vec());
        true
    });
    CliqueEnumeration { cliques, truncated }
}

/// Number of r-cliques, with a truncation flag once `limit` is passed.
pub fn count_cliques(g: &UGraph, r: usize, limit: u64) -> (u64, bool) {
    let mut count = 0u64;
    let mut truncated = false;
    visit_cliques(g, r, None, &mut |_| {
        count += 1;
        if count > limit {
            truncated = true;
            return false;
        }
        true
    });
    (count, truncated)
}

/// True iff `g` restricted to `mask` contains an r-clique.
pub fn has_clique(g: &UGraph, r: usize, mask: Option<&Bitset>) -> bool {
    let mut found = false;
    visit_cliques(g, r, mask, &mut |_| {
        found = true;
        false
    });
    found
}

/// Lexicographically smallest r-clique of `g` restricted to `mask`.
pub fn first_clique_lex(g: &UGraph, r: usize, mask: Option<&Bitset>) -> Option<Vec<usize>> {
    let mut first = None;
    visit_cliques(g, r, mask, &mut |c| {
        first = Some(c.to_vec());
        false
    });
    first
}
