//! Exact maximum-clique solver: branch and bound with greedy coloring
//! upper bounds over a degeneracy vertex order.
//!
//! Exactness is the contract. The solver either returns a maximum clique
//! or, when the optional node budget runs out, a distinct error - never a
//! heuristic answer. All tie-breaking is by vertex index, so results are
//! deterministic. Practical limit on random instances is around n = 100.

use thiserror::Error;

use crate::bitset::Bitset;
use crate::graph::UGraph;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("node budget exhausted after {nodes} search nodes")]
    BudgetExceeded { nodes: u64 },
}

/// An exact solve: optimum size, one witness achieving it, and the number
/// of search nodes spent.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub size: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

struct SearchState<'a> {
    g: &'a UGraph,
    rank: Vec<usize>,
    best: usize,
    witness: Vec<usize>,
    nodes: u64,
    max_nodes: Option<u64>,
}

/// Maximum clique of `g`, optionally restricted to the vertices in `mask`.
pub fn max_clique(
    g: &UGraph,
    mask: Option<&Bitset>,
    max_nodes: Option<u64>,
) -> Result<SolveOutcome, SolverError> {
    let active = match mask {
        Some(m) => m.clone(),
        None => Bitset::full(g.n()),
    };
    let order = degeneracy_order(g, &active);
    let mut rank = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut state = SearchState {
        g,
        rank,
        best: 0,
        witness: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    let mut current = Vec::new();
    expand(&mut state, &mut current, active)?;
    state.witness.sort_unstable();
    Ok(SolveOutcome {
        size: state.best,
        witness: state.witness,
        nodes: state.nodes,
    })
}

/// Exact clique number of `g` with a witness clique.
pub fn clique_number(g: &UGraph, max_nodes: Option<u64>) -> Result<SolveOutcome, SolverError> {
    max_clique(g, None, max_nodes)
}

/// Smallest-last ordering: repeatedly remove a minimum-degree vertex
/// (lowest index on ties); the reversed removal sequence puts the densest
/// core first.
fn degeneracy_order(g: &UGraph, active: &Bitset) -> Vec<usize> {
    let mut alive = active.clone();
    let mut removal = Vec::with_capacity(alive.len());
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| {
            if alive.contains(v) {
                g.neighbors(v).intersection_len(&alive)
            } else {
                usize::MAX
            }
        })
        .collect();
    while let Some(first) = alive.first() {
        let mut min_v = first;
        for v in alive.iter() {
            if deg[v] < deg[min_v] {
                min_v = v;
            }
        }
        alive.remove(min_v);
        deg[min_v] = usize::MAX;
        for u in g.neighbors(min_v).intersection(&alive).iter() {
            deg[u] -= 1;
        }
        removal.push(min_v);
    }
    removal.reverse();
    removal
}

/// Greedy sequential coloring of the candidate set in rank order. Returns
/// candidates sorted by ascending color; a vertex's color is an upper
/// bound on any clique inside the candidates that contains it.
fn color_sort(state: &SearchState<'_>, p: &Bitset) -> Vec<(usize, usize)> {
    let mut vs = p.to_vec();
    vs.sort_unstable_by_key(|&v| state.rank[v]);
    let mut classes: Vec<Bitset> = Vec::new();
    let mut colored = Vec::with_capacity(vs.len());
    for v in vs {
        let mut color = classes.len();
        for (ci, class) in classes.iter().enumerate() {
            if class.is_disjoint(state.g.neighbors(v)) {
                color = ci;
                break;
            }
        }
        if color == classes.len() {
            classes.push(Bitset::new(state.g.n()));
        }
        classes[color].insert(v);
        colored.push((v, color + 1));
    }
    colored.sort_by_key(|&(v, c)| (c, state.rank[v]));
    colored
}

fn expand(
    state: &mut SearchState<'_>,
    current: &mut Vec<usize>,
    mut p: Bitset,
) -> Result<(), SolverError> {
    state.nodes += 1;
    if let Some(max) = state.max_nodes {
        if state.nodes > max {
            return Err(SolverError::BudgetExceeded { nodes: state.nodes });
        }
    }
    let colored = color_sort(state, &p);
    for &(v, bound) in colored.iter().rev() {
        if current.len() + bound <= state.best {
            return Ok(()); // every remaining candidate has a smaller bound
        }
        p.remove(v);
        current.push(v);
        if current.len() > state.best {
            state.best = current.len();
            state.witness = current.clone();
        }
        let next = p.intersection(state.g.neighbors(v));
        if !next.is_empty() {
            expand(state, current, next)?;
        }
        current.pop();
    }
    Ok(())
}
