//! Enumeration of directed paths.

use thiserror::Error;

use crate::bitset::Bitset;
use crate::digraph::Digraph;

#[derive(Debug, Error, PartialEq)]
#[error("enumeration budget of {limit} steps exhausted")]
pub struct BudgetExhausted {
    pub limit: u64,
}

/// Step counter shared across one verification run.
#[derive(Clone, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn charge(&mut self, amount: u64) -> Result<(), BudgetExhausted> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            Err(BudgetExhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// All maximal directed paths of `d`: paths extendable at neither end.
/// Every vertex with no arcs at all yields a singleton maximal path.
/// Deterministic order: starts ascending, extensions ascending.
pub fn maximal_paths(d: &Digraph, budget: &mut Budget) -> Result<Vec<Vec<usize>>, BudgetExhausted> {
    enumerate_paths(d, budget, false)
}

/// All directed paths of `d` (every nonempty simple path, maximal or not).
pub fn all_paths(d: &Digraph, budget: &mut Budget) -> Result<Vec<Vec<usize>>, BudgetExhausted> {
    enumerate_paths(d, budget, true)
}

fn enumerate_paths(
    d: &Digraph,
    budget: &mut Budget,
    emit_all: bool,
) -> Result<Vec<Vec<usize>>, BudgetExhausted> {
    let mut out = Vec::new();
    for start in 0..d.n() {
        let mut visited = Bitset::new(d.n());
        visited.insert(start);
        let mut path = vec![start];
        extend(d, budget, emit_all, &mut path, &mut visited, &mut out)?;
    }
    Ok(out)
}

fn extend(
    d: &Digraph,
    budget: &mut Budget,
    emit_all: bool,
    path: &mut Vec<usize>,
    visited: &mut Bitset,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), BudgetExhausted> {
    budget.charge(1)?;
    let last = *path.last().unwrap();
    let mut forward = d.out_neighbors(last).clone();
    forward.subtract(visited);
    if emit_all {
        out.push(path.clone());
    } else if forward.is_empty() {
        // Right-maximal; emit only if also left-maximal, i.e. no unused
        // in-neighbor of the first vertex. Non-left-maximal paths are
        // covered by enumerations from earlier starts.
        let mut backward = d.in_neighbors(path[0]).clone();
        backward.subtract(visited);
        if backward.is_empty() {
            out.push(path.clone());
        }
    }
    for v in forward.iter().collect::<Vec<_>>() {
        path.push(v);
        visited.insert(v);
        extend(d, budget, emit_all, path, visited, out)?;
        visited.remove(v);
        path.pop();
    }
    Ok(())
}
