//! Constructive path partitioner.
//!
//! `gallai_milgram_partition` follows the inductive proof scheme and never
//! computes the stability number. Starting from singleton paths, the
//! recursion looks for a conflict arc between two path starts. If the
//! source path is a singleton it merges onto the target path. Otherwise
//! the source start is removed, the rest is partitioned recursively, and
//! the removed vertex is reinserted by case analysis: extend the path
//! whose start is its old successor, extend any path whose start is an
//! out-neighbor, or fall back to a new singleton. A partition whose starts
//! are pairwise independent is returned as is - its start set certifies
//! |paths| <= stability. End-to-start merges then run to a fixpoint, which
//! can only shrink the partition. All tie-breaking is by lowest index, so
//! the output is deterministic. Tests assert the stability bound against
//! an exhaustive solver, exhaustively over all small digraphs and on bulk
//! random instances.

use thiserror::Error;

use crate::digraph::{is_directed_path, Digraph};

#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("path {index} is not a directed path of the host digraph")]
    InvalidPath { index: usize },
    #[error("vertex {0} is covered {1} times, expected exactly once")]
    NotExactCover(usize, usize),
}

/// A partition of a digraph's vertices into directed paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPartition {
    pub paths: Vec<Vec<usize>>,
}

impl PathPartition {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Checks a partition against its host independently of how it was built:
/// every path must be a directed path and every vertex must be covered
/// exactly once.
pub fn validate_path_partition(d: &Digraph, p: &PathPartition) -> Result<(), PartitionError> {
    let mut covered = vec![0usize; d.n()];
    for (index, path) in p.paths.iter().enumerate() {
        if !is_directed_path(d, path) {
            return Err(PartitionError::InvalidPath { index });
        }
        for &v in path {
            covered[v] += 1;
        }
    }
    for (v, &count) in covered.iter().enumerate() {
        if count != 1 {
            return Err(PartitionError::NotExactCover(v, count));
        }
    }
    Ok(())
}

/// Partitions the vertices of `d` into directed paths; the number of
/// paths never exceeds the stability number of `d`.
pub fn gallai_milgram_partition(d: &Digraph) -> PathPartition {
    let mut paths: Vec<Vec<usize>> = (0..d.n()).map(|v| vec![v]).collect();
    let witness = loop {
        match step(d, paths) {
            Outcome::Smaller(p) => paths = p,
            Outcome::Done(p, witness) => {
                paths = p;
                break witness;
            }
        }
    };
    debug_assert!(witness.len() >= paths.len());
    debug_assert!(
        is_independent(d, &witness),
        "witness {witness:?} not independent; paths {paths:?}; arcs {:?}",
        d.arcs()
    );
    merge_to_fixpoint(d, &mut paths);
    PathPartition { paths }
}

enum Outcome {
    /// A strictly smaller partition whose start set is a subset of the
    /// input's.
    Smaller(Vec<Vec<usize>>),
    /// The input partition unchanged, plus an independent set at least as
    /// large - the certificate that its size is within the stability
    /// number.
    Done(Vec<Vec<usize>>, Vec<usize>),
}

/// One reduction round. If the path starts are pairwise independent they
/// certify the partition themselves. Otherwise a conflict arc runs from
/// one start to another, and either the source path is a singleton
/// (merge), or its start is removed, the remainder reduced recursively,
/// and the removed vertex reinserted: onto the path still starting at its
/// old successor, onto any path whose start is an out-neighbor, or as a
/// new singleton. In the singleton case, if the partition did not shrink,
/// its start set must equal the input's, so the original conflict target
/// still heads a path and the singleton merges onto it.
fn step(d: &Digraph, p: Vec<Vec<usize>>) -> Outcome {
    let (i, j) = match find_conflict(d, &p) {
        None => {
            let starts = p.iter().map(|path| path[0]).collect();
            return Outcome::Done(p, starts);
        }
        Some(pair) => pair,
    };
    let input_len = p.len();
    if p[i].len() == 1 {
        return Outcome::Smaller(merge_onto(p, i, j));
    }
    let source_start = p[i][0];
    let source_second = p[i][1];
    let conflict_target = p[j][0];
    let mut sub = p.clone();
    sub[i].remove(0);
    match step(d, sub) {
        Outcome::Done(mut unchanged, witness) => {
            // The beheaded stub still starts at the old successor; putting
            // the start back restores the input, now certified by the
            // sub-partition's witness (same number of paths).
            unchanged[i].insert(0, source_start);
            Outcome::Done(unchanged, witness)
        }
        Outcome::Smaller(mut q) => {
            if let Some(t) = q.iter().position(|path| path[0] == source_second) {
                q[t].insert(0, source_start);
                return Outcome::Smaller(q);
            }
            if let Some(t) = q.iter().position(|path| d.has_arc(source_start, path[0])) {
                q[t].insert(0, source_start);
                return Outcome::Smaller(q);
            }
            q.push(vec![source_start]);
            if q.len() < input_len {
                return Outcome::Smaller(q);
            }
            // Same size means the start set equals the input's, so the
            // conflict target is still a start; the new singleton merges
            // onto its path along the conflict arc.
            let t = q
                .iter()
                .position(|path| path[0] == conflict_target)
                .expect("start sets of equal size are equal");
            let singleton = q.pop().unwrap();
            debug_assert_eq!(singleton, vec![source_start]);
            q[t].insert(0, source_start);
            Outcome::Smaller(q)
        }
    }
}

/// First ordered pair of distinct path indices whose starts are joined by
/// an arc from the first to the second.
fn find_conflict(d: &Digraph, q: &[Vec<usize>]) -> Option<(usize, usize)> {
    for i in 0..q.len() {
        for j in 0..q.len() {
            if i != j && d.has_arc(q[i][0], q[j][0]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Prepends the singleton path `i` onto path `j` along the conflict arc.
fn merge_onto(mut p: Vec<Vec<usize>>, i: usize, j: usize) -> Vec<Vec<usize>> {
    let s = p[i][0];
    p[j].insert(0, s);
    p.remove(i);
    p
}

fn is_independent(d: &Digraph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(a, &u)| {
        vertices[a + 1..]
            .iter()
            .all(|&v| !d.has_arc(u, v) && !d.has_arc(v, u))
    })
}

/// Merges any path ending at an in-neighbor of another path's start, until
/// no such pair remains. Each merge removes one path.
fn merge_to_fixpoint(d: &Digraph, paths: &mut Vec<Vec<usize>>) {
    loop {
        let mut merged = false;
        'outer: for i in 0..paths.len() {
            for j in 0..paths.len() {
                if i != j && d.has_arc(*paths[i].last().unwrap(), paths[j][0]) {
                    let tail = paths.remove(j);
                    let i = if j < i { i - 1 } else { i };
                    paths[i].extend(tail);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return;
        }
    }
}

/// Exhaustive stability number by subset enumeration; test oracle.
#[cfg(test)]
pub(crate) fn brute_force_stability(d: &Digraph) -> usize {
    let n = d.n();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..1 << n {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let stable = verts.iter().enumerate().all(|(a, &u)| {
            verts[a + 1..]
                .iter()
                .all(|&v| !d.has_arc(u, v) && !d.has_arc(v, u))
        });
        if stable {
            best = best.max(verts.len());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{sample_digraph_with, substream};

    fn check(d: &Digraph) {
        let p = gallai_milgram_partition(d);
        validate_path_partition(d, &p).unwrap();
        let alpha = brute_force_stability(d);
        assert!(
            p.len() <= alpha,
            "partition has {} paths but stability is {alpha}: {:?} on {:?}",
            p.len(),
            p.paths,
            d.arcs()
        );
    }

    #[test]
    fn transitive_tournament_is_one_path() {
        for n in 1..8 {
            let d = Digraph::transitive_tournament(n);
            let p = gallai_milgram_partition(&d);
            assert_eq!(p.len(), 1);
            assert_eq!(p.paths[0], (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn arcless_digraph_is_all_singletons() {
        let d = Digraph::empty(6);
        let p = gallai_milgram_partition(&d);
        assert_eq!(p.len(), 6);
        validate_path_partition(&d, &p).unwrap();
    }

    #[test]
    fn directed_five_cycle_within_two_paths() {
        let d = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(brute_force_stability(&d), 2);
        let p = gallai_milgram_partition(&d);
        validate_path_partition(&d, &p).unwrap();
        assert!(p.len() <= 2);
    }

    #[test]
    fn forced_hamiltonian_path_instance() {
        // Greedy end-to-start merging alone gets stuck at three paths on
        // this digraph, whose only transversal-admitting partition is a
        // Hamiltonian path.
        let d = Digraph::from_arcs(5, [(0, 1), (2, 3), (1, 3), (0, 2), (0, 3), (2, 1)]).unwrap();
        check(&d);
    }

    #[test]
    fn greedy_append_trap_instance() {
        // Appending 2 to the wrong path here would strand a third path;
        // stability is 2.
        let d = Digraph::from_arcs(4, [(0, 2), (0, 3), (1, 2)]).unwrap();
        check(&d);
        let p = gallai_milgram_partition(&d);
        assert!(p.len() <= 2);
    }

    #[test]
    fn exhaustive_all_digraphs_up_to_four_vertices() {
        // Every digraph on <= 4 vertices: each of the 6 vertex pairs is in
        // one of 4 states (none, forward, backward, both).
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let mut states = vec![0u8; pairs.len()];
            loop {
                let mut arcs = Vec::new();
                for (idx, &(u, v)) in pairs.iter().enumerate() {
                    match states[idx] {
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        3 => {
                            arcs.push((u, v));
                            arcs.push((v, u));
                        }
                        _ => {}
                    }
                }
                check(&Digraph::from_arcs(n, arcs).unwrap());
                let mut idx = 0;
                while idx < states.len() && states[idx] == 3 {
                    states[idx] = 0;
                    idx += 1;
                }
                if idx == states.len() {
                    break;
                }
                states[idx] += 1;
            }
        }
    }

    #[test]
    fn random_digraphs_stay_within_stability_bound() {
        let mut trial = 0u64;
        for n in 5..=9 {
            for p in [0.1, 0.2, 0.3, 0.5, 0.8] {
                for _ in 0..40 {
                    trial += 1;
                    let d = sample_digraph_with(n, p, &mut substream(31_000 + trial, 0));
                    check(&d);
                }
            }
        }
    }

    #[test]
    fn validation_rejects_bad_partitions() {
        let d = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        let missing = PathPartition {
            paths: vec![vec![0, 1]],
        };
        assert_eq!(
            validate_path_partition(&d, &missing),
            Err(PartitionError::NotExactCover(2, 0))
        );
        let invalid = PathPartition {
            paths: vec![vec![1, 0], vec![2]],
        };
        assert_eq!(
            validate_path_partition(&d, &invalid),
            Err(PartitionError::InvalidPath { index: 0 })
        );
        let duplicated = PathPartition {
            paths: vec![vec![0, 1], vec![1], vec![2]],
        };
        assert_eq!(
            validate_path_partition(&d, &duplicated),
            Err(PartitionError::NotExactCover(1, 2))
        );
    }
}
