//! Monte Carlo validators for the clique expectation formulas.
//!
//! Trials are independent: trial `i` samples its graph from substream `i`
//! of the master seed, so runs are reproducible bit-for-bit under any
//! execution schedule. Trials run in parallel; per-trial statistics are
//! collected into a trial-indexed buffer and reduced in index order, so
//! the floating-point result does not depend on thread timing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliques::{count_cliques, has_clique, DEFAULT_ENUMERATION_LIMIT};
use crate::random::{sample_gnp_with, substream, ParamSet};

#[derive(Debug, Error, PartialEq)]
pub enum MonteCarloError {
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("clique size {r} exceeds vertex count {n}")]
    CliqueSizeTooLarge { r: usize, n: usize },
    #[error("edge probability {0} is not in [0, 1]")]
    BadProbability(f64),
    #[error("clique enumeration truncated at {limit} cliques in trial {trial}")]
    EnumerationTruncated { trial: u64, limit: u64 },
}

/// A Monte Carlo estimate: sample mean, standard error (sample standard
/// deviation over the square root of the trial count), and the inputs
/// needed to reproduce it exactly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

fn summarize(values: &[f64], seed: u64) -> MCEstimate {
    let trials = values.len() as u64;
    let mean = values.iter().sum::<f64>() / trials as f64;
    let stderr = if trials > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    MCEstimate {
        mean,
        stderr,
        trials,
        seed,
    }
}

/// Mean and standard error of the exact r-clique count over `trials`
/// independent samples of G(n, p).
pub fn mc_clique_count(
    params: &ParamSet,
    r: usize,
    trials: u64,
) -> Result<MCEstimate, MonteCarloError> {
    if trials == 0 {
        return Err(MonteCarloError::ZeroTrials);
    }
    if r > params.n {
        return Err(MonteCarloError::CliqueSizeTooLarge { r, n: params.n });
    }
    // Collect per-trial results first and scan in trial order, so even
    // the reported error is schedule-independent.
    let per_trial: Vec<Result<f64, MonteCarloError>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = substream(params.seed, trial);
            let g = sample_gnp_with(params.n, params.p, &mut rng);
            let (count, truncated) = count_cliques(&g, r, DEFAULT_ENUMERATION_LIMIT);
            if truncated {
                Err(MonteCarloError::EnumerationTruncated {
                    trial,
                    limit: DEFAULT_ENUMERATION_LIMIT,
                })
            } else {
                Ok(count as f64)
            }
        })
        .collect();
    let counts = per_trial.into_iter().collect::<Result<Vec<f64>, _>>()?;
    Ok(summarize(&counts, params.seed))
}

/// Empirical probability that G(u, p) contains no k-clique, with binomial
/// standard error sqrt(m(1-m)/trials).
pub fn mc_no_clique_probability(
    u: usize,
    k: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<MCEstimate, MonteCarloError> {
    if trials == 0 {
        return Err(MonteCarloError::ZeroTrials);
    }
    if k > u {
        return Err(MonteCarloError::CliqueSizeTooLarge { r: k, n: u });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(MonteCarloError::BadProbability(p));
    }
    let hits: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = substream(seed, trial);
            let g = sample_gnp_with(u, p, &mut rng);
            if has_clique(&g, k, None) {
                0.0
            } else {
                1.0
            }
        })
        .collect();
    let successes = hits.iter().sum::<f64>();
    let mean = successes / trials as f64;
    let stderr = (mean * (1.0 - mean) / trials as f64).sqrt();
    Ok(MCEstimate {
        mean,
        stderr,
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::expected_clique_count;

    #[test]
    fn complete_graph_has_exactly_one_max_clique() {
        let params = ParamSet::new(7, 7, 1.0, 3).unwrap();
        let est = mc_clique_count(&params, 7, 25).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn empty_graph_has_no_edges() {
        let params = ParamSet::new(9, 2, 0.0, 3).unwrap();
        let est = mc_clique_count(&params, 2, 25).unwrap();
        assert_eq!(est.mean, 0.0);
    }

    #[test]
    fn triangle_count_tracks_closed_form() {
        let params = ParamSet::new(12, 3, 0.3, 1).unwrap();
        let est = mc_clique_count(&params, 3, 20_000).unwrap();
        let expected = expected_clique_count(12, 3, 0.3).unwrap();
        assert!((expected - 5.94).abs() < 1e-12);
        assert!(
            (est.mean - expected).abs() <= 4.0 * est.stderr,
            "mean {} expected {} stderr {}",
            est.mean,
            expected,
            est.stderr
        );
    }

    #[test]
    fn repeat_runs_are_bit_identical() {
        let params = ParamSet::new(10, 3, 0.4, 17).unwrap();
        let a = mc_clique_count(&params, 3, 500).unwrap();
        let b = mc_clique_count(&params, 3, 500).unwrap();
        assert_eq!(a, b);
        assert!(a.mean.to_bits() == b.mean.to_bits());
        assert!(a.stderr.to_bits() == b.stderr.to_bits());
    }

    #[test]
    fn no_clique_probability_extremes() {
        let est = mc_no_clique_probability(3, 3, 1.0, 10, 5).unwrap();
        assert_eq!(est.mean, 0.0);
        let est = mc_no_clique_probability(5, 2, 0.0, 10, 5).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let params = ParamSet::new(5, 2, 0.5, 0).unwrap();
        assert_eq!(
            mc_clique_count(&params, 3, 0),
            Err(MonteCarloError::ZeroTrials)
        );
        assert_eq!(
            mc_clique_count(&params, 6, 10),
            Err(MonteCarloError::CliqueSizeTooLarge { r: 6, n: 5 })
        );
        assert_eq!(
            mc_no_clique_probability(3, 4, 0.5, 10, 0),
            Err(MonteCarloError::CliqueSizeTooLarge { r: 4, n: 3 })
        );
    }

    #[test]
    fn single_trial_has_zero_stderr() {
        let params = ParamSet::new(8, 3, 0.5, 2).unwrap();
        let est = mc_clique_count(&params, 3, 1).unwrap();
        assert_eq!(est.stderr, 0.0);
        assert_eq!(est.trials, 1);
    }
}
