//! Estimator reports: closed form next to Monte Carlo estimate with a
//! pass/fail flag at the documented sigma threshold.
//!
//! Thresholds are fixed at 4 standard errors for formula checks and 3 for
//! inequality checks, keeping the flake rate per assertion around 1e-4.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{
    count_overlap_pairs_exhaustive, delta, expected_clique_count, janson_upper_bound, mu,
    overlap_pair_coefficient, FormulaError,
};
use crate::montecarlo::{mc_clique_count, mc_no_clique_probability, MCEstimate, MonteCarloError};
use crate::random::ParamSet;

pub const SIGMA_FORMULA: f64 = 4.0;
pub const SIGMA_INEQUALITY: f64 = 3.0;

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    #[error(transparent)]
    MonteCarlo(#[from] MonteCarloError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("exhaustive pair enumeration infeasible for u = {u}, k = {k}")]
    InfeasibleEnumeration { u: u64, k: u64 },
}

/// An estimator result bundled with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Estimate<P> {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub params: P,
}

impl<P> Estimate<P> {
    fn new(mc: MCEstimate, params: P) -> Self {
        Estimate {
            mean: mc.mean,
            stderr: mc.stderr,
            trials: mc.trials,
            seed: mc.seed,
            params,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnpCliqueParams {
    pub n: usize,
    pub r: usize,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetParams {
    pub u: usize,
    pub k: usize,
    pub p: f64,
}

/// Monte Carlo r-clique count against the closed form C(n,r) p^C(r,2).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliqueCountReport {
    pub schema_version: String,
    pub kind: String,
    pub closed_form: f64,
    pub abs_error: f64,
    pub sigma_threshold: f64,
    pub pass: bool,
    pub estimate: Estimate<GnpCliqueParams>,
}

pub fn clique_count_report(
    params: &ParamSet,
    r: usize,
    trials: u64,
) -> Result<CliqueCountReport, ReportError> {
    let closed_form = expected_clique_count(params.n as u64, r as u64, params.p)?;
    let mc = mc_clique_count(params, r, trials)?;
    let abs_error = (mc.mean - closed_form).abs();
    Ok(CliqueCountReport {
        schema_version: "1".to_string(),
        kind: "clique-count".to_string(),
        closed_form,
        abs_error,
        sigma_threshold: SIGMA_FORMULA,
        pass: abs_error <= SIGMA_FORMULA * mc.stderr,
        estimate: Estimate::new(
            mc,
            GnpCliqueParams {
                n: params.n,
                r,
                p: params.p,
            },
        ),
    })
}

/// Empirical k-clique-free frequency of G(u, p) against the upper bound
/// e^(-mu + delta/2); the check is one-sided.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoCliqueProbReport {
    pub schema_version: String,
    pub kind: String,
    pub mu: f64,
    pub delta: f64,
    pub janson_bound: f64,
    pub sigma_threshold: f64,
    pub pass: bool,
    pub estimate: Estimate<SubsetParams>,
}

pub fn no_clique_prob_report(
    u: usize,
    k: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<NoCliqueProbReport, ReportError> {
    let mu_value = mu(u as u64, k as u64, p)?;
    let delta_value = delta(u as u64, k as u64, p)?;
    let bound = janson_upper_bound(mu_value, delta_value);
    let mc = mc_no_clique_probability(u, k, p, trials, seed)?;
    Ok(NoCliqueProbReport {
        schema_version: "1".to_string(),
        kind: "no-clique-prob".to_string(),
        mu: mu_value,
        delta: delta_value,
        janson_bound: bound,
        sigma_threshold: SIGMA_INEQUALITY,
        pass: mc.mean <= bound + SIGMA_INEQUALITY * mc.stderr,
        estimate: Estimate::new(mc, SubsetParams { u, k, p }),
    })
}

/// One overlap size: ordered pairs counted by brute force against the
/// closed-form coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapRow {
    pub overlap: u64,
    pub enumerated: u64,
    pub closed_form: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaPairsReport {
    pub schema_version: String,
    pub kind: String,
    pub u: u64,
    pub k: u64,
    pub rows: Vec<OverlapRow>,
    pub pass: bool,
}

/// Compares, for each overlap size i in 2..k, the exhaustive ordered-pair
/// count with the closed-form coefficient. Exact equality is required.
pub fn delta_pairs_report(u: u64, k: u64) -> Result<DeltaPairsReport, ReportError> {
    if k > u {
        return Err(ReportError::Formula(FormulaError::CliqueSizeTooLarge {
            r: k,
            n: u,
        }));
    }
    use num_traits::ToPrimitive;
    let subsets = crate::formulas::binomial(u, k);
    if subsets.to_u64().is_none_or(|c| c > 5_000) {
        return Err(ReportError::InfeasibleEnumeration { u, k });
    }
    let mut rows = Vec::new();
    for i in 2..k {
        let enumerated = count_overlap_pairs_exhaustive(u, k, i);
        let closed_form = overlap_pair_coefficient(u, k, i)
            .to_u64()
            .expect("coefficient fits u64 at feasible sizes");
        rows.push(OverlapRow {
            overlap: i,
            enumerated,
            closed_form,
            matches: enumerated == closed_form,
        });
    }
    let pass = rows.iter().all(|r| r.matches);
    Ok(DeltaPairsReport {
        schema_version: "1".to_string(),
        kind: "delta-pairs".to_string(),
        u,
        k,
        rows,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_count_report_formula_instance() {
        let params = ParamSet::new(12, 3, 0.3, 1).unwrap();
        let report = clique_count_report(&params, 3, 20_000).unwrap();
        assert!((report.closed_form - 5.94).abs() < 1e-12);
        assert!(report.pass, "formula check failed: {report:?}");
        let text = serde_json::to_string(&report).unwrap();
        let parsed: CliqueCountReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn no_clique_prob_trivial_instances() {
        let report = no_clique_prob_report(3, 3, 1.0, 10, 1).unwrap();
        assert_eq!(report.estimate.mean, 0.0);
        assert!(report.pass);
        let report = no_clique_prob_report(5, 2, 0.0, 10, 1).unwrap();
        assert_eq!(report.estimate.mean, 1.0);
        // Bound is e^0 = 1 with an empty overlap sum.
        assert_eq!(report.janson_bound, 1.0);
        assert!(report.pass);
    }

    #[test]
    fn delta_pairs_u10_k3() {
        let report = delta_pairs_report(10, 3).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].enumerated, 2520);
        assert_eq!(report.rows[0].closed_form, 2520);
        assert!(report.pass);
    }

    #[test]
    fn delta_pairs_rejects_infeasible_sizes() {
        assert!(matches!(
            delta_pairs_report(40, 12),
            Err(ReportError::InfeasibleEnumeration { .. })
        ));
        assert!(matches!(
            delta_pairs_report(3, 5),
            Err(ReportError::Formula(_))
        ));
    }
}
