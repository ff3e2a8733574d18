//! Command implementations: thin wrappers mapping library calls to files,
//! summaries, and exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;

use pathstab_core::construction::{
    construct_witness, theoretical_thresholds, ConstructionReport, PaperModeInfo, PipelineError,
    PipelineOptions, Thresholds,
};
use pathstab_core::format::{load_digraph, write_layered_json, write_ugraph, LoadedDigraph};
use pathstab_core::formulas::paper_edge_probability;
use pathstab_core::random::{sample_gnp, ParamSet};
use pathstab_core::report::{clique_count_report, delta_pairs_report, no_clique_prob_report};
use pathstab_core::search::{search_small, SearchOutcome};
use pathstab_core::verifier::{
    gallai_milgram_partition, validate_path_partition, verify_adversarial, verify_exhaustive,
    Verdict, VerdictOutcome,
};

use crate::{
    ConstructArgs, EstimateArgs, EstimateKind, PartitionArgs, SampleArgs, SearchArgs, VerifyArgs,
    VerifyMode, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE,
};

pub struct Io {
    pub quiet: bool,
    pub json: bool,
}

impl Io {
    /// Informational summary on stderr: plain text, or JSON with --json.
    fn info(&self, plain: &str, json_value: serde_json::Value) {
        if self.quiet {
            return;
        }
        if self.json {
            eprintln!("{json_value}");
        } else {
            eprintln!("{plain}");
        }
    }

    fn usage_error(&self, message: &str) -> i32 {
        eprintln!("error: {message}");
        EXIT_USAGE
    }

    fn runtime_error(&self, err: &anyhow::Error) -> i32 {
        eprintln!("error: {err:#}");
        EXIT_RUNTIME
    }
}

/// JSON reports are pretty-printed with a trailing newline.
fn to_json_text<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

pub fn sample(io: &Io, args: SampleArgs) -> i32 {
    let params = match ParamSet::new(args.n, 1, args.p, args.seed) {
        Ok(p) => p,
        Err(e) => return io.usage_error(&e.to_string()),
    };
    let g = sample_gnp(&params);
    let text = write_ugraph(&g);
    if let Err(e) = emit(args.out.as_deref(), &text) {
        return io.runtime_error(&e);
    }
    io.info(
        &format!("n={} m={} seed={}", g.n(), g.edge_count(), args.seed),
        json!({"n": g.n(), "m": g.edge_count(), "seed": args.seed}),
    );
    EXIT_OK
}

pub fn estimate(io: &Io, args: EstimateArgs) -> i32 {
    match args.kind {
        EstimateKind::CliqueCount {
            n,
            k,
            p,
            trials,
            seed,
            out,
        } => {
            let params = match ParamSet::new(n, k, p, seed) {
                Ok(p) => p,
                Err(e) => return io.usage_error(&e.to_string()),
            };
            let report = match clique_count_report(&params, k, trials) {
                Ok(r) => r,
                Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
            };
            if let Err(e) = emit(out.as_deref(), &to_json_text(&report)) {
                return io.runtime_error(&e);
            }
            io.info(
                &format!(
                    "clique-count: closed_form={} mean={} stderr={} pass={}",
                    report.closed_form, report.estimate.mean, report.estimate.stderr, report.pass
                ),
                json!({"kind": "clique-count", "pass": report.pass}),
            );
            if report.pass {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        EstimateKind::NoCliqueProb {
            u,
            k,
            p,
            trials,
            seed,
            out,
        } => {
            let report = match no_clique_prob_report(u, k, p, trials, seed) {
                Ok(r) => r,
                Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
            };
            if let Err(e) = emit(out.as_deref(), &to_json_text(&report)) {
                return io.runtime_error(&e);
            }
            io.info(
                &format!(
                    "no-clique-prob: bound={} mean={} stderr={} pass={}",
                    report.janson_bound, report.estimate.mean, report.estimate.stderr, report.pass
                ),
                json!({"kind": "no-clique-prob", "pass": report.pass}),
            );
            if report.pass {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        EstimateKind::DeltaPairs { u, k, out } => {
            let report = match delta_pairs_report(u, k) {
                Ok(r) => r,
                Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
            };
            if let Err(e) = emit(out.as_deref(), &to_json_text(&report)) {
                return io.runtime_error(&e);
            }
            io.info(
                &format!("delta-pairs: u={} k={} pass={}", u, k, report.pass),
                json!({"kind": "delta-pairs", "pass": report.pass}),
            );
            if report.pass {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
    }
}

pub fn construct(io: &Io, args: ConstructArgs) -> i32 {
    if args.k < 2 {
        return io.usage_error(&PipelineError::UnsupportedK(args.k).to_string());
    }
    let mut paper_mode = None;
    let p = if args.paper_mode {
        if !args.n.is_multiple_of(2 * args.k) {
            return io.usage_error(&format!(
                "paper mode requires n to be a multiple of 2k = {}; got n = {}",
                2 * args.k,
                args.n
            ));
        }
        let (p, clamped) = paper_edge_probability(args.n as u64, args.k as u64);
        if clamped && !io.quiet {
            eprintln!(
                "warning: 20 n^(-2/k) exceeds 1 at n = {}; clamped to p = 1",
                args.n
            );
        }
        paper_mode = Some(PaperModeInfo { p, clamped });
        p
    } else {
        match args.p {
            Some(p) => p,
            None => return io.usage_error("either --p or --paper-mode is required"),
        }
    };
    let params = match ParamSet::new(args.n, args.k, p, args.seed) {
        Ok(p) => p,
        Err(e) => return io.usage_error(&e.to_string()),
    };
    if args.attempts == 0 {
        return io.usage_error("--attempts must be at least 1");
    }
    let defaults = theoretical_thresholds(args.k).expect("k >= 2 checked above");
    let thresholds = Thresholds {
        max_cliques: args.max_cliques.unwrap_or(defaults.max_cliques),
        min_coverage: args.min_coverage.unwrap_or(defaults.min_coverage),
    };
    let options = PipelineOptions::new(thresholds, args.attempts);
    let mut report = match construct_witness(&params, &options) {
        Ok(r) => r,
        Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
    };
    report.paper_mode = paper_mode;
    if args.canonical {
        report.timings = None;
    }
    if let Err(e) = emit(args.out.as_deref(), &to_json_text(&report)) {
        return io.runtime_error(&e);
    }
    io.info(
        &format!(
            "construct: success={} attempt={} layers={} coverage={}/{}",
            report.success,
            report.reported_attempt,
            report.attempts[report.reported_attempt as usize].layer_count,
            report.attempts[report.reported_attempt as usize].coverage,
            args.n
        ),
        json!({"success": report.success, "reported_attempt": report.reported_attempt}),
    );
    construct_exit_code(&report)
}

fn construct_exit_code(report: &ConstructionReport) -> i32 {
    if report.success {
        EXIT_OK
    } else if report.candidate.is_none() {
        // Every attempt aborted before producing a candidate (enumeration
        // truncation): no definitive threshold verdict exists.
        EXIT_INCONCLUSIVE
    } else {
        EXIT_NEGATIVE
    }
}

pub fn verify(io: &Io, args: VerifyArgs) -> i32 {
    if args.k < 1 {
        return io.usage_error("--k must be at least 1");
    }
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            return io.runtime_error(
                &anyhow::Error::new(e).context(format!("reading {}", args.input.display())),
            )
        }
    };
    let loaded = match load_digraph(&text) {
        Ok(d) => d,
        Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
    };
    let dense_owner;
    let digraph = match &loaded {
        LoadedDigraph::Plain(d) => d,
        LoadedDigraph::Layered(ld) => {
            dense_owner = ld.dense().clone();
            &dense_owner
        }
    };
    let verdict: Verdict = match args.mode {
        VerifyMode::Exhaustive => verify_exhaustive(digraph, args.k, args.budget, args.disjoint),
        VerifyMode::Adversarial => {
            let seed = match args.seed {
                Some(s) => s,
                None => return io.usage_error("--seed is required in adversarial mode"),
            };
            verify_adversarial(digraph, args.k, args.budget, seed, args.disjoint)
        }
    };
    if let Err(e) = emit(args.out.as_deref(), &to_json_text(&verdict)) {
        return io.runtime_error(&e);
    }
    let outcome_text = match verdict.outcome {
        VerdictOutcome::HoldsExhaustive => "holds-exhaustive",
        VerdictOutcome::HoldsNoCounterexample => "holds-no-counterexample",
        VerdictOutcome::Fails => "fails",
        VerdictOutcome::Inconclusive => "inconclusive",
    };
    io.info(
        &format!("verify: outcome={outcome_text} k={}", args.k),
        json!({"outcome": outcome_text, "k": args.k}),
    );
    match verdict.outcome {
        VerdictOutcome::HoldsExhaustive | VerdictOutcome::HoldsNoCounterexample => EXIT_OK,
        VerdictOutcome::Fails => EXIT_NEGATIVE,
        VerdictOutcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn partition(io: &Io, args: PartitionArgs) -> i32 {
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            return io.runtime_error(
                &anyhow::Error::new(e).context(format!("reading {}", args.input.display())),
            )
        }
    };
    let loaded = match load_digraph(&text) {
        Ok(d) => d,
        Err(e) => return io.runtime_error(&anyhow::anyhow!(e)),
    };
    // Layered inputs are partitioned on their dense form, then mapped back
    // to host ids so the output refers to the file's own vertex names.
    let (paths, host_map): (Vec<Vec<usize>>, Option<Vec<usize>>) = match &loaded {
        LoadedDigraph::Plain(d) => {
            let partition = gallai_milgram_partition(d);
            validate_path_partition(d, &partition).expect("partitioner output is valid");
            (partition.paths, None)
        }
        LoadedDigraph::Layered(ld) => {
            let partition = gallai_milgram_partition(ld.dense());
            validate_path_partition(ld.dense(), &partition).expect("partitioner output is valid");
            (partition.paths, Some(ld.vertices().to_vec()))
        }
    };
    let paths: Vec<Vec<usize>> = match host_map {
        None => paths,
        Some(map) => paths
            .into_iter()
            .map(|p| p.into_iter().map(|v| map[v]).collect())
            .collect(),
    };
    if let Err(e) = emit(args.out.as_deref(), &to_json_text(&paths)) {
        return io.runtime_error(&e);
    }
    io.info(
        &format!("partition: paths={}", paths.len()),
        json!({"paths": paths.len()}),
    );
    EXIT_OK
}

pub fn search(io: &Io, args: SearchArgs) -> i32 {
    if args.k < 1 {
        return io.usage_error("--k must be at least 1");
    }
    let report = search_small(args.k, args.max_n, args.budget);
    let witness_path: Option<PathBuf> = match (&report.witness, &args.out) {
        (Some(w), Some(path)) => {
            let layered = pathstab_core::digraph::LayeredDigraph::from_parts(
                w.n,
                w.k,
                w.layers.clone(),
                w.arcs.clone(),
            )
            .expect("search witness is structurally valid");
            if let Err(e) = emit(Some(path), &write_layered_json(&layered)) {
                return io.runtime_error(&e);
            }
            Some(path.clone())
        }
        _ => None,
    };
    print!("{}", to_json_text(&report));
    let outcome_text = match report.outcome {
        SearchOutcome::Found => "found",
        SearchOutcome::NoneWithinBounds => "none-within-bounds",
        SearchOutcome::BudgetExhausted => "budget-exhausted",
    };
    io.info(
        &format!(
            "search: outcome={outcome_text} examined={}{}",
            report.examined,
            witness_path
                .as_ref()
                .map(|p| format!(" witness={}", p.display()))
                .unwrap_or_default()
        ),
        json!({"outcome": outcome_text, "examined": report.examined}),
    );
    match report.outcome {
        SearchOutcome::Found => EXIT_OK,
        SearchOutcome::NoneWithinBounds => EXIT_NEGATIVE,
        SearchOutcome::BudgetExhausted => EXIT_INCONCLUSIVE,
    }
}
