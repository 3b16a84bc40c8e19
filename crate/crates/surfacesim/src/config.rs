//! Experiment runner: a JSON config in, one JSON record per executed
//! branch out.
//!
//! A config names one lattice operation, the patch size, the correction
//! convention, the logical input states, and one of three outcome modes:
//!
//! * `"forced": [bits]` — run the operation once with that exact
//!   frame-adjusted outcome vector;
//! * `"forced": null` with `"trials": 0` — sweep every outcome vector
//!   deterministically (the exhaustive gauge check);
//! * `"forced": null` with `"trials": n` — sample `n` seeded random runs
//!   and report each realized branch with its count and a frequency check
//!   against the model probability at three binomial standard deviations.
//!
//! Every record carries the predicted-vs-observed logical comparisons from
//! the channel harness, so a report line is self-contained evidence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use surgery::FrameConvention;

use crate::channel::{
    bit_vectors, run_merge_once, run_split_once, ChannelCase, ChannelOptions, OpKind,
    PauliCheck,
};
use crate::workspace::LogicalState;
use crate::SurfaceError;

/// Deserialized experiment description.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// `"rough_split"`, `"smooth_split"`, `"rough_merge"`, `"smooth_merge"`.
    pub op: String,
    /// Patch height (the mother's for splits, each parent's for merges).
    pub h: usize,
    /// Patch width, likewise.
    pub w: usize,
    /// `"first"` or `"second"`; defaults to `"first"`. Splits ignore it.
    #[serde(default)]
    pub conv: Option<String>,
    /// Logical input state names: one for splits, two for merges.
    pub inputs: Vec<String>,
    /// Exact outcome vector, or `null` to sweep (trials = 0) or sample.
    #[serde(default)]
    pub forced: Option<Vec<u8>>,
    /// Number of random runs when `forced` is `null`; 0 means sweep.
    #[serde(default)]
    pub trials: usize,
    /// Base seed for the random stream.
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    /// Parses a config from JSON text.
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text)
            .map_err(|e| SurfaceError::Parse(format!("experiment config: {e}")))
    }
}

/// One emitted record: a single executed branch with its evidence.
#[derive(Debug, Clone, Serialize)]
pub struct ReportLine {
    pub op: OpKind,
    pub conv: String,
    pub h: usize,
    pub w: usize,
    /// `"forced"`, `"sweep"`, or `"trials"`.
    pub mode: String,
    pub input: String,
    /// The requested outcome vector (absent when unforced).
    pub forced: Option<Vec<u8>>,
    /// Actual frame-adjusted outcomes (absent in aggregated trial records,
    /// where they vary within the branch).
    pub outcomes: Option<Vec<u8>>,
    /// Kraus branch the outcomes select (splits always report 0).
    pub branch: u8,
    /// Number of runs this record aggregates (1 outside trials mode).
    pub count: usize,
    /// Total trials in the experiment (0 outside trials mode).
    pub trials: usize,
    pub checks: Vec<PauliCheck>,
    pub max_error: f64,
    pub pass: bool,
}

fn parse_conv(conv: &Option<String>) -> Result<FrameConvention, SurfaceError> {
    match conv.as_deref() {
        None | Some("first") => Ok(FrameConvention::CorrectFirst),
        Some("second") => Ok(FrameConvention::CorrectSecond),
        Some(other) => Err(SurfaceError::Parse(format!(
            "convention must be \"first\" or \"second\", got {other:?}"
        ))),
    }
}

fn parse_inputs(
    kind: OpKind,
    names: &[String],
) -> Result<Vec<LogicalState>, SurfaceError> {
    let want = if kind.is_split() { 1 } else { 2 };
    if names.len() != want {
        return Err(SurfaceError::Parse(format!(
            "{} takes {want} input state(s), got {}",
            kind.name(),
            names.len()
        )));
    }
    names.iter().map(|n| n.parse()).collect()
}

fn run_case(
    opts: &ChannelOptions,
    states: &[LogicalState],
    forced: Option<&[u8]>,
    seed: u64,
) -> Result<ChannelCase, SurfaceError> {
    if opts.kind.is_split() {
        run_split_once(opts, states[0], forced, seed)
    } else {
        run_merge_once(opts, states[0], states[1], forced, seed)
    }
}

fn line_from_case(
    opts: &ChannelOptions,
    mode: &str,
    case: ChannelCase,
    forced: Option<Vec<u8>>,
) -> ReportLine {
    ReportLine {
        op: opts.kind,
        conv: opts.conv.to_string(),
        h: opts.h,
        w: opts.w,
        mode: mode.to_string(),
        input: case.input,
        forced,
        outcomes: Some(case.outcomes),
        branch: case.branch,
        count: 1,
        trials: 0,
        checks: case.checks,
        max_error: case.max_error,
        pass: case.pass,
    }
}

/// Executes a config and returns one record per branch.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ReportLine>, SurfaceError> {
    let kind: OpKind = config.op.parse()?;
    let conv = parse_conv(&config.conv)?;
    let states = parse_inputs(kind, &config.inputs)?;
    let mut opts = ChannelOptions::new(kind, conv, config.h, config.w);
    opts.seed = config.seed;
    let bits = kind.forced_bits(config.h, config.w);

    if let Some(forced) = &config.forced {
        if forced.len() != bits {
            return Err(SurfaceError::Parse(format!(
                "{} on a {}x{} patch takes {bits} forced bits, got {}",
                kind.name(),
                config.h,
                config.w,
                forced.len()
            )));
        }
        let case = run_case(&opts, &states, Some(forced), config.seed)?;
        return Ok(vec![line_from_case(
            &opts,
            "forced",
            case,
            Some(forced.clone()),
        )]);
    }

    if config.trials == 0 {
        let mut lines = Vec::new();
        for forced in bit_vectors(bits) {
            let case = run_case(&opts, &states, Some(&forced), config.seed)?;
            lines.push(line_from_case(&opts, "sweep", case, Some(forced)));
        }
        return Ok(lines);
    }

    // Trials mode: sample, then aggregate per realized branch.
    struct BranchTally {
        count: usize,
        max_error: f64,
        all_pass: bool,
        first: ChannelCase,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tallies: BTreeMap<u8, BranchTally> = BTreeMap::new();
    for _ in 0..config.trials {
        let run_seed = rng.gen::<u64>();
        let case = run_case(&opts, &states, None, run_seed)?;
        tallies
            .entry(case.branch)
            .and_modify(|t| {
                t.count += 1;
                t.max_error = t.max_error.max(case.max_error);
                t.all_pass &= case.pass;
            })
            .or_insert(BranchTally {
                count: 1,
                max_error: case.max_error,
                all_pass: case.pass,
                first: case,
            });
    }

    let mut lines = Vec::new();
    for (branch, tally) in tallies {
        let observed = tally.count as f64 / config.trials as f64;
        // Splits have a single branch; merges carry the model probability
        // as their first check.
        let predicted = tally
            .first
            .checks
            .iter()
            .find(|c| c.what == "probability")
            .map_or(1.0, |c| c.predicted);
        // Floating error can push a deterministic branch's probability a few
        // ulps past 1, which would make the variance negative.
        let p = predicted.clamp(0.0, 1.0);
        let sigma = (p * (1.0 - p) / config.trials as f64).sqrt();
        let freq_tol = 3.0 * sigma + 1e-12;
        let freq_pass = (observed - predicted).abs() <= freq_tol;
        let mut checks = tally.first.checks;
        checks.push(PauliCheck {
            what: "frequency".to_string(),
            predicted,
            observed,
        });
        lines.push(ReportLine {
            op: kind,
            conv: conv.to_string(),
            h: config.h,
            w: config.w,
            mode: "trials".to_string(),
            input: tally.first.input,
            forced: None,
            outcomes: None,
            branch,
            count: tally.count,
            trials: config.trials,
            checks,
            max_error: tally.max_error,
            pass: tally.all_pass && freq_pass,
        });
    }
    Ok(lines)
}
