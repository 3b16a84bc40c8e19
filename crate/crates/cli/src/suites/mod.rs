//! Named verification suites behind `zxsurg verify`.
//!
//! Each suite re-derives a family of claims from scratch at run time —
//! nothing is read from cached fixtures — and reports one [`VerifyCase`]
//! per claim. `--suite all` runs every suite in the order listed in
//! [`SUITE_NAMES`].

pub mod appendix;
pub mod cnot;
pub mod physical;
pub mod tgate;
pub mod zx_rules;

use tensorcore::ComplexMatrix;

use crate::report::VerifyReport;
use crate::CliError;

/// Suite names in the order `--suite all` runs them.
pub const SUITE_NAMES: [&str; 5] = ["zx-rules", "cnot", "tgate", "appendix", "physical"];

/// Runs the named suite, or every suite for `all`.
pub fn run_suites(name: &str, tol: f64, seed: u64) -> Result<Vec<VerifyReport>, CliError> {
    if name == "all" {
        return SUITE_NAMES.iter().map(|n| run_one(n, tol, seed)).collect();
    }
    Ok(vec![run_one(name, tol, seed)?])
}

fn run_one(name: &str, tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    match name {
        "zx-rules" => zx_rules::run(tol, seed),
        "cnot" => cnot::run(tol, seed),
        "tgate" => tgate::run(tol, seed),
        "appendix" => appendix::run(tol, seed),
        "physical" => physical::run(tol, seed),
        other => Err(CliError::Parse(format!(
            "unknown suite {other:?} (expected all, zx-rules, cnot, tgate, appendix, or physical)"
        ))),
    }
}

/// Largest entry-wise deviation between two same-shaped matrices.
pub(crate) fn distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).expect("same shape").max_abs()
}

/// Deviation after the best global phase is divided out: the smallest
/// `max|a − e^{iα} b|` over α, found by aligning the largest entry of `a`
/// against the corresponding entry of `b`.
pub(crate) fn phase_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let mut best_idx = None;
    let mut best_mag = 0.0;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let m = a.get(r, c).norm();
            if m > best_mag {
                best_mag = m;
                best_idx = Some((r, c));
            }
        }
    }
    let Some((r, c)) = best_idx else {
        return distance(a, b); // a is all zeros: only b == 0 matches
    };
    let bz = b.get(r, c);
    if bz.norm() == 0.0 {
        return distance(a, b);
    }
    let alpha = (a.get(r, c) / bz) / (a.get(r, c) / bz).norm();
    distance(a, &b.scale(alpha))
}

