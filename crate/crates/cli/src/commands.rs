//! Implementations of the non-suite subcommands: diagram evaluation,
//! simplification, DOT export, procedure sampling, and lattice experiments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tensorcore::ComplexMatrix;

use rewrite::{normalize, random_diagram, semantics_equal, EqualityMode, RandomLimits};
use surgery::{
    branch_probability, builtin, enumerate_branches, green_prep, red_prep, sample_from,
    Procedure,
};
use surfacesim::{run_experiment, ExperimentConfig};
use zxgraph::{diagram_to_dot, diagram_to_string, evaluate, read_diagram, ZXDiagram};

use crate::CliError;

/// Serialized matrix: shape plus row-major `[re, im]` entry pairs.
#[derive(Serialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixDoc {
    fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| {
                    (0..m.cols())
                        .map(|c| {
                            let z = m.get(r, c);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}×{} matrix:", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| {
                let z = m.get(r, c);
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    out
}

fn load_diagram(path: &Path) -> Result<ZXDiagram, CliError> {
    let (d, _warnings) = read_diagram(path)?;
    Ok(d)
}

/// `zx eval`: evaluate a diagram file to its tensor.
///
/// Returns the text printed to stdout; with `out` set, also writes the
/// matrix as JSON to that path.
pub fn cmd_eval(path: &Path, out: Option<&Path>) -> Result<String, CliError> {
    let d = load_diagram(path)?;
    let tensor = evaluate(&d)?;
    if let Some(out_path) = out {
        let doc = MatrixDoc::from_matrix(&tensor);
        std::fs::write(out_path, serde_json::to_string_pretty(&doc).expect("plain data"))?;
    }
    Ok(format_matrix(&tensor))
}

/// The outcome of `zx simplify`: the normalized diagram's JSON text and the
/// step log (one line per rewrite applied).
pub struct SimplifyOutput {
    pub diagram_json: String,
    pub steps: Vec<String>,
}

/// `zx simplify`: rewrite to normal form, self-checking that the tensor is
/// preserved. A self-check failure is a soundness error (exit 4).
pub fn cmd_simplify(path: &Path, tol: f64) -> Result<SimplifyOutput, CliError> {
    let d = load_diagram(path)?;
    let (nd, steps) = normalize(&d)?;
    let preserved = semantics_equal(&d, &nd, EqualityMode::Exact, tol)?;
    if !preserved {
        return Err(CliError::Soundness(format!(
            "normalization changed the tensor of {} beyond {tol:e}",
            path.display()
        )));
    }
    Ok(SimplifyOutput {
        diagram_json: diagram_to_string(&nd),
        steps: steps.iter().map(format_step).collect(),
    })
}

fn format_step(step: &rewrite::RewriteStep) -> String {
    let sites: Vec<String> = step.sites.iter().map(|n| n.to_string()).collect();
    let delta = step.scalar_delta;
    if (delta - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        format!("{} at [{}]", step.rule, sites.join(", "))
    } else {
        format!(
            "{} at [{}], scalar × ({:+.6}{:+.6}i)",
            step.rule,
            sites.join(", "),
            delta.re,
            delta.im
        )
    }
}

/// `zx simplify --fuzz N`: normalize N seeded random diagrams, self-checking
/// each. Returns a one-line summary; any failure is a soundness error.
pub fn cmd_simplify_fuzz(n: usize, seed: u64, tol: f64) -> Result<String, CliError> {
    let limits = RandomLimits::default();
    for k in 0..n as u64 {
        let d = random_diagram(seed.wrapping_add(k), limits);
        let (nd, _) = normalize(&d)?;
        if !semantics_equal(&d, &nd, EqualityMode::Exact, tol)? {
            return Err(CliError::Soundness(format!(
                "normalization changed the tensor of seeded diagram {} (seed {})",
                k,
                seed.wrapping_add(k)
            )));
        }
    }
    Ok(format!(
        "{n}/{n} seeded diagrams normalized with the tensor preserved (tol {tol:e})\n"
    ))
}

/// `zx dot`: Graphviz rendering of a diagram file.
pub fn cmd_dot(path: &Path) -> Result<String, CliError> {
    let d = load_diagram(path)?;
    Ok(diagram_to_dot(&d))
}

/// Resolves a procedure argument: a readable file is parsed as lsp-1;
/// otherwise the name is looked up in the builtin catalog.
pub fn resolve_procedure(arg: &str) -> Result<(String, Procedure), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let p = surgery::io::read_procedure(path)?;
        let name = path
            .file_stem()
            .map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned());
        Ok((name, p))
    } else {
        Ok((arg.to_string(), builtin(arg)?))
    }
}

/// Builds the product ket named by `spec`, e.g. `|0+⟩`, `++`, or `|i−⟩`:
/// one factor per character over {0, 1, +, −, i+, i−}.
pub fn parse_ket(spec: &str, qubits: usize) -> Result<ComplexMatrix, CliError> {
    let core: String = spec
        .chars()
        .filter(|c| !matches!(c, '|' | '⟩' | '>'))
        .collect();
    let mut factors: Vec<ComplexMatrix> = Vec::new();
    let mut chars = core.chars().peekable();
    while let Some(ch) = chars.next() {
        use zxgraph::RationalPhase;
        let ket = match ch {
            '0' => red_prep(&RationalPhase::zero()),
            '1' => red_prep(&RationalPhase::pi()),
            '+' => green_prep(&RationalPhase::zero()),
            '-' | '−' => green_prep(&RationalPhase::pi()),
            'i' => {
                let sign = chars.next();
                let half = RationalPhase::new(1, 2).expect("π/2");
                match sign {
                    Some('+') => green_prep(&half),
                    Some('-') | Some('−') => green_prep(&half.negate()),
                    _ => {
                        return Err(CliError::Parse(format!(
                            "state {spec:?}: expected i+ or i−"
                        )))
                    }
                }
            }
            other => {
                return Err(CliError::Parse(format!(
                    "state {spec:?}: unknown factor {other:?}"
                )))
            }
        };
        factors.push(ket);
    }
    if factors.len() != qubits {
        return Err(CliError::Parse(format!(
            "state {spec:?} has {} factor(s), procedure takes {qubits}",
            factors.len()
        )));
    }
    let mut psi = factors.remove(0);
    for f in &factors {
        psi = psi.kron(f);
    }
    Ok(psi)
}

/// `surgery sample`: draw seeded heralded outcomes and print a histogram
/// with the model probability beside each observed frequency.
pub fn cmd_sample(
    proc_arg: &str,
    state: &str,
    seed: u64,
    trials: usize,
) -> Result<String, CliError> {
    let (name, p) = resolve_procedure(proc_arg)?;
    let psi = parse_ket(state, p.inputs.len())?;
    let ensemble = enumerate_branches(&p)?;
    let rho = psi
        .matmul(&psi.adjoint())
        .expect("outer product of a column");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for _ in 0..trials {
        let (outcomes, _post) = sample_from(&ensemble, &psi, &mut rng)?;
        *counts.entry(outcomes).or_insert(0) += 1;
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "procedure {name}: {} input(s), {} outcome bit(s), {} branch(es)",
        p.inputs.len(),
        p.outcome_bits(),
        ensemble.branches.len()
    );
    let _ = writeln!(out, "state {state}, {trials} trial(s), seed {seed}");
    for (outcomes, count) in &counts {
        let bits: String = outcomes.iter().map(|b| char::from(b'0' + b)).collect();
        let freq = *count as f64 / trials as f64;
        let model = branch_probability(&ensemble, ensemble.index_of(outcomes), &rho)?;
        let _ = writeln!(
            out,
            "outcomes {bits}: count {count:6} freq {freq:.4} model {model:.4}"
        );
    }
    Ok(out)
}

/// `surface run`: execute an experiment config, returning the JSON-lines
/// report and whether every record passed.
pub fn cmd_surface_run(path: &Path) -> Result<(String, bool), CliError> {
    let text = std::fs::read_to_string(path)?;
    let cfg = ExperimentConfig::from_json(&text)?;
    let lines = run_experiment(&cfg)?;
    let all_pass = lines.iter().all(|l| l.pass);
    let mut out = String::new();
    for line in &lines {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(line).expect("report lines are plain data")
        );
    }
    Ok((out, all_pass))
}
