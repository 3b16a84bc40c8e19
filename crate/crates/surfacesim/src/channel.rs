//! Logical-channel extraction: does the physical lattice operation act on
//! the encoded qubits exactly as its two-by-two Kraus model says?
//!
//! For a split, the harness prepares the mother patch in each of the six
//! single-qubit stabilizer states, runs the physical split under every
//! forced seam-outcome vector, and compares all fifteen two-qubit logical
//! Pauli expectations of the daughters against the isometry's prediction —
//! the seam outcomes are pure gauge, so every vector must give the same
//! logical answer.
//!
//! For a merge, the harness prepares the two parents in each of the nine
//! products of `{|0⟩, |+⟩, |i+⟩}`, runs the physical merge under every
//! forced join vector, selects the Kraus branch named by the *actual*
//! (frame-adjusted) outcome parity, and compares the child's three logical
//! Pauli expectations and the branch probability against the model.
//!
//! Two deliberate corruption knobs exist as negative controls: predicting
//! with the wrong merge convention, and routing the two split-correction
//! chains to opposite boundaries (which injects the stabilizer that the
//! matched choice is defined modulo).

use num_complex::Complex64;
use serde::Serialize;
use tensorcore::ComplexMatrix;

use surgery::{merge_kraus, split_kraus, FrameConvention, SurgeryKind};

use crate::geometry::PlanarPatch;
use crate::workspace::{
    ChainBoundary, LatticeWorkspace, LogicalState, PauliBasis, SplitFixup,
};
use crate::SurfaceError;

/// The four physical lattice operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    RoughSplit,
    SmoothSplit,
    RoughMerge,
    SmoothMerge,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [
        OpKind::RoughSplit,
        OpKind::SmoothSplit,
        OpKind::RoughMerge,
        OpKind::SmoothMerge,
    ];

    pub fn is_split(self) -> bool {
        matches!(self, OpKind::RoughSplit | OpKind::SmoothSplit)
    }

    /// The seam type, which names the matching Kraus family.
    pub fn surgery_kind(self) -> SurgeryKind {
        match self {
            OpKind::RoughSplit | OpKind::RoughMerge => SurgeryKind::Rough,
            OpKind::SmoothSplit | OpKind::SmoothMerge => SurgeryKind::Smooth,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OpKind::RoughSplit => "rough_split",
            OpKind::SmoothSplit => "smooth_split",
            OpKind::RoughMerge => "rough_merge",
            OpKind::SmoothMerge => "smooth_merge",
        }
    }

    /// Number of forced bits one run of this operation consumes on an
    /// `(h, w)` patch (mother size for splits, per-parent size for merges).
    pub fn forced_bits(self, h: usize, w: usize) -> usize {
        match self {
            OpKind::RoughSplit => h - 1,
            OpKind::SmoothSplit => w - 1,
            OpKind::RoughMerge => h,
            OpKind::SmoothMerge => w,
        }
    }
}

impl std::str::FromStr for OpKind {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rough_split" => Ok(OpKind::RoughSplit),
            "smooth_split" => Ok(OpKind::SmoothSplit),
            "rough_merge" => Ok(OpKind::RoughMerge),
            "smooth_merge" => Ok(OpKind::SmoothMerge),
            _ => Err(SurfaceError::Parse(format!("unknown operation {s:?}"))),
        }
    }
}

/// Settings for one channel extraction, including the corruption knobs.
#[derive(Debug, Clone)]
pub struct ChannelOptions {
    pub kind: OpKind,
    /// Convention the physical operation corrects under (merges only).
    pub conv: FrameConvention,
    /// Patch height: the mother's for splits, each parent's for merges.
    pub h: usize,
    /// Patch width, likewise.
    pub w: usize,
    /// Comparison tolerance for expectations and probabilities.
    pub tol: f64,
    /// Seed for the workspace random stream (forced runs consume none).
    pub seed: u64,
    /// Convention used for the *predicted* Kraus branch; `None` matches
    /// `conv`. Setting it to the other convention is a negative control.
    pub predicted_conv: Option<FrameConvention>,
    /// Split correction-chain boundaries; mixing them is a negative control.
    pub fixup: SplitFixup,
}

impl ChannelOptions {
    pub fn new(kind: OpKind, conv: FrameConvention, h: usize, w: usize) -> Self {
        Self {
            kind,
            conv,
            h,
            w,
            tol: 1e-9,
            seed: 0,
            predicted_conv: None,
            fixup: SplitFixup::default(),
        }
    }
}

/// One predicted-vs-observed comparison row.
#[derive(Debug, Clone, Serialize)]
pub struct PauliCheck {
    /// What was compared: a logical Pauli label or `"probability"`.
    pub what: String,
    pub predicted: f64,
    pub observed: f64,
}

/// All comparisons for one input state under one forced vector.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelCase {
    pub input: String,
    /// The requested outcome vector (empty when running unforced).
    pub forced: Vec<u8>,
    /// Actual frame-adjusted seam/join outcomes.
    pub outcomes: Vec<u8>,
    /// Kraus branch the outcomes select (always 0 for splits).
    pub branch: u8,
    pub checks: Vec<PauliCheck>,
    pub max_error: f64,
    pub pass: bool,
}

/// The full comparison grid for one operation at one size.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelReport {
    pub op: OpKind,
    pub conv: String,
    pub h: usize,
    pub w: usize,
    pub tol: f64,
    pub cases: Vec<ChannelCase>,
    pub max_error: f64,
    pub all_pass: bool,
}

/// Runs the extraction with default options (matched prediction, both
/// correction chains to the low boundary).
pub fn extract_logical_channel(
    kind: OpKind,
    conv: FrameConvention,
    h: usize,
    w: usize,
) -> Result<ChannelReport, SurfaceError> {
    extract_logical_channel_with(&ChannelOptions::new(kind, conv, h, w))
}

/// Runs the extraction with explicit options.
pub fn extract_logical_channel_with(
    opts: &ChannelOptions,
) -> Result<ChannelReport, SurfaceError> {
    let bits = opts.kind.forced_bits(opts.h, opts.w);
    let mut cases = Vec::new();
    if opts.kind.is_split() {
        for state in LogicalState::ALL {
            for forced in bit_vectors(bits) {
                cases.push(run_split_once(opts, state, Some(&forced), opts.seed)?);
            }
        }
    } else {
        for s1 in MERGE_INPUTS {
            for s2 in MERGE_INPUTS {
                for forced in bit_vectors(bits) {
                    cases.push(run_merge_once(opts, s1, s2, Some(&forced), opts.seed)?);
                }
            }
        }
    }
    let max_error = cases.iter().fold(0.0f64, |m, c| m.max(c.max_error));
    let all_pass = cases.iter().all(|c| c.pass);
    Ok(ChannelReport {
        op: opts.kind,
        conv: opts.conv.to_string(),
        h: opts.h,
        w: opts.w,
        tol: opts.tol,
        cases,
        max_error,
        all_pass,
    })
}

/// Merge inputs: one representative eigenstate per single-qubit basis is
/// enough to span all stabilizer product states.
pub const MERGE_INPUTS: [LogicalState; 3] =
    [LogicalState::Zero, LogicalState::Plus, LogicalState::PlusI];

/// All length-`n` bit vectors, most significant position first.
pub fn bit_vectors(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|k| ((m >> (n - 1 - k)) & 1) as u8).collect())
        .collect()
}

fn trace(m: &ComplexMatrix) -> Complex64 {
    (0..m.rows().min(m.cols())).map(|i| m.get(i, i)).sum()
}

fn pauli_matrix(basis: Option<PauliBasis>) -> ComplexMatrix {
    match basis {
        None => ComplexMatrix::identity(2),
        Some(PauliBasis::X) => ComplexMatrix::pauli_x(),
        Some(PauliBasis::Y) => ComplexMatrix::pauli_y(),
        Some(PauliBasis::Z) => ComplexMatrix::pauli_z(),
    }
}

fn state_column(state: LogicalState) -> ComplexMatrix {
    ComplexMatrix::column(&state.amplitudes()).expect("two amplitudes")
}

fn density(psi: &ComplexMatrix) -> ComplexMatrix {
    psi.matmul(&psi.adjoint()).expect("outer product")
}

/// Runs one physical split and compares the daughters' joint logical state
/// to the split isometry's output.
pub(crate) fn run_split_once(
    opts: &ChannelOptions,
    state: LogicalState,
    forced: Option<&[u8]>,
    seed: u64,
) -> Result<ChannelCase, SurfaceError> {
    let (h, w) = (opts.h, opts.w);
    let isometry = split_kraus(opts.kind.surgery_kind());
    let rho = density(&state_column(state));
    let out = isometry
        .matmul(&rho)
        .and_then(|m| m.matmul(&isometry.adjoint()))
        .expect("4x4 output density");

    let mut ws = LatticeWorkspace::new(seed);
    ws.init_patch("m", PlanarPatch::new((0, 0), h, w)?, state)?;
    let record = match opts.kind {
        OpKind::RoughSplit => ws.rough_split("m", w / 2, "a", "b", forced, opts.fixup)?,
        OpKind::SmoothSplit => ws.smooth_split("m", h / 2, "a", "b", forced, opts.fixup)?,
        _ => {
            return Err(SurfaceError::InvalidState(
                "run_split_once needs a split operation".into(),
            ))
        }
    };
    ws.assert_patch_stabilized("a")?;
    ws.assert_patch_stabilized("b")?;

    let mut checks = Vec::with_capacity(15);
    let options = [
        None,
        Some(PauliBasis::X),
        Some(PauliBasis::Y),
        Some(PauliBasis::Z),
    ];
    for &p1 in &options {
        for &p2 in &options {
            if p1.is_none() && p2.is_none() {
                continue;
            }
            let big = pauli_matrix(p1).kron(&pauli_matrix(p2));
            let predicted = trace(&big.matmul(&out).expect("4x4")).re;
            let mut factors = Vec::new();
            if let Some(b) = p1 {
                factors.push(("a", b));
            }
            if let Some(b) = p2 {
                factors.push(("b", b));
            }
            let observed = ws.logical_product_expectation(&factors)?.unwrap_or(0) as f64;
            let name = |p: Option<PauliBasis>| p.map_or('I', PauliBasis::as_char);
            checks.push(PauliCheck {
                what: format!("{}{}", name(p1), name(p2)),
                predicted,
                observed,
            });
        }
    }
    Ok(finish_case(
        state.name().to_string(),
        forced.map(<[u8]>::to_vec).unwrap_or_default(),
        record.outcomes,
        0,
        checks,
        opts.tol,
    ))
}

/// Runs one physical merge and compares the child's logical state and the
/// branch probability to the Kraus branch selected by the actual outcome.
pub(crate) fn run_merge_once(
    opts: &ChannelOptions,
    s1: LogicalState,
    s2: LogicalState,
    forced: Option<&[u8]>,
    seed: u64,
) -> Result<ChannelCase, SurfaceError> {
    let (h, w) = (opts.h, opts.w);
    let joint_basis = match opts.kind {
        OpKind::RoughMerge => PauliBasis::X,
        OpKind::SmoothMerge => PauliBasis::Z,
        _ => {
            return Err(SurfaceError::InvalidState(
                "run_merge_once needs a merge operation".into(),
            ))
        }
    };
    let predicted_conv = opts.predicted_conv.unwrap_or(opts.conv);
    let psi = state_column(s1).kron(&state_column(s2));
    let rho = density(&psi);

    let mut ws = LatticeWorkspace::new(seed);
    let (pa, pb) = match opts.kind {
        OpKind::RoughMerge => (
            PlanarPatch::new((0, 0), h, w)?,
            PlanarPatch::new((0, 2 * w as i32), h, w)?,
        ),
        _ => (
            PlanarPatch::new((0, 0), h, w)?,
            PlanarPatch::new((2 * h as i32, 0), h, w)?,
        ),
    };
    ws.init_patch("a", pa, s1)?;
    ws.init_patch("b", pb, s2)?;

    // Probability of the +1 branch, read off before merging.
    let joint = ws
        .logical_product_expectation(&[("a", joint_basis), ("b", joint_basis)])?
        .unwrap_or(0) as f64;
    let p_plus = (1.0 + joint) / 2.0;

    let record = match opts.kind {
        OpKind::RoughMerge => ws.rough_merge("a", "b", "c", opts.conv, forced)?,
        _ => ws.smooth_merge("a", "b", "c", opts.conv, forced)?,
    };
    ws.assert_patch_stabilized("c")?;
    let branch = record.outcome_bit;

    let kraus = merge_kraus(opts.kind.surgery_kind(), predicted_conv, branch);
    let out = kraus
        .matmul(&rho)
        .and_then(|m| m.matmul(&kraus.adjoint()))
        .expect("2x2 output density");
    let p_branch = trace(&out).re;
    if p_branch < opts.tol {
        return Err(SurfaceError::InvalidState(format!(
            "physical merge realized branch {branch} on input {}⊗{} \
             which the model says has probability {p_branch:.3e}",
            s1.name(),
            s2.name()
        )));
    }

    let mut checks = Vec::with_capacity(4);
    let p_observed = if branch == 0 { p_plus } else { 1.0 - p_plus };
    checks.push(PauliCheck {
        what: "probability".to_string(),
        predicted: p_branch,
        observed: p_observed,
    });
    for basis in PauliBasis::ALL {
        let big = pauli_matrix(Some(basis));
        let predicted = trace(&big.matmul(&out).expect("2x2")).re / p_branch;
        let observed = ws.logical_expectation("c", basis)?.unwrap_or(0) as f64;
        checks.push(PauliCheck {
            what: basis.as_char().to_string(),
            predicted,
            observed,
        });
    }
    Ok(finish_case(
        format!("{}⊗{}", s1.name(), s2.name()),
        forced.map(<[u8]>::to_vec).unwrap_or_default(),
        record.joins,
        branch,
        checks,
        opts.tol,
    ))
}

fn finish_case(
    input: String,
    forced: Vec<u8>,
    outcomes: Vec<u8>,
    branch: u8,
    checks: Vec<PauliCheck>,
    tol: f64,
) -> ChannelCase {
    let max_error = checks
        .iter()
        .fold(0.0f64, |m, c| m.max((c.predicted - c.observed).abs()));
    ChannelCase {
        input,
        forced,
        outcomes,
        branch,
        pass: max_error <= tol,
        max_error,
        checks,
    }
}

/// A mixed-boundary fixup: the canonical corruption for negative controls.
pub fn mixed_fixup() -> SplitFixup {
    SplitFixup {
        first: ChainBoundary::Low,
        second: ChainBoundary::High,
    }
}
