//! The "lsp-1" JSON interchange format for procedures.
//!
//! ```json
//! {
//!   "version": "lsp-1",
//!   "inputs": ["c", "t"],
//!   "ops": [
//!     {"op": "split_s", "q": "c", "out": ["c1", "c2"]},
//!     {"op": "merge_r", "in": ["c2", "t"], "out": "t2", "conv": "first"}
//!   ],
//!   "outputs": ["c1", "t2"]
//! }
//! ```
//!
//! Op kinds: `prep_g`/`prep_r` (`q`, `phase` {num, den}), `prep_g_if`
//! (adds `cond`), `split_s`/`split_r` (`q`, `out` pair), `merge_s`/`merge_r`
//! (`in` pair, `out`, `conv` "first"|"second"), `measure_z`/`measure_x`
//! (`q`), `pauli_if` (`q`, `p` "x"|"z", `cond`). A `cond` of −1 means
//! "always"; any other value is an outcome-bit index.

use std::path::Path;

use serde::{Deserialize, Serialize};
use zxgraph::{RationalPhase, RawPhase};

use crate::ops::{Condition, FrameConvention, PauliKind, SurgeryOp};
use crate::procedure::Procedure;
use crate::SurgeryError;

/// Version tag accepted and emitted by this module.
pub const FORMAT_VERSION: &str = "lsp-1";

#[derive(Serialize, Deserialize)]
struct RawProcedure {
    version: String,
    inputs: Vec<String>,
    ops: Vec<RawOp>,
    outputs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", deny_unknown_fields)]
enum RawOp {
    #[serde(rename = "prep_g")]
    PrepG { q: String, phase: RawPhase },
    #[serde(rename = "prep_r")]
    PrepR { q: String, phase: RawPhase },
    #[serde(rename = "prep_g_if")]
    PrepGIf {
        q: String,
        phase: RawPhase,
        cond: i64,
    },
    #[serde(rename = "split_s")]
    SplitS { q: String, out: [String; 2] },
    #[serde(rename = "split_r")]
    SplitR { q: String, out: [String; 2] },
    #[serde(rename = "merge_s")]
    MergeS {
        #[serde(rename = "in")]
        parents: [String; 2],
        out: String,
        conv: String,
    },
    #[serde(rename = "merge_r")]
    MergeR {
        #[serde(rename = "in")]
        parents: [String; 2],
        out: String,
        conv: String,
    },
    #[serde(rename = "measure_z")]
    MeasureZ { q: String },
    #[serde(rename = "measure_x")]
    MeasureX { q: String },
    #[serde(rename = "pauli_if")]
    PauliIf { q: String, p: String, cond: i64 },
}

fn parse_phase(raw: &RawPhase) -> Result<RationalPhase, SurgeryError> {
    RationalPhase::new(raw.num, raw.den)
        .map_err(|e| SurgeryError::Parse(format!("bad phase {}/{}: {e}", raw.num, raw.den)))
}

fn parse_conv(s: &str) -> Result<FrameConvention, SurgeryError> {
    match s {
        "first" => Ok(FrameConvention::CorrectFirst),
        "second" => Ok(FrameConvention::CorrectSecond),
        other => Err(SurgeryError::Parse(format!(
            "unknown convention {other:?} (expected \"first\" or \"second\")"
        ))),
    }
}

fn parse_cond(v: i64) -> Result<Condition, SurgeryError> {
    if v == -1 {
        Ok(Condition::Always)
    } else if v >= 0 {
        Ok(Condition::Outcome(v as usize))
    } else {
        Err(SurgeryError::Parse(format!(
            "condition {v} is neither -1 (always) nor an outcome index"
        )))
    }
}

fn phase_raw(p: &RationalPhase) -> RawPhase {
    (*p).into()
}

fn cond_raw(c: Condition) -> i64 {
    match c {
        Condition::Always => -1,
        Condition::Outcome(i) => i as i64,
    }
}

/// Parses an lsp-1 document. The result is dataflow-validated.
pub fn parse_procedure(text: &str) -> Result<Procedure, SurgeryError> {
    let raw: RawProcedure =
        serde_json::from_str(text).map_err(|e| SurgeryError::Parse(e.to_string()))?;
    if raw.version != FORMAT_VERSION {
        return Err(SurgeryError::Parse(format!(
            "unsupported version {:?} (this build reads {FORMAT_VERSION:?})",
            raw.version
        )));
    }
    let mut ops = Vec::with_capacity(raw.ops.len());
    for op in &raw.ops {
        ops.push(match op {
            RawOp::PrepG { q, phase } => SurgeryOp::PrepGreen {
                q: q.clone(),
                phase: parse_phase(phase)?,
            },
            RawOp::PrepR { q, phase } => SurgeryOp::PrepRed {
                q: q.clone(),
                phase: parse_phase(phase)?,
            },
            RawOp::PrepGIf { q, phase, cond } => SurgeryOp::PrepGreenIf {
                q: q.clone(),
                phase: parse_phase(phase)?,
                cond: parse_cond(*cond)?,
            },
            RawOp::SplitS { q, out } => SurgeryOp::SplitSmooth {
                q: q.clone(),
                out: out.clone(),
            },
            RawOp::SplitR { q, out } => SurgeryOp::SplitRough {
                q: q.clone(),
                out: out.clone(),
            },
            RawOp::MergeS { parents, out, conv } => SurgeryOp::MergeSmooth {
                parents: parents.clone(),
                out: out.clone(),
                conv: parse_conv(conv)?,
            },
            RawOp::MergeR { parents, out, conv } => SurgeryOp::MergeRough {
                parents: parents.clone(),
                out: out.clone(),
                conv: parse_conv(conv)?,
            },
            RawOp::MeasureZ { q } => SurgeryOp::MeasureZ { q: q.clone() },
            RawOp::MeasureX { q } => SurgeryOp::MeasureX { q: q.clone() },
            RawOp::PauliIf { q, p, cond } => SurgeryOp::PauliIf {
                q: q.clone(),
                pauli: match p.as_str() {
                    "x" => PauliKind::X,
                    "z" => PauliKind::Z,
                    other => {
                        return Err(SurgeryError::Parse(format!(
                            "unknown correction {other:?} (expected \"x\" or \"z\")"
                        )))
                    }
                },
                cond: parse_cond(*cond)?,
            },
        });
    }
    let p = Procedure {
        inputs: raw.inputs,
        ops,
        outputs: raw.outputs,
    };
    p.validate()?;
    Ok(p)
}

/// Serializes a procedure as a canonical lsp-1 document.
pub fn procedure_to_string(p: &Procedure) -> String {
    let ops = p
        .ops
        .iter()
        .map(|op| match op {
            SurgeryOp::PrepGreen { q, phase } => RawOp::PrepG {
                q: q.clone(),
                phase: phase_raw(phase),
            },
            SurgeryOp::PrepRed { q, phase } => RawOp::PrepR {
                q: q.clone(),
                phase: phase_raw(phase),
            },
            SurgeryOp::PrepGreenIf { q, phase, cond } => RawOp::PrepGIf {
                q: q.clone(),
                phase: phase_raw(phase),
                cond: cond_raw(*cond),
            },
            SurgeryOp::SplitSmooth { q, out } => RawOp::SplitS {
                q: q.clone(),
                out: out.clone(),
            },
            SurgeryOp::SplitRough { q, out } => RawOp::SplitR {
                q: q.clone(),
                out: out.clone(),
            },
            SurgeryOp::MergeSmooth { parents, out, conv } => RawOp::MergeS {
                parents: parents.clone(),
                out: out.clone(),
                conv: conv.to_string(),
            },
            SurgeryOp::MergeRough { parents, out, conv } => RawOp::MergeR {
                parents: parents.clone(),
                out: out.clone(),
                conv: conv.to_string(),
            },
            SurgeryOp::MeasureZ { q } => RawOp::MeasureZ { q: q.clone() },
            SurgeryOp::MeasureX { q } => RawOp::MeasureX { q: q.clone() },
            SurgeryOp::PauliIf { q, pauli, cond } => RawOp::PauliIf {
                q: q.clone(),
                p: match pauli {
                    PauliKind::X => "x".to_string(),
                    PauliKind::Z => "z".to_string(),
                },
                cond: cond_raw(*cond),
            },
        })
        .collect();
    let raw = RawProcedure {
        version: FORMAT_VERSION.to_string(),
        inputs: p.inputs.clone(),
        ops,
        outputs: p.outputs.clone(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serialization is infallible");
    s.push('\n');
    s
}

/// Reads and parses a procedure file.
pub fn read_procedure(path: &Path) -> Result<Procedure, SurgeryError> {
    parse_procedure(&std::fs::read_to_string(path)?)
}

/// Writes a procedure file in canonical form.
pub fn write_procedure(path: &Path, p: &Procedure) -> Result<(), SurgeryError> {
    std::fs::write(path, procedure_to_string(p))?;
    Ok(())
}
