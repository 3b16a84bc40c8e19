//! ZX diagrams: open graphs of phased green/red spiders with an explicit
//! global scalar, evaluated exactly as tensors.
//!
//! The model deliberately stays small — two spider colours, rational phases,
//! ordered boundaries, parallel edges — because everything downstream rests
//! on one property: *every* diagram has a definite dense matrix, computed by
//! [`evaluate`], and every structural operation (adjoint, composition,
//! rewriting in the companion crate) preserves or transforms that matrix in
//! a way the test suites check against independent linear algebra.
//!
//! Scalars are never dropped: where informal diagram reasoning says "equal
//! up to normalization", diagrams here carry the normalization in their
//! `scalar` field so that equality can be asserted exactly.
//!
//! See [`tensor`] for the normalization and index conventions, and [`io`]
//! for the `zxs-1` file format.

mod compose;
mod diagram;
mod dot;
pub mod io;
mod phase;
pub mod tensor;

use thiserror::Error;

pub use compose::{compose_parallel, compose_sequential, dagger_diagram};
pub use diagram::{Color, NodeId, NodeKind, Violation, ZXDiagram};
pub use dot::{diagram_to_dot, export_dot};
pub use io::{diagram_to_string, parse_diagram, read_diagram, write_diagram, FORMAT_VERSION};
pub use phase::{PhaseError, RationalPhase, RawPhase};
pub use tensor::{evaluate, node_tensor, two_norm_of, EVAL_CAP};

/// Errors from diagram construction, evaluation, composition, and I/O.
#[derive(Debug, Error)]
pub enum ZxError {
    /// The diagram violates structural invariants (joined violation list).
    #[error("invalid diagram: {0}")]
    Invalid(String),
    /// Evaluation would exceed the wire-count cap.
    #[error("evaluation cap exceeded: {0}")]
    CapExceeded(String),
    /// Sequential composition with mismatched boundary arities.
    #[error("sequential composition arity mismatch: {0} outputs vs {1} inputs")]
    ComposeArity(usize, usize),
    /// A spider with no legs was requested.
    #[error("spider degree must be at least 1")]
    ZeroDegree,
    /// Phase construction failed.
    #[error(transparent)]
    Phase(#[from] PhaseError),
    /// Malformed diagram file.
    #[error("parse error: {0}")]
    Parse(String),
    /// Underlying file-system failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
