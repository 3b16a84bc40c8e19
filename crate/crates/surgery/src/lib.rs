//! Logical-level lattice surgery.
//!
//! A [`Procedure`] is a small dataflow program over named logical
//! qubits: prepare ancillas in green (X-boundary) or red (Z-boundary)
//! states, split patches smoothly or roughly, merge pairs of patches
//! (each merge reporting a ±1 outcome), measure single patches out, and
//! apply Pauli corrections conditioned on earlier outcomes.
//!
//! Every merge and destructive measurement contributes one outcome bit,
//! so a procedure with `m` such ops defines `2^m` *branches*. Each
//! branch is a Kraus operator from the input qubits to the output
//! qubits; together they form a [`BranchEnsemble`] satisfying
//! `Σ K†K = I` whenever no post-selection is involved. The ensemble is
//! what the rest of the toolchain consumes:
//!
//! * [`enumerate_branches`] builds the ensemble exactly, branch by
//!   branch, by multiplying sparse-embedded isometries and Kraus
//!   operators in declaration order;
//! * [`branch_probability`] and [`sample`] run the Born rule against a
//!   density matrix or state vector;
//! * [`branch_to_zx`] translates a single branch into a spider diagram,
//!   and [`verify_model`] checks that translation against the matrix
//!   semantics — the bridge that ties patch surgery to diagram algebra.
//!
//! Merge outcomes of −1 leave a Pauli byproduct behind. Which merge
//! partner absorbs the correction is a bookkeeping choice,
//! [`FrameConvention`]: dress the first-listed parent or the second.
//! Both conventions yield the same ensemble up to relabeling single
//! branches by Paulis, and [`builtin`] ships the standard teleportation-
//! style CNOT and phase-gate constructions in both flavours.

mod branches;
mod builtin;
pub mod io;
mod kraus;
mod ops;
mod procedure;
mod random;
mod zx_bridge;

use thiserror::Error;

pub use branches::{
    branch_probability, enumerate_branches, sample, sample_from, Branch, BranchEnsemble,
    MAX_OUTCOME_BITS,
};
pub use builtin::{builtin, builtin_procedures, BUILTIN_NAMES};
pub use kraus::{green_prep, measure_effect, merge_kraus, red_prep, split_kraus};
pub use ops::{Condition, FrameConvention, Label, PauliKind, SurgeryKind, SurgeryOp};
pub use procedure::Procedure;
pub use random::random_procedure;
pub use zx_bridge::{branch_to_zx, probe_diagram, probe_states, verify_model, BranchCheck, ModelReport};

/// Errors from parsing, validating, or evaluating procedures.
#[derive(Debug, Error)]
pub enum SurgeryError {
    /// The op sequence is inconsistent with the declared register.
    #[error("dataflow error: {0}")]
    Dataflow(String),
    /// No builtin procedure by this name.
    #[error("unknown procedure {0:?}")]
    UnknownProcedure(String),
    /// Malformed lsp-1 input.
    #[error("parse error: {0}")]
    Parse(String),
    /// The procedure has more outcome bits than we will enumerate.
    #[error("procedure has {0} outcome bits (limit {MAX_OUTCOME_BITS})")]
    TooManyOutcomeBits(usize),
    /// A branch index out of range for the ensemble.
    #[error("branch index {index} out of range ({count} branches)")]
    BranchIndex { index: usize, count: usize },
    /// A state argument has the wrong shape or normalization.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// A diagram produced by the bridge failed to evaluate.
    #[error(transparent)]
    Zx(#[from] zxgraph::ZxError),
    /// A phase literal could not be reduced.
    #[error(transparent)]
    Phase(#[from] zxgraph::PhaseError),
    /// File access failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
