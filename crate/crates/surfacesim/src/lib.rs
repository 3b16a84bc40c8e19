//! Physical-layer simulation of lattice surgery on planar surface-code
//! patches.
//!
//! The crate realizes the logical split and merge operations as actual
//! stabilizer-circuit protocols on a qubit lattice and checks them against
//! their two-by-two Kraus models:
//!
//! * [`geometry`] — rectangular planar patches: data-qubit sites,
//!   Z-face/X-vertex stabilizers, and logical operator representatives;
//! * [`tableau`] — a stabilizer tableau with destabilizers, forced-outcome
//!   measurement, and read-only Pauli expectations;
//! * [`frame`] — Pauli frames holding deferred corrections;
//! * [`workspace`] — patches on a shared lattice plus the four physical
//!   operations (rough/smooth split and merge) with their frame fix-ups;
//! * [`channel`] — extraction of the logical channel an operation enacts,
//!   compared case-by-case against the Kraus model, with corruption knobs
//!   for negative controls;
//! * [`dense`] — an independent dense state-vector cross-check for small
//!   systems, including full merge branch enumeration;
//! * [`config`] — JSON experiment configurations and JSON-lines reports.
//!
//! Seam measurement outcomes use the same convention as the logical layer:
//! bit `0` means the `+1` eigenvalue. All randomness flows from explicit
//! seeds, and forced outcomes are honoured exactly where the physics leaves
//! the outcome random.

pub mod channel;
pub mod config;
pub mod dense;
pub mod frame;
pub mod geometry;
pub mod tableau;
pub mod workspace;

use thiserror::Error;

/// Errors from lattice construction, simulation, or configuration parsing.
#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("no patch is registered under label {0:?}")]
    UnknownPatch(String),

    #[error("no qubit is allocated at site ({0}, {1})")]
    UnknownSite(i32, i32),

    #[error("workspace needs {0} qubits, which exceeds the 64-qubit tableau")]
    Capacity(usize),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dense simulation limited to 12 qubits, got {0}")]
    DenseCapacity(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub use channel::{
    extract_logical_channel, extract_logical_channel_with, mixed_fixup, ChannelCase,
    ChannelOptions, ChannelReport, OpKind, PauliCheck,
};
pub use config::{run_experiment, ExperimentConfig, ReportLine};
pub use dense::{
    dense_decode, dense_encode, dense_logical_expectation, dense_merge_check,
    DenseMergeBranch, DenseMergeReport, MAX_DENSE_QUBITS,
};
pub use frame::PauliFrame;
pub use geometry::{PlanarPatch, Plaquette, PlaquetteKind, Site};
pub use tableau::{MeasureResult, PauliString, StabilizerTableau, MAX_QUBITS};
pub use workspace::{
    ChainBoundary, FrameConvention, LatticeWorkspace, LogicalState, MergeRecord, OutcomeRecord,
    PauliBasis, SplitFixup, SplitRecord,
};
