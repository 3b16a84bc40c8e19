//! Dense complex linear algebra for small operators.
//!
//! Everything in this workspace that claims two processes are equal is
//! ultimately checked against the dense matrices produced here: diagram
//! evaluation, branch enumeration, and the physical-level channel
//! reconstructions all bottom out in [`ComplexMatrix`] comparisons.
//!
//! The matrices involved are tiny (a 16×16 is already a big one for the
//! logical layer; the dense physical oracle peaks at 2^11 amplitudes, which
//! lives in a plain `Vec` elsewhere), so the representation is a row-major
//! `Vec<Complex64>` with no blocking or sparsity — simplicity and exactness
//! over throughput.
//!
//! Comparison semantics are spelled out on the methods; the short version:
//!
//! * [`ComplexMatrix::approx_equal`] — entrywise, absolute tolerance;
//! * [`ComplexMatrix::equal_up_to_global_phase`] — ∃ unit λ with A = λB,
//!   where λ is fixed from the largest-magnitude entry of B (an all-zero
//!   matrix is phase-equal only to another all-zero matrix);
//! * [`ComplexMatrix::equal_up_to_sign`] — the λ ∈ {+1, −1} restriction.

mod matrix;

pub use matrix::{ComplexMatrix, MatrixError};

/// Default absolute tolerance used by the comparison helpers when callers
/// have no reason to pick their own.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Re-export of the scalar type so downstream crates agree on one `Complex64`.
pub use num_complex::Complex64;
