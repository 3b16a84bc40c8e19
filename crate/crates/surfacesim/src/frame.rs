//! Pauli frames: corrections tracked in software instead of applied.
//!
//! A frame is a Pauli operator the experiment has promised to apply but
//! never does. Every readout is reinterpreted through it: the observed
//! sign of a Pauli `P` flips exactly when `P` anticommutes with the frame.
//! Phases of the frame operator are irrelevant to that test, so only the
//! `X` and `Z` support masks are stored.

use crate::tableau::PauliString;

/// A deferred Pauli correction on up to 64 qubits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PauliFrame {
    x: u64,
    z: u64,
}

impl PauliFrame {
    /// The empty frame (no pending correction).
    pub fn new() -> Self {
        Self::default()
    }

    /// True when no correction is pending.
    pub fn is_empty(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Composes a further correction into the frame.
    pub fn record(&mut self, p: &PauliString) {
        self.x ^= p.x;
        self.z ^= p.z;
    }

    /// Whether the frame flips the observed sign of `p`.
    pub fn flips(&self, p: &PauliString) -> bool {
        let overlap = (self.x & p.z).count_ones() + (self.z & p.x).count_ones();
        overlap % 2 == 1
    }

    /// Frame-adjusted outcome bit for a measurement of `p`.
    pub fn adjust_bit(&self, bit: u8, p: &PauliString) -> u8 {
        bit ^ u8::from(self.flips(p))
    }

    /// Frame-adjusted deterministic expectation (`None` stays random).
    pub fn adjust_expectation(&self, e: Option<i8>, p: &PauliString) -> Option<i8> {
        e.map(|v| if self.flips(p) { -v } else { v })
    }

    /// The frame as a Pauli string (phase fixed to `+1`).
    pub fn as_pauli(&self) -> PauliString {
        PauliString {
            x: self.x,
            z: self.z,
            r: 0,
        }
    }
}
