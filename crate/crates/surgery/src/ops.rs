//! The operation vocabulary of lattice-surgery procedures.

use zxgraph::RationalPhase;

/// Logical qubit label. Labels are procedure-local names; a label may be
/// reused after the qubit it named has been consumed.
pub type Label = String;

/// Which parent patch absorbs the byproduct correction when a merge heralds
/// the −1 outcome. The two choices give different (equally valid) negative
/// Kraus operators that differ by a single Pauli on the merged qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameConvention {
    /// The first-listed parent carries the correction.
    CorrectFirst,
    /// The second-listed parent carries the correction.
    CorrectSecond,
}

impl std::fmt::Display for FrameConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrameConvention::CorrectFirst => write!(f, "first"),
            FrameConvention::CorrectSecond => write!(f, "second"),
        }
    }
}

/// Smooth (Z-type seam) or rough (X-type seam) surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryKind {
    Smooth,
    Rough,
}

impl std::fmt::Display for SurgeryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurgeryKind::Smooth => write!(f, "smooth"),
            SurgeryKind::Rough => write!(f, "rough"),
        }
    }
}

/// A correction Pauli.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    X,
    Z,
}

/// When a conditional op fires: always, or when the outcome bit at a given
/// index (counting merge/measure ops from the start of the procedure) is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Always,
    Outcome(usize),
}

/// One step of a lattice-surgery procedure.
#[derive(Debug, Clone, PartialEq)]
pub enum SurgeryOp {
    /// Prepare `q` in (|0⟩ + e^{iα}|1⟩)/√2.
    PrepGreen { q: Label, phase: RationalPhase },
    /// Prepare `q` in (|+⟩ + e^{iα}|−⟩)/√2.
    PrepRed { q: Label, phase: RationalPhase },
    /// Prepare `q` in (|0⟩ + e^{iα}|1⟩)/√2 when the condition fires, in |+⟩
    /// otherwise — a classically steered ancilla supply.
    PrepGreenIf {
        q: Label,
        phase: RationalPhase,
        cond: Condition,
    },
    /// Isometry |0⟩↦|00⟩, |1⟩↦|11⟩ from `q` onto the two daughters.
    SplitSmooth { q: Label, out: [Label; 2] },
    /// Isometry |+⟩↦|++⟩, |−⟩↦|−−⟩.
    SplitRough { q: Label, out: [Label; 2] },
    /// Two-outcome instrument joining the parents along a smooth seam.
    MergeSmooth {
        parents: [Label; 2],
        out: Label,
        conv: FrameConvention,
    },
    /// Two-outcome instrument joining the parents along a rough seam.
    MergeRough {
        parents: [Label; 2],
        out: Label,
        conv: FrameConvention,
    },
    /// Destructive computational-basis measurement (effects ⟨0|, ⟨1|).
    MeasureZ { q: Label },
    /// Destructive Hadamard-basis measurement (effects ⟨+|, ⟨−|).
    MeasureX { q: Label },
    /// Apply the Pauli to `q` when the condition fires.
    PauliIf {
        q: Label,
        pauli: PauliKind,
        cond: Condition,
    },
}

impl SurgeryOp {
    /// True for the ops that herald one classical outcome bit.
    pub fn produces_outcome(&self) -> bool {
        matches!(
            self,
            SurgeryOp::MergeSmooth { .. }
                | SurgeryOp::MergeRough { .. }
                | SurgeryOp::MeasureZ { .. }
                | SurgeryOp::MeasureX { .. }
        )
    }
}
