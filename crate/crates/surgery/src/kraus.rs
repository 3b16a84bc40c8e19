//! The split isometries, merge Kraus operators, preparation kets, and
//! measurement effects, as exact dense matrices.
//!
//! Basis conventions: computational basis, first tensor factor most
//! significant. The smooth family works in the Z basis (U_S copies |0⟩/|1⟩),
//! the rough family in the X basis (U_R copies |±⟩). Negative merge Kraus
//! operators are the positive ones preceded by a Pauli on the parent the
//! convention names: X for smooth merges, Z for rough merges.

use num_complex::Complex64;
use tensorcore::ComplexMatrix;
use zxgraph::RationalPhase;

use crate::ops::{FrameConvention, SurgeryKind};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The split isometry (one qubit in, two out): U_S = |00⟩⟨0| + |11⟩⟨1| for
/// smooth, U_R = |++⟩⟨+| + |−−⟩⟨−| for rough.
pub fn split_kraus(kind: SurgeryKind) -> ComplexMatrix {
    match kind {
        SurgeryKind::Smooth => ComplexMatrix::from_real(
            4,
            2,
            &[
                1.0, 0.0, //
                0.0, 0.0, //
                0.0, 0.0, //
                0.0, 1.0,
            ],
        )
        .expect("static shape"),
        SurgeryKind::Rough => {
            let s = FRAC_1_SQRT_2;
            ComplexMatrix::from_real(
                4,
                2,
                &[
                    s, 0.0, //
                    0.0, s, //
                    0.0, s, //
                    s, 0.0,
                ],
            )
            .expect("static shape")
        }
    }
}

/// The positive-branch merge operator (two qubits in, one out):
/// K₀ = |0⟩⟨00| + |1⟩⟨11| for smooth, |+⟩⟨++| + |−⟩⟨−−| for rough.
fn merge_positive(kind: SurgeryKind) -> ComplexMatrix {
    match kind {
        SurgeryKind::Smooth => ComplexMatrix::from_real(
            2,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .expect("static shape"),
        SurgeryKind::Rough => {
            let s = FRAC_1_SQRT_2;
            ComplexMatrix::from_real(
                2,
                4,
                &[
                    s, 0.0, 0.0, s, //
                    0.0, s, s, 0.0,
                ],
            )
            .expect("static shape")
        }
    }
}

/// The merge Kraus operator for a given heralded outcome (0 ⇔ the +1
/// measurement value). Outcome 0 is convention-independent; outcome 1
/// prefixes the convention's parent with the seam's byproduct Pauli
/// (X for smooth, Z for rough).
pub fn merge_kraus(kind: SurgeryKind, conv: FrameConvention, outcome: u8) -> ComplexMatrix {
    let k0 = merge_positive(kind);
    if outcome == 0 {
        return k0;
    }
    let p = match kind {
        SurgeryKind::Smooth => ComplexMatrix::pauli_x(),
        SurgeryKind::Rough => ComplexMatrix::pauli_z(),
    };
    let dressing = match conv {
        FrameConvention::CorrectFirst => p.kron(&ComplexMatrix::identity(2)),
        FrameConvention::CorrectSecond => ComplexMatrix::identity(2).kron(&p),
    };
    k0.matmul(&dressing).expect("2x4 · 4x4")
}

/// Preparation ket (|0⟩ + e^{iα}|1⟩)/√2 as a 2×1 column.
pub fn green_prep(phase: &RationalPhase) -> ComplexMatrix {
    let w = phase.phase_factor();
    ComplexMatrix::column(&[
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        w * Complex64::new(FRAC_1_SQRT_2, 0.0),
    ])
    .expect("two entries")
}

/// Preparation ket (|+⟩ + e^{iα}|−⟩)/√2 = ½[(1+e^{iα}), (1−e^{iα})]ᵀ.
/// At α = 0 this is exactly |0⟩; at α = π exactly |1⟩.
pub fn red_prep(phase: &RationalPhase) -> ComplexMatrix {
    let w = phase.phase_factor();
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    ComplexMatrix::column(&[half * (one + w), half * (one - w)]).expect("two entries")
}

/// Measurement effect row: computational basis (⟨0|, ⟨1|) when `x_basis`
/// is false, Hadamard basis (⟨+|, ⟨−|) when true. Outcome 0 ⇔ +1 value.
pub fn measure_effect(x_basis: bool, outcome: u8) -> ComplexMatrix {
    let target = if x_basis {
        green_prep(&bit_phase(outcome))
    } else {
        red_prep(&bit_phase(outcome))
    };
    target.transpose()
}

fn bit_phase(outcome: u8) -> RationalPhase {
    if outcome == 0 {
        RationalPhase::zero()
    } else {
        RationalPhase::pi()
    }
}
