//! CNOT suite: every branch of all five lattice-surgery CNOT constructions,
//! under every correction-convention assignment, equals
//! `phase · scale · (P_control ⊗ P_target) · CNOT` with the catalogued
//! dressing — plus the positive-branch probability law of the standard
//! construction.
//!
//! The mode column records how strong the catalogued relation is (`exact`
//! when the residual phase is +1, `sign` for −1, `phase` for ±i); the check
//! itself is always entry-for-entry against the dressed matrix with its
//! residual phase included, the strictest of the three.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use tensorcore::ComplexMatrix;

use surgery::{branch_probability, builtin, enumerate_branches, probe_states, FrameConvention};

use super::distance;
use crate::report::{VerifyCase, VerifyReport};
use crate::CliError;

pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const NEG: Complex64 = Complex64::new(-1.0, 0.0);
pub(crate) const PLUS_I: Complex64 = Complex64::new(0.0, 1.0);
pub(crate) const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

pub(crate) fn pauli(c: char) -> ComplexMatrix {
    match c {
        'I' => ComplexMatrix::identity(2),
        'X' => ComplexMatrix::pauli_x(),
        'Y' => ComplexMatrix::pauli_y(),
        'Z' => ComplexMatrix::pauli_z(),
        _ => unreachable!("dressing Paulis are I, X, Y, Z"),
    }
}

/// `phase · scale · (P_control ⊗ P_target) · CNOT`, control most significant.
pub(crate) fn dressed_cnot(pc: char, pt: char, phase: Complex64, scale: f64) -> ComplexMatrix {
    pauli(pc)
        .kron(&pauli(pt))
        .matmul(&ComplexMatrix::cnot())
        .expect("4×4 by 4×4")
        .scale(phase * Complex64::new(scale, 0.0))
}

/// Mode label for a catalogued residual phase.
pub(crate) fn mode_of(phase: Complex64) -> &'static str {
    if (phase - ONE).norm() < 1e-15 {
        "exact"
    } else if (phase - NEG).norm() < 1e-15 {
        "sign"
    } else {
        "phase"
    }
}

pub(crate) fn conv_word(c: FrameConvention) -> &'static str {
    match c {
        FrameConvention::CorrectFirst => "first",
        FrameConvention::CorrectSecond => "second",
    }
}

/// One catalogued branch: outcome bits in op order, dressing, residual phase.
pub(crate) type Row = (&'static [u8], char, char, Complex64);

pub(crate) struct Table {
    pub name: &'static str,
    pub convs: &'static [FrameConvention],
    pub scale: f64,
    pub rows: &'static [Row],
}

use FrameConvention::{CorrectFirst as First, CorrectSecond as Second};

/// The full dressing catalog: 40 rows over five constructions.
pub(crate) const CATALOG: &[Table] = &[
    Table {
        name: "cnot-standard",
        convs: &[First],
        scale: FRAC_1_SQRT_2,
        rows: &[(&[0], 'I', 'I', ONE), (&[1], 'Z', 'I', ONE)],
    },
    Table {
        name: "cnot-standard",
        convs: &[Second],
        scale: FRAC_1_SQRT_2,
        rows: &[(&[0], 'I', 'I', ONE), (&[1], 'Z', 'Z', ONE)],
    },
    Table {
        name: "cnot-roughsplit",
        convs: &[First],
        scale: FRAC_1_SQRT_2,
        rows: &[(&[0], 'I', 'I', ONE), (&[1], 'X', 'X', ONE)],
    },
    Table {
        name: "cnot-roughsplit",
        convs: &[Second],
        scale: FRAC_1_SQRT_2,
        rows: &[(&[0], 'I', 'I', ONE), (&[1], 'I', 'X', ONE)],
    },
    Table {
        name: "cnot-bellpair",
        convs: &[First, First],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'I', ONE),
            (&[1, 0], 'X', 'X', ONE),
            (&[1, 1], 'Y', 'X', PLUS_I),
        ],
    },
    Table {
        name: "cnot-bellpair",
        convs: &[First, Second],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'Z', ONE),
            (&[1, 0], 'X', 'X', ONE),
            (&[1, 1], 'Y', 'Y', NEG),
        ],
    },
    Table {
        name: "cnot-bellpair",
        convs: &[Second, First],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'I', ONE),
            (&[1, 0], 'I', 'X', ONE),
            (&[1, 1], 'Z', 'X', NEG),
        ],
    },
    Table {
        name: "cnot-bellpair",
        convs: &[Second, Second],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'Z', ONE),
            (&[1, 0], 'I', 'X', ONE),
            (&[1, 1], 'Z', 'Y', MINUS_I),
        ],
    },
    Table {
        name: "cnot-splitsplit-roughcap",
        convs: &[First],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'I', 'X', ONE),
            (&[1, 0], 'Z', 'I', ONE),
            (&[1, 1], 'Z', 'X', ONE),
        ],
    },
    Table {
        name: "cnot-splitsplit-roughcap",
        convs: &[Second],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'I', 'X', ONE),
            (&[1, 0], 'Z', 'I', ONE),
            (&[1, 1], 'Z', 'X', NEG),
        ],
    },
    Table {
        name: "cnot-splitsplit-smoothcap",
        convs: &[First],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'I', ONE),
            (&[1, 0], 'I', 'X', ONE),
            (&[1, 1], 'Z', 'X', NEG),
        ],
    },
    Table {
        name: "cnot-splitsplit-smoothcap",
        convs: &[Second],
        scale: 0.5,
        rows: &[
            (&[0, 0], 'I', 'I', ONE),
            (&[0, 1], 'Z', 'I', ONE),
            (&[1, 0], 'I', 'X', ONE),
            (&[1, 1], 'Z', 'X', ONE),
        ],
    },
];

fn conv_label(convs: &[FrameConvention]) -> String {
    convs
        .iter()
        .map(|c| conv_word(*c))
        .collect::<Vec<_>>()
        .join("-")
}

fn bits_label(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

pub fn run(tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    let mut cases = Vec::new();

    for table in CATALOG {
        let mut p = builtin(table.name)?;
        p.set_conventions(table.convs);
        let e = enumerate_branches(&p)?;
        let convs = conv_label(table.convs);
        for (bits, pc, pt, phase) in table.rows {
            let got = &e.branches[e.index_of(bits)].kraus;
            let want = dressed_cnot(*pc, *pt, *phase, table.scale);
            let err = distance(got, &want);
            let phase_word = match (phase.re, phase.im) {
                (re, _) if re > 0.5 => "",
                (re, _) if re < -0.5 => "−1 · ",
                (_, im) if im > 0.5 => "i · ",
                _ => "−i · ",
            };
            cases.push(VerifyCase::new(
                format!("cnot/{}-{}-b{}", table.name, convs, bits_label(bits)),
                format!(
                    "{} [{}] branch {}: Kraus = {}{}⊗{} · CNOT / {}",
                    table.name,
                    convs,
                    bits_label(bits),
                    phase_word,
                    pc,
                    pt,
                    if table.scale > 0.6 { "√2" } else { "2" },
                ),
                mode_of(*phase),
                err,
                err <= tol,
            ));
        }
    }

    // Probability law: the positive branch of the standard construction
    // carries exactly half the weight of every normalized input.
    let e = enumerate_branches(&builtin("cnot-standard")?)?;
    for (name, psi) in probe_states(2) {
        let rho = psi.matmul(&psi.adjoint()).expect("outer product");
        let prob = branch_probability(&e, 0, &rho)?;
        let err = (prob - 0.5).abs();
        cases.push(VerifyCase::new(
            format!("cnot/probability-half-{}", ket_slug(&name)),
            format!("cnot-standard positive branch has probability exactly 1/2 on {name}"),
            "exact",
            err,
            err <= tol,
        ));
    }

    Ok(VerifyReport::new("cnot", tol, seed, cases))
}

/// File-system-safe slug for a ket name like `|0+⟩`.
pub(crate) fn ket_slug(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '|' | '⟩' => None,
            '+' => Some('p'),
            '−' | '-' => Some('m'),
            other => Some(other),
        })
        .collect()
}
