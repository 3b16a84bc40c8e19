//! The built-in procedure catalog: five CNOT realizations, the two
//! magic-state merges, and the fully corrected deterministic-T composite.

use zxgraph::RationalPhase;

use crate::ops::{Condition, FrameConvention, Label, PauliKind, SurgeryOp};
use crate::procedure::Procedure;
use crate::SurgeryError;

fn l(s: &str) -> Label {
    s.to_string()
}

fn phase(num: i64, den: i64) -> RationalPhase {
    RationalPhase::new(num, den).expect("static phase")
}

/// Names of all built-in procedures, in catalog order.
pub const BUILTIN_NAMES: [&str; 8] = [
    "cnot-standard",
    "cnot-roughsplit",
    "cnot-bellpair",
    "cnot-splitsplit-roughcap",
    "cnot-splitsplit-smoothcap",
    "t-merge",
    "y-merge",
    "t-deterministic",
];

/// Returns the full named catalog. Every entry validates; all merges
/// default to [`FrameConvention::CorrectFirst`] (sweep with
/// [`Procedure::set_conventions`]).
pub fn builtin_procedures() -> Vec<(&'static str, Procedure)> {
    BUILTIN_NAMES
        .iter()
        .map(|&n| (n, builtin(n).expect("catalog names are valid")))
        .collect()
}

/// Looks up one built-in procedure by name.
pub fn builtin(name: &str) -> Result<Procedure, SurgeryError> {
    let first = FrameConvention::CorrectFirst;
    let p = match name {
        // Smooth split of the control, rough merge of the spare daughter
        // with the target. Positive branch = (1/√2)·CNOT.
        "cnot-standard" => Procedure {
            inputs: vec![l("c"), l("t")],
            ops: vec![
                SurgeryOp::SplitSmooth {
                    q: l("c"),
                    out: [l("c1"), l("c2")],
                },
                SurgeryOp::MergeRough {
                    parents: [l("c2"), l("t")],
                    out: l("t2"),
                    conv: first,
                },
            ],
            outputs: vec![l("c1"), l("t2")],
        },
        // The mirror image: rough split of the target, smooth merge of the
        // first daughter with the control.
        "cnot-roughsplit" => Procedure {
            inputs: vec![l("c"), l("t")],
            ops: vec![
                SurgeryOp::SplitRough {
                    q: l("t"),
                    out: [l("t1"), l("t2")],
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("c"), l("t1")],
                    out: l("c2"),
                    conv: first,
                },
            ],
            outputs: vec![l("c2"), l("t2")],
        },
        // Bell pair |00⟩+|11⟩ made by splitting a fresh |+⟩; one half
        // smooth-merges with the control, the other rough-merges with the
        // target. Two heralded bits → four branches.
        "cnot-bellpair" => Procedure {
            inputs: vec![l("c"), l("t")],
            ops: vec![
                SurgeryOp::PrepGreen {
                    q: l("a"),
                    phase: phase(0, 1),
                },
                SurgeryOp::SplitSmooth {
                    q: l("a"),
                    out: [l("a1"), l("a2")],
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("c"), l("a1")],
                    out: l("c2"),
                    conv: first,
                },
                SurgeryOp::MergeRough {
                    parents: [l("a2"), l("t")],
                    out: l("t2"),
                    conv: first,
                },
            ],
            outputs: vec![l("c2"), l("t2")],
        },
        // Split both qubits, then simulate a Bell projection ⟨00|+⟨11| on
        // one daughter of each: rough merge then computational measurement.
        "cnot-splitsplit-roughcap" => Procedure {
            inputs: vec![l("c"), l("t")],
            ops: vec![
                SurgeryOp::SplitSmooth {
                    q: l("c"),
                    out: [l("c1"), l("c2")],
                },
                SurgeryOp::SplitRough {
                    q: l("t"),
                    out: [l("t1"), l("t2")],
                },
                SurgeryOp::MergeRough {
                    parents: [l("c2"), l("t1")],
                    out: l("j"),
                    conv: first,
                },
                SurgeryOp::MeasureZ { q: l("j") },
            ],
            outputs: vec![l("c1"), l("t2")],
        },
        // Same shape with the dual cap: smooth merge then Hadamard-basis
        // measurement, realizing ⟨++|+⟨−−| (the same Bell effect).
        "cnot-splitsplit-smoothcap" => Procedure {
            inputs: vec![l("c"), l("t")],
            ops: vec![
                SurgeryOp::SplitSmooth {
                    q: l("c"),
                    out: [l("c1"), l("c2")],
                },
                SurgeryOp::SplitRough {
                    q: l("t"),
                    out: [l("t1"), l("t2")],
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("c2"), l("t1")],
                    out: l("j"),
                    conv: first,
                },
                SurgeryOp::MeasureX { q: l("j") },
            ],
            outputs: vec![l("c1"), l("t2")],
        },
        // Merge a π/4 magic ancilla into the data qubit: branches
        // ∝ Rz(±π/4), each with probability 1/2.
        "t-merge" => Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::PrepGreen {
                    q: l("a"),
                    phase: phase(1, 4),
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("a"), l("q")],
                    out: l("q1"),
                    conv: first,
                },
            ],
            outputs: vec![l("q1")],
        },
        // The π/2 corrector merge used after a negative T branch:
        // branches ∝ Rz(±π/2).
        "y-merge" => Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::PrepGreen {
                    q: l("a"),
                    phase: phase(1, 2),
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("a"), l("q")],
                    out: l("q1"),
                    conv: first,
                },
            ],
            outputs: vec![l("q1")],
        },
        // T merge, then a π/2 corrector merge steered by the first
        // outcome (idle |+⟩ ancilla when no correction is due), then a
        // final X steered by the second outcome. Three of four branches
        // land on T up to phase and the heralded X; the doubly-negative
        // branch retains an extra Z (see the catalog tests).
        "t-deterministic" => Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::PrepGreen {
                    q: l("a"),
                    phase: phase(1, 4),
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("a"), l("q")],
                    out: l("q1"),
                    conv: first,
                },
                SurgeryOp::PrepGreenIf {
                    q: l("b"),
                    phase: phase(1, 2),
                    cond: Condition::Outcome(0),
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("b"), l("q1")],
                    out: l("q2"),
                    conv: first,
                },
                SurgeryOp::PauliIf {
                    q: l("q2"),
                    pauli: PauliKind::X,
                    cond: Condition::Outcome(1),
                },
            ],
            outputs: vec![l("q2")],
        },
        other => return Err(SurgeryError::UnknownProcedure(other.to_string())),
    };
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_exactly_the_eight() {
        let all = builtin_procedures();
        assert_eq!(all.len(), 8);
        let names: Vec<&str> = all.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, BUILTIN_NAMES);
    }

    #[test]
    fn every_builtin_validates() {
        for (name, p) in builtin_procedures() {
            p.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn bellpair_has_four_branches() {
        let p = builtin("cnot-bellpair").unwrap();
        assert_eq!(p.outcome_bits(), 2);
        assert_eq!(p.merge_count(), 2);
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(
            builtin("cnot-quantum-leap"),
            Err(SurgeryError::UnknownProcedure(_))
        ));
    }
}
