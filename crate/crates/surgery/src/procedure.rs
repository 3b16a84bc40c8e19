//! Procedures and their dataflow validation.

use std::collections::BTreeSet;

use crate::ops::{Condition, Label, SurgeryOp};
use crate::SurgeryError;

/// An ordered lattice-surgery program: declared input qubits, a list of
/// ops, and the declared output qubits.
///
/// Qubit ordering is positional: the first-declared input (and output)
/// label is the most significant index of the corresponding operator, so a
/// two-qubit procedure's Kraus matrices use the usual convention in which
/// basis state |q₀q₁⟩ has q₀ as the high bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Procedure {
    pub inputs: Vec<Label>,
    pub ops: Vec<SurgeryOp>,
    pub outputs: Vec<Label>,
}

impl Procedure {
    /// Number of heralded outcome bits (one per merge or measure, in op
    /// order).
    pub fn outcome_bits(&self) -> usize {
        self.ops.iter().filter(|o| o.produces_outcome()).count()
    }

    /// Number of merges, in op order (the ops a convention sweep targets).
    pub fn merge_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| {
                matches!(
                    o,
                    SurgeryOp::MergeSmooth { .. } | SurgeryOp::MergeRough { .. }
                )
            })
            .count()
    }

    /// Reassigns the conventions of the merges, in op order. Panics if
    /// `convs` is shorter than the number of merges.
    pub fn set_conventions(&mut self, convs: &[crate::FrameConvention]) {
        let mut it = convs.iter();
        for op in &mut self.ops {
            match op {
                SurgeryOp::MergeSmooth { conv, .. } | SurgeryOp::MergeRough { conv, .. } => {
                    *conv = *it.next().expect("one convention per merge");
                }
                _ => {}
            }
        }
    }

    /// Checks dataflow validity: every qubit is live when used, preps are
    /// fresh, merges/measures consume, conditions reference earlier outcome
    /// bits, and the declared outputs are exactly the qubits live at the
    /// end.
    pub fn validate(&self) -> Result<(), SurgeryError> {
        let mut live: BTreeSet<&str> = BTreeSet::new();
        for q in &self.inputs {
            if !live.insert(q) {
                return Err(SurgeryError::Dataflow(format!(
                    "duplicate input label {q:?}"
                )));
            }
        }
        let mut bits = 0usize;
        let use_live = |live: &BTreeSet<&str>, q: &str, what: &str| {
            if live.contains(q) {
                Ok(())
            } else {
                Err(SurgeryError::Dataflow(format!(
                    "{what} uses qubit {q:?} which is not live"
                )))
            }
        };
        let check_cond = |cond: Condition, bits: usize, what: &str| match cond {
            Condition::Always => Ok(()),
            Condition::Outcome(i) if i < bits => Ok(()),
            Condition::Outcome(i) => Err(SurgeryError::Dataflow(format!(
                "{what} condition references outcome {i}, but only {bits} outcome bits precede it"
            ))),
        };
        for (k, op) in self.ops.iter().enumerate() {
            let at = format!("op {k}");
            match op {
                SurgeryOp::PrepGreen { q, .. } | SurgeryOp::PrepRed { q, .. } => {
                    if !live.insert(q) {
                        return Err(SurgeryError::Dataflow(format!(
                            "{at}: prep target {q:?} is already live"
                        )));
                    }
                }
                SurgeryOp::PrepGreenIf { q, cond, .. } => {
                    check_cond(*cond, bits, &at)?;
                    if !live.insert(q) {
                        return Err(SurgeryError::Dataflow(format!(
                            "{at}: prep target {q:?} is already live"
                        )));
                    }
                }
                SurgeryOp::SplitSmooth { q, out } | SurgeryOp::SplitRough { q, out } => {
                    use_live(&live, q, &at)?;
                    live.remove(q.as_str());
                    if out[0] == out[1] {
                        return Err(SurgeryError::Dataflow(format!(
                            "{at}: split daughters must be distinct, both are {:?}",
                            out[0]
                        )));
                    }
                    for d in out {
                        if !live.insert(d) {
                            return Err(SurgeryError::Dataflow(format!(
                                "{at}: split daughter {d:?} is already live"
                            )));
                        }
                    }
                }
                SurgeryOp::MergeSmooth { parents, out, .. }
                | SurgeryOp::MergeRough { parents, out, .. } => {
                    if parents[0] == parents[1] {
                        return Err(SurgeryError::Dataflow(format!(
                            "{at}: merge parents must be distinct, both are {:?}",
                            parents[0]
                        )));
                    }
                    for p in parents {
                        use_live(&live, p, &at)?;
                    }
                    for p in parents {
                        live.remove(p.as_str());
                    }
                    if !live.insert(out) {
                        return Err(SurgeryError::Dataflow(format!(
                            "{at}: merge output {out:?} is already live"
                        )));
                    }
                    bits += 1;
                }
                SurgeryOp::MeasureZ { q } | SurgeryOp::MeasureX { q } => {
                    use_live(&live, q, &at)?;
                    live.remove(q.as_str());
                    bits += 1;
                }
                SurgeryOp::PauliIf { q, cond, .. } => {
                    use_live(&live, q, &at)?;
                    check_cond(*cond, bits, &at)?;
                }
            }
        }
        let declared: BTreeSet<&str> = self.outputs.iter().map(|s| s.as_str()).collect();
        if declared.len() != self.outputs.len() {
            return Err(SurgeryError::Dataflow(
                "duplicate output label".to_string(),
            ));
        }
        if declared != live {
            return Err(SurgeryError::Dataflow(format!(
                "declared outputs {:?} differ from the qubits live at the end {:?}",
                self.outputs,
                live.iter().collect::<Vec<_>>()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{FrameConvention, PauliKind};
    use zxgraph::RationalPhase;

    fn l(s: &str) -> Label {
        s.to_string()
    }

    #[test]
    fn valid_merge_chain() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::PrepGreen {
                    q: l("a"),
                    phase: RationalPhase::new(1, 4).unwrap(),
                },
                SurgeryOp::MergeSmooth {
                    parents: [l("a"), l("q")],
                    out: l("q1"),
                    conv: FrameConvention::CorrectFirst,
                },
                SurgeryOp::PauliIf {
                    q: l("q1"),
                    pauli: PauliKind::X,
                    cond: Condition::Outcome(0),
                },
            ],
            outputs: vec![l("q1")],
        };
        p.validate().unwrap();
        assert_eq!(p.outcome_bits(), 1);
        assert_eq!(p.merge_count(), 1);
    }

    #[test]
    fn use_before_live_is_rejected() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![SurgeryOp::MeasureZ { q: l("ghost") }],
            outputs: vec![l("q")],
        };
        assert!(matches!(p.validate(), Err(SurgeryError::Dataflow(_))));
    }

    #[test]
    fn double_consumption_is_rejected() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::MeasureZ { q: l("q") },
                SurgeryOp::MeasureZ { q: l("q") },
            ],
            outputs: vec![],
        };
        assert!(matches!(p.validate(), Err(SurgeryError::Dataflow(_))));
    }

    #[test]
    fn outputs_must_match_live_set() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![],
            outputs: vec![l("q"), l("extra")],
        };
        assert!(matches!(p.validate(), Err(SurgeryError::Dataflow(_))));
    }

    #[test]
    fn condition_must_reference_earlier_bit() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![SurgeryOp::PauliIf {
                q: l("q"),
                pauli: PauliKind::Z,
                cond: Condition::Outcome(0),
            }],
            outputs: vec![l("q")],
        };
        assert!(matches!(p.validate(), Err(SurgeryError::Dataflow(_))));
    }

    #[test]
    fn label_reuse_after_consumption_is_allowed() {
        let p = Procedure {
            inputs: vec![l("q")],
            ops: vec![
                SurgeryOp::MeasureZ { q: l("q") },
                SurgeryOp::PrepGreen {
                    q: l("q"),
                    phase: RationalPhase::zero(),
                },
            ],
            outputs: vec![l("q")],
        };
        p.validate().unwrap();
    }
}
