//! The bridge from heralded branches to spider diagrams, and the
//! self-verification that the two semantics coincide.
//!
//! Translation table (exact, global scalar included):
//! smooth split → green 1-to-2 spider, rough split → red; smooth merge →
//! green 2-to-1 spider, rough merge → red, with an opposite-colour π node
//! grafted onto the convention's parent leg when that merge heralded −1;
//! green/red preps → degree-1 spiders carrying the prep phase;
//! computational/Hadamard measurements → red/green degree-1 spiders with
//! phase 0 or π per the heralded bit; fired Pauli corrections → degree-2
//! π nodes (X red, Z green).

use std::collections::HashMap;

use tensorcore::ComplexMatrix;
use zxgraph::{evaluate, two_norm_of, Color, NodeId, RationalPhase, ZXDiagram};

use crate::branches::{enumerate_branches, Branch, BranchEnsemble};
use crate::kraus::{green_prep, red_prep};
use crate::ops::{Condition, FrameConvention, PauliKind, SurgeryOp};
use crate::procedure::Procedure;
use crate::SurgeryError;

fn condition_fires(cond: Condition, outcomes: &[u8]) -> bool {
    match cond {
        Condition::Always => true,
        Condition::Outcome(i) => outcomes[i] == 1,
    }
}

/// Builds the spider diagram of one heralded branch. The diagram's inputs
/// and outputs follow the procedure's declared orders, and its tensor
/// equals the branch Kraus operator exactly — scalar included.
pub fn branch_to_zx(p: &Procedure, branch_index: usize) -> Result<ZXDiagram, SurgeryError> {
    p.validate()?;
    let m = p.outcome_bits();
    if branch_index >= 1 << m {
        return Err(SurgeryError::BranchIndex {
            index: branch_index,
            count: 1 << m,
        });
    }
    let outcomes: Vec<u8> = (0..m)
        .map(|k| ((branch_index >> (m - 1 - k)) & 1) as u8)
        .collect();

    let mut d = ZXDiagram::new();
    // The dangling wire end for each live qubit.
    let mut frontier: HashMap<String, NodeId> = HashMap::new();
    for q in &p.inputs {
        let node = d.add_input();
        frontier.insert(q.clone(), node);
    }

    let bit_phase = |b: u8| {
        if b == 0 {
            RationalPhase::zero()
        } else {
            RationalPhase::pi()
        }
    };

    let mut bit = 0usize;
    for op in &p.ops {
        match op {
            SurgeryOp::PrepGreen { q, phase } => {
                let s = d.add_spider(Color::Green, *phase);
                frontier.insert(q.clone(), s);
            }
            SurgeryOp::PrepRed { q, phase } => {
                let s = d.add_spider(Color::Red, *phase);
                frontier.insert(q.clone(), s);
            }
            SurgeryOp::PrepGreenIf { q, phase, cond } => {
                let ph = if condition_fires(*cond, &outcomes[..bit]) {
                    *phase
                } else {
                    RationalPhase::zero()
                };
                let s = d.add_spider(Color::Green, ph);
                frontier.insert(q.clone(), s);
            }
            SurgeryOp::SplitSmooth { q, out } | SurgeryOp::SplitRough { q, out } => {
                let color = if matches!(op, SurgeryOp::SplitSmooth { .. }) {
                    Color::Green
                } else {
                    Color::Red
                };
                let s = d.add_spider(color, RationalPhase::zero());
                d.add_edge(frontier[q.as_str()], s);
                frontier.insert(out[0].clone(), s);
                frontier.insert(out[1].clone(), s);
            }
            SurgeryOp::MergeSmooth { parents, out, conv }
            | SurgeryOp::MergeRough { parents, out, conv } => {
                let (color, pi_color) = if matches!(op, SurgeryOp::MergeSmooth { .. }) {
                    (Color::Green, Color::Red)
                } else {
                    (Color::Red, Color::Green)
                };
                let b = outcomes[bit];
                bit += 1;
                let s = d.add_spider(color, RationalPhase::zero());
                let corrected = match conv {
                    FrameConvention::CorrectFirst => 0,
                    FrameConvention::CorrectSecond => 1,
                };
                for (i, parent) in parents.iter().enumerate() {
                    let tip = frontier[parent.as_str()];
                    if b == 1 && i == corrected {
                        let pi = d.add_spider(pi_color, RationalPhase::pi());
                        d.add_edge(tip, pi);
                        d.add_edge(pi, s);
                    } else {
                        d.add_edge(tip, s);
                    }
                }
                frontier.insert(out.clone(), s);
            }
            SurgeryOp::MeasureZ { q } => {
                let s = d.add_spider(Color::Red, bit_phase(outcomes[bit]));
                bit += 1;
                d.add_edge(frontier[q.as_str()], s);
            }
            SurgeryOp::MeasureX { q } => {
                let s = d.add_spider(Color::Green, bit_phase(outcomes[bit]));
                bit += 1;
                d.add_edge(frontier[q.as_str()], s);
            }
            SurgeryOp::PauliIf { q, pauli, cond } => {
                if condition_fires(*cond, &outcomes[..bit]) {
                    let color = match pauli {
                        PauliKind::X => Color::Red,
                        PauliKind::Z => Color::Green,
                    };
                    let s = d.add_spider(color, RationalPhase::pi());
                    d.add_edge(frontier[q.as_str()], s);
                    frontier.insert(q.clone(), s);
                }
            }
        }
    }

    for q in &p.outputs {
        let out = d.add_output();
        d.add_edge(frontier[q.as_str()], out);
    }
    d.validated()?;
    Ok(d)
}

/// The probe kets used by [`verify_model`]: named product states whose
/// squared branch norms must reproduce the branch probabilities.
pub fn probe_states(n_qubits: usize) -> Vec<(String, ComplexMatrix)> {
    let zero = red_prep(&RationalPhase::zero());
    let one = red_prep(&RationalPhase::pi());
    let plus = green_prep(&RationalPhase::zero());
    let minus = green_prep(&RationalPhase::pi());
    match n_qubits {
        1 => vec![
            ("|0⟩".to_string(), zero),
            ("|1⟩".to_string(), one),
            ("|+⟩".to_string(), plus),
            ("|−⟩".to_string(), minus),
        ],
        2 => vec![
            ("|00⟩".to_string(), zero.kron(&zero)),
            ("|01⟩".to_string(), zero.kron(&one)),
            ("|++⟩".to_string(), plus.kron(&plus)),
            ("|+−⟩".to_string(), plus.kron(&minus)),
            ("|0+⟩".to_string(), zero.kron(&plus)),
        ],
        n => {
            // Generic fallback: the computational basis.
            (0..1usize << n)
                .map(|b| {
                    let mut col = ComplexMatrix::zeros(1 << n, 1);
                    col.set(b, 0, num_complex::Complex64::new(1.0, 0.0));
                    (format!("|{b:0n$b}⟩"), col)
                })
                .collect()
        }
    }
}

/// A probe ket as a diagram: one degree-1 spider per qubit, red for
/// computational-basis factors, green for Hadamard-basis ones.
pub fn probe_diagram(names: &str) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    for ch in names.chars() {
        let (color, phase) = match ch {
            '0' => (Color::Red, RationalPhase::zero()),
            '1' => (Color::Red, RationalPhase::pi()),
            '+' => (Color::Green, RationalPhase::zero()),
            '−' => (Color::Green, RationalPhase::pi()),
            _ => continue, // the |⟩ decoration
        };
        let s = d.add_spider(color, phase);
        let o = d.add_output();
        d.add_edge(s, o);
    }
    d
}

/// Verification result for one branch.
#[derive(Debug, Clone)]
pub struct BranchCheck {
    pub branch: usize,
    pub outcomes: Vec<u8>,
    /// Largest |entry| difference between the diagram tensor and the Kraus
    /// operator.
    pub diagram_error: f64,
    /// Per-probe |squared diagram 2-norm − branch probability|.
    pub probe_errors: Vec<(String, f64)>,
    pub pass: bool,
}

/// Verification result for a whole procedure.
#[derive(Debug, Clone)]
pub struct ModelReport {
    pub branches: Vec<BranchCheck>,
    pub all_pass: bool,
}

/// Checks, branch by branch, that the spider-diagram semantics reproduces
/// the composed Kraus semantics: tensors agree entrywise (scalar included)
/// within `tol`, and for every probe state the squared 2-norm of the
/// diagram with the probe appended equals the branch probability.
pub fn verify_model(p: &Procedure, tol: f64) -> Result<ModelReport, SurgeryError> {
    let ensemble = enumerate_branches(p)?;
    let mut checks = Vec::new();
    let probes = probe_states(p.inputs.len());
    for (i, branch) in ensemble.branches.iter().enumerate() {
        checks.push(check_branch(p, &ensemble, i, branch, &probes, tol)?);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(ModelReport {
        branches: checks,
        all_pass,
    })
}

fn check_branch(
    p: &Procedure,
    ensemble: &BranchEnsemble,
    index: usize,
    branch: &Branch,
    probes: &[(String, ComplexMatrix)],
    tol: f64,
) -> Result<BranchCheck, SurgeryError> {
    let diagram = branch_to_zx(p, index)?;
    let tensor = evaluate(&diagram)?;
    let diagram_error = if tensor.rows() == branch.kraus.rows() && tensor.cols() == branch.kraus.cols()
    {
        tensor.sub(&branch.kraus).expect("same shape").max_abs()
    } else {
        f64::INFINITY
    };

    let mut probe_errors = Vec::new();
    for (name, ket) in probes {
        let rho = ket.matmul(&ket.adjoint()).expect("outer product");
        let prob = crate::branches::branch_probability(ensemble, index, &rho)?;
        let with_probe = zxgraph::compose_sequential(&probe_diagram(name), &diagram)?;
        let norm_sq = two_norm_of(&with_probe)?.powi(2);
        probe_errors.push((name.clone(), (norm_sq - prob).abs()));
    }

    let pass = diagram_error <= tol && probe_errors.iter().all(|(_, e)| *e <= tol);
    Ok(BranchCheck {
        branch: index,
        outcomes: branch.outcomes.clone(),
        diagram_error,
        probe_errors,
        pass,
    })
}
