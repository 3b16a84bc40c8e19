//! Branch enumeration: composing a procedure's per-op operators for every
//! outcome vector, plus probabilities and seeded sampling.
//!
//! The running object is the operator from the procedure's input space to
//! the current register, kept as a dense matrix of shape
//! 2^(register size) × 2^(inputs). The register is an ordered list of live
//! labels with position 0 the most significant bit. Each op's matrix is
//! embedded by routing its operands (in the op's declared order) to the
//! least significant positions; the op's results then occupy those
//! positions, with the untouched qubits keeping their relative order.
//! At the end the register is permuted into the declared output order.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensorcore::ComplexMatrix;

use crate::kraus::{green_prep, measure_effect, merge_kraus, red_prep, split_kraus};
use crate::ops::{Condition, Label, PauliKind, SurgeryKind, SurgeryOp};
use crate::procedure::Procedure;
use crate::SurgeryError;

/// Hard cap on heralded outcome bits per procedure (branch count 2^m).
pub const MAX_OUTCOME_BITS: usize = 20;

/// One heralded branch: its outcome bits (op order; 0 ⇔ measurement value
/// +1) and the composed Kraus operator from inputs to outputs.
#[derive(Debug, Clone)]
pub struct Branch {
    pub outcomes: Vec<u8>,
    pub kraus: ComplexMatrix,
}

/// All 2^m branches of a procedure, indexed so that the FIRST outcome op
/// is the most significant bit of the branch index.
#[derive(Debug, Clone)]
pub struct BranchEnsemble {
    pub input_qubits: usize,
    pub output_qubits: usize,
    pub branches: Vec<Branch>,
}

impl BranchEnsemble {
    /// Index of the branch with the given outcome bits.
    pub fn index_of(&self, outcomes: &[u8]) -> usize {
        outcomes.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }
}

struct Register {
    labels: Vec<Label>,
    /// 2^labels.len() × 2^n_inputs operator from the input space.
    state: ComplexMatrix,
}

impl Register {
    fn new(inputs: &[Label]) -> Self {
        Register {
            labels: inputs.to_vec(),
            state: ComplexMatrix::identity(1 << inputs.len()),
        }
    }

    fn position(&self, q: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == q)
            .expect("validated procedures only use live labels")
    }

    /// Appends a fresh qubit in state `ket` at the least significant
    /// position.
    fn prep(&mut self, q: &Label, ket: &ComplexMatrix) {
        self.state = self.state.kron(ket);
        self.labels.push(q.clone());
    }

    /// Applies `op` (2^k_out × 2^k_in) to the named operands, in order:
    /// operands[0] is the op's most significant input, results[0] the most
    /// significant output. Untouched qubits keep their relative order ahead
    /// of the results.
    fn apply(&mut self, op: &ComplexMatrix, operands: &[&str], results: &[Label]) {
        let r = self.labels.len();
        let k_in = operands.len();
        let k_out = results.len();
        debug_assert_eq!(op.cols(), 1 << k_in);
        debug_assert_eq!(op.rows(), 1 << k_out);
        let pos: Vec<usize> = operands.iter().map(|q| self.position(q)).collect();
        let others: Vec<usize> = (0..r).filter(|i| !pos.contains(i)).collect();
        let r_new = r - k_in + k_out;

        // full[y, x] = op[y_ops, x_ops] when the untouched bits agree.
        let mut full = ComplexMatrix::zeros(1 << r_new, 1 << r);
        for x in 0..1usize << r {
            let bit_of = |i: usize| (x >> (r - 1 - i)) & 1;
            let x_ops = pos
                .iter()
                .fold(0usize, |acc, &i| (acc << 1) | bit_of(i));
            let x_others = others
                .iter()
                .fold(0usize, |acc, &i| (acc << 1) | bit_of(i));
            for y_ops in 0..1usize << k_out {
                let v = op.get(y_ops, x_ops);
                if v != Complex64::new(0.0, 0.0) {
                    let y = (x_others << k_out) | y_ops;
                    full.set(y, x, v);
                }
            }
        }
        self.state = full.matmul(&self.state).expect("embedded op shape");
        let mut new_labels: Vec<Label> = others
            .iter()
            .map(|&i| self.labels[i].clone())
            .collect();
        new_labels.extend(results.iter().cloned());
        self.labels = new_labels;
    }

    /// Permutes the register into the declared output order and returns the
    /// final operator.
    fn finish(mut self, outputs: &[Label]) -> ComplexMatrix {
        debug_assert_eq!(self.labels.len(), outputs.len());
        let r = self.labels.len();
        let perm: Vec<usize> = outputs.iter().map(|q| self.position(q)).collect();
        if perm.iter().enumerate().all(|(j, &i)| j == i) {
            return self.state;
        }
        let mut p = ComplexMatrix::zeros(1 << r, 1 << r);
        for x in 0..1usize << r {
            let bit_of = |i: usize| (x >> (r - 1 - i)) & 1;
            let y = perm.iter().fold(0usize, |acc, &i| (acc << 1) | bit_of(i));
            p.set(y, x, Complex64::new(1.0, 0.0));
        }
        self.state = p.matmul(&self.state).expect("permutation shape");
        self.state
    }
}

fn condition_fires(cond: Condition, outcomes: &[u8]) -> bool {
    match cond {
        Condition::Always => true,
        Condition::Outcome(i) => outcomes[i] == 1,
    }
}

/// Composes the branch operator for one fixed outcome vector.
fn run_branch(p: &Procedure, outcomes: &[u8]) -> ComplexMatrix {
    let mut reg = Register::new(&p.inputs);
    let mut bit = 0usize;
    for op in &p.ops {
        match op {
            SurgeryOp::PrepGreen { q, phase } => reg.prep(q, &green_prep(phase)),
            SurgeryOp::PrepRed { q, phase } => reg.prep(q, &red_prep(phase)),
            SurgeryOp::PrepGreenIf { q, phase, cond } => {
                let ph = if condition_fires(*cond, &outcomes[..bit]) {
                    *phase
                } else {
                    zxgraph::RationalPhase::zero()
                };
                reg.prep(q, &green_prep(&ph));
            }
            SurgeryOp::SplitSmooth { q, out } => {
                reg.apply(&split_kraus(SurgeryKind::Smooth), &[q], out.as_slice())
            }
            SurgeryOp::SplitRough { q, out } => {
                reg.apply(&split_kraus(SurgeryKind::Rough), &[q], out.as_slice())
            }
            SurgeryOp::MergeSmooth { parents, out, conv } => {
                let k = merge_kraus(SurgeryKind::Smooth, *conv, outcomes[bit]);
                bit += 1;
                reg.apply(&k, &[&parents[0], &parents[1]], std::slice::from_ref(out));
            }
            SurgeryOp::MergeRough { parents, out, conv } => {
                let k = merge_kraus(SurgeryKind::Rough, *conv, outcomes[bit]);
                bit += 1;
                reg.apply(&k, &[&parents[0], &parents[1]], std::slice::from_ref(out));
            }
            SurgeryOp::MeasureZ { q } => {
                let e = measure_effect(false, outcomes[bit]);
                bit += 1;
                reg.apply(&e, &[q], &[]);
            }
            SurgeryOp::MeasureX { q } => {
                let e = measure_effect(true, outcomes[bit]);
                bit += 1;
                reg.apply(&e, &[q], &[]);
            }
            SurgeryOp::PauliIf { q, pauli, cond } => {
                if condition_fires(*cond, &outcomes[..bit]) {
                    let m = match pauli {
                        PauliKind::X => ComplexMatrix::pauli_x(),
                        PauliKind::Z => ComplexMatrix::pauli_z(),
                    };
                    reg.apply(&m, &[q], std::slice::from_ref(q));
                }
            }
        }
    }
    reg.finish(&p.outputs)
}

/// Enumerates all 2^m heralded branches of a validated procedure.
pub fn enumerate_branches(p: &Procedure) -> Result<BranchEnsemble, SurgeryError> {
    p.validate()?;
    let m = p.outcome_bits();
    if m > MAX_OUTCOME_BITS {
        return Err(SurgeryError::TooManyOutcomeBits(m));
    }
    let mut branches = Vec::with_capacity(1 << m);
    for idx in 0..1usize << m {
        let outcomes: Vec<u8> = (0..m).map(|k| ((idx >> (m - 1 - k)) & 1) as u8).collect();
        let kraus = run_branch(p, &outcomes);
        branches.push(Branch { outcomes, kraus });
    }
    Ok(BranchEnsemble {
        input_qubits: p.inputs.len(),
        output_qubits: p.outputs.len(),
        branches,
    })
}

/// Probability Tr(K ρ K†) of branch `index` on the density matrix `rho`.
pub fn branch_probability(
    e: &BranchEnsemble,
    index: usize,
    rho: &ComplexMatrix,
) -> Result<f64, SurgeryError> {
    let branch = e
        .branches
        .get(index)
        .ok_or(SurgeryError::BranchIndex {
            index,
            count: e.branches.len(),
        })?;
    let dim = 1usize << e.input_qubits;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(SurgeryError::InvalidState(format!(
            "density matrix is {}×{}, expected {dim}×{dim}",
            rho.rows(),
            rho.cols()
        )));
    }
    let trace: Complex64 = (0..dim).map(|i| rho.get(i, i)).sum();
    if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-6 {
        return Err(SurgeryError::InvalidState(format!(
            "density matrix trace {trace} is not 1"
        )));
    }
    let k_rho_kd = branch
        .kraus
        .matmul(rho)
        .and_then(|m| m.matmul(&branch.kraus.adjoint()))
        .expect("shape-checked");
    let p: Complex64 = (0..k_rho_kd.rows()).map(|i| k_rho_kd.get(i, i)).sum();
    Ok(p.re)
}

/// Draws one heralded outcome for the pure input `psi` (a normalized
/// 2^n × 1 column) and returns the outcome bits with the normalized
/// post-branch state. Deterministic per seed; a zero-probability branch is
/// never returned.
pub fn sample(
    p: &Procedure,
    psi: &ComplexMatrix,
    seed: u64,
) -> Result<(Vec<u8>, ComplexMatrix), SurgeryError> {
    let ensemble = enumerate_branches(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_from(&ensemble, psi, &mut rng)
}

/// As [`sample`], but drawing from a caller-owned generator — the shape a
/// repeated-trials loop wants, with one enumeration shared across draws.
pub fn sample_from(
    ensemble: &BranchEnsemble,
    psi: &ComplexMatrix,
    rng: &mut impl Rng,
) -> Result<(Vec<u8>, ComplexMatrix), SurgeryError> {
    let dim = 1usize << ensemble.input_qubits;
    if psi.rows() != dim || psi.cols() != 1 {
        return Err(SurgeryError::InvalidState(format!(
            "state is {}×{}, expected {dim}×1",
            psi.rows(),
            psi.cols()
        )));
    }
    if (psi.two_norm() - 1.0).abs() > 1e-6 {
        return Err(SurgeryError::InvalidState(format!(
            "state norm {} is not 1",
            psi.two_norm()
        )));
    }
    let post: Vec<ComplexMatrix> = ensemble
        .branches
        .iter()
        .map(|b| b.kraus.matmul(psi).expect("shape-checked"))
        .collect();
    let probs: Vec<f64> = post.iter().map(|v| v.two_norm().powi(2)).collect();
    let total: f64 = probs.iter().sum();
    debug_assert!((total - 1.0).abs() < 1e-6, "branch probabilities sum to 1");
    let u: f64 = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut chosen = None;
    for (i, &pr) in probs.iter().enumerate() {
        if pr <= 0.0 {
            continue;
        }
        acc += pr;
        if u < acc {
            chosen = Some(i);
            break;
        }
    }
    // Floating slack at the top end: fall back to the last positive branch.
    let i = chosen.unwrap_or_else(|| {
        probs
            .iter()
            .rposition(|&pr| pr > 0.0)
            .expect("some branch has positive probability")
    });
    let norm = probs[i].sqrt();
    let state = post[i].scale(Complex64::new(1.0 / norm, 0.0));
    Ok((ensemble.branches[i].outcomes.clone(), state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::ops::FrameConvention;
    use zxgraph::RationalPhase;

    fn l(s: &str) -> Label {
        s.to_string()
    }

    #[test]
    fn empty_procedure_is_the_identity() {
        let p = Procedure {
            inputs: vec![l("a"), l("b")],
            ops: vec![],
            outputs: vec![l("a"), l("b")],
        };
        let e = enumerate_branches(&p).unwrap();
        assert_eq!(e.branches.len(), 1);
        assert!(e.branches[0]
            .kraus
            .approx_equal(&ComplexMatrix::identity(4), 0.0));
    }

    /// Output reordering is a genuine SWAP, not a relabeling no-op.
    #[test]
    fn output_order_permutes_the_operator() {
        let p = Procedure {
            inputs: vec![l("a"), l("b")],
            ops: vec![],
            outputs: vec![l("b"), l("a")],
        };
        let e = enumerate_branches(&p).unwrap();
        let swap = ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert!(e.branches[0].kraus.approx_equal(&swap, 0.0));
    }

    /// A conditional X on the second-declared qubit lands in the low kron
    /// slot: I⊗X, not X⊗I.
    #[test]
    fn kron_order_is_first_label_most_significant() {
        let p = Procedure {
            inputs: vec![l("a"), l("b")],
            ops: vec![SurgeryOp::PauliIf {
                q: l("b"),
                pauli: PauliKind::X,
                cond: Condition::Always,
            }],
            outputs: vec![l("a"), l("b")],
        };
        let e = enumerate_branches(&p).unwrap();
        let want = ComplexMatrix::identity(2).kron(&ComplexMatrix::pauli_x());
        assert!(e.branches[0].kraus.approx_equal(&want, 0.0));
    }

    #[test]
    fn standard_cnot_positive_branch() {
        let p = builtin("cnot-standard").unwrap();
        let e = enumerate_branches(&p).unwrap();
        assert_eq!(e.branches.len(), 2);
        let want = ComplexMatrix::cnot().scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert!(e.branches[0].kraus.approx_equal(&want, 1e-12));
    }

    #[test]
    fn branch_probability_checks_state() {
        let p = builtin("t-merge").unwrap();
        let e = enumerate_branches(&p).unwrap();
        let bad_trace = ComplexMatrix::identity(2);
        assert!(matches!(
            branch_probability(&e, 0, &bad_trace),
            Err(SurgeryError::InvalidState(_))
        ));
        assert!(matches!(
            branch_probability(&e, 9, &ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0))),
            Err(SurgeryError::BranchIndex { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let p = builtin("t-merge").unwrap();
        let plus = green_prep(&RationalPhase::zero());
        let (o1, s1) = sample(&p, &plus, 7).unwrap();
        let (o2, s2) = sample(&p, &plus, 7).unwrap();
        assert_eq!(o1, o2);
        assert!(s1.approx_equal(&s2, 0.0));
        assert!((s1.two_norm() - 1.0).abs() < 1e-12);
    }

    /// Deterministic rough-merge cases: |++⟩ is the +1 eigenstate of the
    /// joint seam operator, |+−⟩ the −1 eigenstate.
    #[test]
    fn rough_merge_eigenstates_force_the_outcome() {
        let p = Procedure {
            inputs: vec![l("a"), l("b")],
            ops: vec![SurgeryOp::MergeRough {
                parents: [l("a"), l("b")],
                out: l("c"),
                conv: FrameConvention::CorrectFirst,
            }],
            outputs: vec![l("c")],
        };
        let plus = green_prep(&RationalPhase::zero());
        let minus = green_prep(&RationalPhase::pi());
        let pp = plus.kron(&plus);
        let pm = plus.kron(&minus);
        for seed in 0..20 {
            let (o, _) = sample(&p, &pp, seed).unwrap();
            assert_eq!(o, vec![0], "|++⟩ must always herald +1");
            let (o, post) = sample(&p, &pm, seed).unwrap();
            assert_eq!(o, vec![1], "|+−⟩ must always herald −1");
            assert!((post.two_norm() - 1.0).abs() < 1e-12);
        }
    }
}
