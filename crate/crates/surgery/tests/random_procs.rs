//! Fuzzes the whole pipeline: seeded random procedures must validate,
//! enumerate to trace-preserving ensembles, and agree with their spider
//! diagrams branch for branch.

use surgery::{enumerate_branches, random_procedure, verify_model};
use tensorcore::ComplexMatrix;

const TOL: f64 = 1e-9;

#[test]
fn two_hundred_random_procedures_are_trace_preserving() {
    for seed in 0..200 {
        let p = random_procedure(seed);
        p.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let e = enumerate_branches(&p).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(e.branches.len(), 1 << p.outcome_bits());

        let dim = 1usize << e.input_qubits;
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for b in &e.branches {
            sum = sum
                .add(&b.kraus.adjoint().matmul(&b.kraus).unwrap())
                .unwrap();
        }
        assert!(
            sum.approx_equal(&ComplexMatrix::identity(dim), TOL),
            "seed {seed}: ΣK†K deviates by {}",
            sum.sub(&ComplexMatrix::identity(dim)).unwrap().max_abs()
        );
    }
}

#[test]
fn random_procedures_agree_with_their_diagrams() {
    // The diagram bridge and the register machine were written against the
    // same conventions; this drives them against each other on inputs
    // neither was tuned for.
    for seed in 0..200 {
        let p = random_procedure(seed);
        let report = verify_model(&p, TOL).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(
            report.all_pass,
            "seed {seed}: {:?}",
            report
                .branches
                .iter()
                .filter(|b| !b.pass)
                .map(|b| (b.branch, b.diagram_error))
                .collect::<Vec<_>>()
        );
    }
}
