//! Phase-gate suite: the heralded T and S gates built from a single merge,
//! the outcome-controlled-NOT relation between the two correction
//! conventions, and the deterministic-T construction.
//!
//! One case in this suite fails by design and is documented in the README:
//! the doubly-negative branch of `t-deterministic` carries a residual Z
//! that its single-bit-conditioned X fixup cannot express, so that branch
//! is *not* the T gate up to a heralded X and a global phase. The case is
//! reported honestly rather than weakened until it passes.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};
use tensorcore::ComplexMatrix;

use surgery::{branch_probability, builtin, enumerate_branches, green_prep, FrameConvention};
use zxgraph::RationalPhase;

use super::{distance, phase_distance};
use crate::report::{VerifyCase, VerifyReport};
use crate::CliError;

fn diag2(a: Complex64, b: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![a, Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), b],
    ])
    .expect("2×2")
}

pub fn run(tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    let mut cases = Vec::new();
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);

    // Heralded phase gates: each merge branch is a definite ±angle rotation.
    for (name, angle) in [("t-merge", FRAC_PI_4), ("y-merge", FRAC_PI_2)] {
        let e = enumerate_branches(&builtin(name)?)?;
        let up = Complex64::from_polar(1.0, angle);
        let pinned = [diag2(s, s * up), diag2(s * up, s)];
        let rot = [ComplexMatrix::rz(angle), ComplexMatrix::rz(-angle)];
        for b in 0..2 {
            let got = &e.branches[b].kraus;
            let err = distance(got, &pinned[b]);
            cases.push(VerifyCase::new(
                format!("tgate/{name}-branch{b}-pinned"),
                format!(
                    "{name} branch {b} is (1/√2)·diag({})",
                    if b == 0 {
                        format!("1, e^{{i{angle:.4}}}")
                    } else {
                        format!("e^{{i{angle:.4}}}, 1")
                    }
                ),
                "exact",
                err,
                err <= tol,
            ));
            let perr = phase_distance(got, &rot[b].scale(s));
            cases.push(VerifyCase::new(
                format!("tgate/{name}-branch{b}-rotation"),
                format!(
                    "{name} branch {b} is proportional to R_z({}{:.4})",
                    if b == 0 { "+" } else { "−" },
                    angle
                ),
                "phase",
                perr,
                perr <= tol,
            ));
        }

        // Probability law: on |+⟩ the two heralds are an unbiased coin.
        let plus = green_prep(&RationalPhase::zero());
        let rho = plus.matmul(&plus.adjoint()).expect("outer product");
        let mut err = 0.0f64;
        for b in 0..2 {
            err = err.max((branch_probability(&e, b, &rho)? - 0.5).abs());
        }
        cases.push(VerifyCase::new(
            format!("tgate/{name}-probability-half"),
            format!("{name} heralds each branch with probability exactly 1/2 on |+⟩"),
            "exact",
            err,
            err <= tol,
        ));

        // Swapping the correction convention multiplies each branch by
        // X^outcome and nothing else.
        let mut first = builtin(name)?;
        first.set_conventions(&[FrameConvention::CorrectFirst]);
        let mut second = builtin(name)?;
        second.set_conventions(&[FrameConvention::CorrectSecond]);
        let ef = enumerate_branches(&first)?;
        let es = enumerate_branches(&second)?;
        let x = ComplexMatrix::pauli_x();
        let mut cerr = 0.0f64;
        for (bf, bs) in ef.branches.iter().zip(&es.branches) {
            let want = match bf.outcomes[0] {
                0 => bf.kraus.clone(),
                _ => x.matmul(&bf.kraus).expect("2×2"),
            };
            cerr = cerr.max(distance(&bs.kraus, &want));
        }
        cases.push(VerifyCase::new(
            format!("tgate/{name}-convention-not"),
            format!("{name}: the two conventions differ exactly by X^outcome"),
            "exact",
            cerr,
            cerr <= tol,
        ));
    }

    // Deterministic T: two merges plus a conditional fixup. Branches are
    // indexed by (first herald, second herald); the claim per branch is
    // "the T gate up to a heralded X and a global phase".
    {
        let e = enumerate_branches(&builtin("t-deterministic")?)?;
        let t = ComplexMatrix::rz(FRAC_PI_4);
        let x = ComplexMatrix::pauli_x();
        let z = ComplexMatrix::pauli_z();
        let half = Complex64::new(0.5, 0.0);
        let t2 = t.scale(half);
        let xt2 = x.matmul(&t).expect("2×2").scale(half);

        // Pinned exact values, including the residual phases.
        let pinned = [
            t2.clone(),
            xt2.clone(),
            t2.scale(Complex64::from_polar(1.0, FRAC_PI_4)),
            x.matmul(&z)
                .expect("2×2")
                .matmul(&t)
                .expect("2×2")
                .scale(half * Complex64::from_polar(1.0, 3.0 * PI / 4.0)),
        ];
        let mut perr = 0.0f64;
        for (idx, want) in pinned.iter().enumerate() {
            perr = perr.max(distance(&e.branches[idx].kraus, want));
        }
        cases.push(VerifyCase::new(
            "tgate/t-deterministic-pinned",
            "t-deterministic: all four branches match their catalogued matrices",
            "exact",
            perr,
            perr <= tol,
        ));

        for (idx, b) in e.branches.iter().enumerate() {
            let err = phase_distance(&b.kraus, &t2).min(phase_distance(&b.kraus, &xt2));
            let bits: String = b.outcomes.iter().map(|v| char::from(b'0' + v)).collect();
            cases.push(VerifyCase::new(
                format!("tgate/t-deterministic-b{bits}-is-heralded-t"),
                format!(
                    "t-deterministic branch {bits} is T up to a heralded X and a phase{}",
                    if idx == 3 {
                        " (known failure: the branch carries a residual Z)"
                    } else {
                        ""
                    }
                ),
                "phase",
                err,
                err <= tol,
            ));
        }
    }

    Ok(VerifyReport::new("tgate", tol, seed, cases))
}
