//! Rewrite-rule suite: every local rule preserves the diagram tensor with
//! its exact scalar, the degree-3 spiders satisfy the merge/split algebra,
//! and seeded random diagrams normalize without semantic drift.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use tensorcore::ComplexMatrix;

use rewrite::{
    copy_pi_through, fuse_spiders, normalize, random_diagram, remove_identity, RandomLimits,
};
use zxgraph::{evaluate, Color, RationalPhase, ZXDiagram};

use super::distance;
use crate::report::{VerifyCase, VerifyReport};
use crate::CliError;

fn phase(n: i64, d: i64) -> RationalPhase {
    RationalPhase::new(n, d).expect("canonical phase")
}

fn color_word(c: Color) -> &'static str {
    match c {
        Color::Green => "green",
        Color::Red => "red",
    }
}

/// 1-in/1-out chain of two same-colour spiders with the given phases.
fn spider_chain(color: Color, phases: &[RationalPhase]) -> (ZXDiagram, Vec<zxgraph::NodeId>) {
    let mut d = ZXDiagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let ids: Vec<_> = phases.iter().map(|p| d.add_spider(color, *p)).collect();
    d.add_edge(i, ids[0]);
    for w in ids.windows(2) {
        d.add_edge(w[0], w[1]);
    }
    d.add_edge(*ids.last().expect("non-empty"), o);
    (d, ids)
}

/// m(m(x,y),z) as two chained 2→1 spiders.
fn merge_left_assoc(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i0 = d.add_input();
    let i1 = d.add_input();
    let i2 = d.add_input();
    let o = d.add_output();
    let m1 = d.add_spider(color, RationalPhase::zero());
    let m2 = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i0, m1);
    d.add_edge(i1, m1);
    d.add_edge(m1, m2);
    d.add_edge(i2, m2);
    d.add_edge(m2, o);
    d
}

/// m(x,m(y,z)).
fn merge_right_assoc(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i0 = d.add_input();
    let i1 = d.add_input();
    let i2 = d.add_input();
    let o = d.add_output();
    let m1 = d.add_spider(color, RationalPhase::zero());
    let m2 = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i1, m1);
    d.add_edge(i2, m1);
    d.add_edge(m1, m2);
    d.add_edge(i0, m2);
    d.add_edge(m2, o);
    d
}

/// The three 2→2 split/merge composites equated by the sliding law.
fn slide_mid(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i0 = d.add_input();
    let i1 = d.add_input();
    let o0 = d.add_output();
    let o1 = d.add_output();
    let m = d.add_spider(color, RationalPhase::zero());
    let s = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i0, m);
    d.add_edge(i1, m);
    d.add_edge(m, s);
    d.add_edge(s, o0);
    d.add_edge(s, o1);
    d
}

fn slide_left(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i0 = d.add_input();
    let i1 = d.add_input();
    let o0 = d.add_output();
    let o1 = d.add_output();
    let s = d.add_spider(color, RationalPhase::zero());
    let m = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i1, s);
    d.add_edge(s, m);
    d.add_edge(s, o1);
    d.add_edge(i0, m);
    d.add_edge(m, o0);
    d
}

fn slide_right(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i0 = d.add_input();
    let i1 = d.add_input();
    let o0 = d.add_output();
    let o1 = d.add_output();
    let s = d.add_spider(color, RationalPhase::zero());
    let m = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i0, s);
    d.add_edge(s, o0);
    d.add_edge(s, m);
    d.add_edge(i1, m);
    d.add_edge(m, o1);
    d
}

fn split_then_merge(color: Color) -> ZXDiagram {
    let mut d = ZXDiagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let s = d.add_spider(color, RationalPhase::zero());
    let m = d.add_spider(color, RationalPhase::zero());
    d.add_edge(i, s);
    d.add_edge(s, m);
    d.add_edge(s, m);
    d.add_edge(m, o);
    d
}

fn tensors_distance(a: &ZXDiagram, b: &ZXDiagram) -> Result<f64, CliError> {
    Ok(distance(&evaluate(a)?, &evaluate(b)?))
}

pub fn run(tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    let mut cases = Vec::new();

    // Fusion of two adjacent same-colour spiders adds their phases.
    for color in [Color::Green, Color::Red] {
        let (d, ids) = spider_chain(color, &[phase(1, 4), phase(1, 2)]);
        let (fused, _) = fuse_spiders(&d, ids[0], ids[1])?;
        let err = tensors_distance(&d, &fused)?;
        let idx = if color == Color::Green { "010" } else { "011" };
        cases.push(VerifyCase::new(
            format!("zx/{idx}-fuse-{}-spiders", color_word(color)),
            format!(
                "fusing adjacent {} spiders π/4 and π/2 preserves the tensor",
                color_word(color)
            ),
            "exact",
            err,
            err <= tol,
        ));
    }

    // A phase-0 degree-2 spider is an invisible piece of wire.
    for color in [Color::Green, Color::Red] {
        let (d, ids) = spider_chain(color, &[RationalPhase::zero()]);
        let (spliced, _) = remove_identity(&d, ids[0])?;
        let err = tensors_distance(&d, &spliced)?
            .max(distance(&evaluate(&spliced)?, &ComplexMatrix::identity(2)));
        let idx = if color == Color::Green { "020" } else { "021" };
        cases.push(VerifyCase::new(
            format!("zx/{idx}-identity-{}-spider", color_word(color)),
            format!(
                "a phase-0 degree-2 {} spider splices out, leaving the bare wire",
                color_word(color)
            ),
            "exact",
            err,
            err <= tol,
        ));
    }

    // Pushing a π of the opposite colour through a spider negates the
    // spider phase and emits the exact scalar e^{iα}.
    {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let pi = d.add_spider(Color::Red, RationalPhase::pi());
        let sp = d.add_spider(Color::Green, phase(1, 4));
        d.add_edge(i, pi);
        d.add_edge(pi, sp);
        d.add_edge(sp, o);
        let (pushed, step) = copy_pi_through(&d, pi, sp)?;
        let scalar_err =
            (step.scalar_delta - Complex64::from_polar(1.0, FRAC_PI_4)).norm();
        let err = tensors_distance(&d, &pushed)?.max(scalar_err);
        cases.push(VerifyCase::new(
            "zx/030-pi-copy-negates-phase",
            "a red π pushed through a green π/4 spider negates it and emits e^{iπ/4}",
            "exact",
            err,
            err <= tol,
        ));
    }

    // Merging is associative: both association orders have the same tensor
    // and normalize to one degree-4 spider.
    for color in [Color::Green, Color::Red] {
        let l = merge_left_assoc(color);
        let r = merge_right_assoc(color);
        let (nl, _) = normalize(&l)?;
        let (nr, _) = normalize(&r)?;
        let err = tensors_distance(&l, &r)?.max(tensors_distance(&nl, &nr)?);
        let idx = if color == Color::Green { "040" } else { "041" };
        cases.push(VerifyCase::new(
            format!("zx/{idx}-merge-associative-{}", color_word(color)),
            format!(
                "the {} 2→1 spider is associative, before and after normalization",
                color_word(color)
            ),
            "exact",
            err,
            err <= tol,
        ));
    }

    // The split slides past the merge: all three 2→2 composites agree.
    for color in [Color::Green, Color::Red] {
        let a = slide_left(color);
        let b = slide_mid(color);
        let c = slide_right(color);
        let err = tensors_distance(&a, &b)?.max(tensors_distance(&b, &c)?);
        let idx = if color == Color::Green { "050" } else { "051" };
        cases.push(VerifyCase::new(
            format!("zx/{idx}-split-slides-past-merge-{}", color_word(color)),
            format!(
                "the three {} split/merge composites of 2→2 wires agree",
                color_word(color)
            ),
            "exact",
            err,
            err <= tol,
        ));
    }

    // Splitting and immediately re-merging is the plain wire.
    for color in [Color::Green, Color::Red] {
        let d = split_then_merge(color);
        let (n, _) = normalize(&d)?;
        let err = distance(&evaluate(&n)?, &ComplexMatrix::identity(2))
            .max(tensors_distance(&d, &n)?);
        let idx = if color == Color::Green { "060" } else { "061" };
        cases.push(VerifyCase::new(
            format!("zx/{idx}-split-then-merge-is-wire-{}", color_word(color)),
            format!(
                "a {} split followed by the matching merge is the identity wire",
                color_word(color)
            ),
            "exact",
            err,
            err <= tol,
        ));
    }

    // Worked phase-injection: a π byproduct on a π/4 ancilla normalizes to
    // the corrected single-spider gate with scalar e^{iπ/4}/√2.
    {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let prep = d.add_spider(Color::Green, phase(1, 4));
        let byproduct = d.add_spider(Color::Red, RationalPhase::pi());
        let m = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(prep, byproduct);
        d.add_edge(byproduct, m);
        d.add_edge(i, m);
        d.add_edge(m, o);
        let (n, _) = normalize(&d)?;
        let e4 = Complex64::from_polar(1.0, FRAC_PI_4);
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let want = ComplexMatrix::from_rows(vec![
            vec![s * e4, Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), s],
        ])
        .expect("2×2");
        let err = distance(&evaluate(&n)?, &want).max(tensors_distance(&d, &n)?);
        cases.push(VerifyCase::new(
            "zx/070-corrected-phase-injection",
            "a π byproduct on a π/4 ancilla normalizes to (e^{iπ/4}/√2)·diag(1, e^{−iπ/4})",
            "exact",
            err,
            err <= tol,
        ));
    }

    // Seeded fuzzing: normalization never moves the tensor.
    {
        const FUZZ_COUNT: u64 = 50;
        let mut worst = 0.0f64;
        for k in 0..FUZZ_COUNT {
            let d = random_diagram(seed.wrapping_add(k), RandomLimits::default());
            let (n, _) = normalize(&d)?;
            worst = worst.max(tensors_distance(&d, &n)?);
        }
        cases.push(VerifyCase::new(
            "zx/080-normalize-fuzz",
            format!("{FUZZ_COUNT} seeded random diagrams normalize with the tensor preserved"),
            "exact",
            worst,
            worst <= tol,
        ));
    }

    Ok(VerifyReport::new("zx-rules", tol, seed, cases))
}
