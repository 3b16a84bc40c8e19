//! Named algebraic identities checked through the rewrite engine: the
//! comultiplication laws of the degree-3 spiders, and the worked trace of a
//! corrected phase-injection (merge with a π byproduct on the ancilla).

use num_complex::Complex64;
use rewrite::{normalize, semantics_equal, EqualityMode, RuleKind};
use tensorcore::ComplexMatrix;
use zxgraph::{evaluate, Color, NodeKind, RationalPhase, ZXDiagram};

const TOL: f64 = 1e-10;

fn phase(n: i64, d: i64) -> RationalPhase {
    RationalPhase::new(n, d).unwrap()
}

/// m(m(x,y),z) built as two chained 2→1 spiders.
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

#[test]
fn merge_is_associative_after_fusion() {
    for color in [Color::Green, Color::Red] {
        let l = merge_left_assoc(color);
        let r = merge_right_assoc(color);
        let (nl, tl) = normalize(&l).unwrap();
        let (nr, tr) = normalize(&r).unwrap();
        // Each side fuses its two spiders into one degree-4 spider.
        assert_eq!(tl.len(), 1);
        assert_eq!(tr.len(), 1);
        assert_eq!(tl[0].rule, RuleKind::SpiderFusion);
        assert_eq!(tr[0].rule, RuleKind::SpiderFusion);
        assert!(semantics_equal(&nl, &nr, EqualityMode::Exact, TOL).unwrap());
        assert!(semantics_equal(&l, &r, EqualityMode::Exact, TOL).unwrap());
    }
}

/// The three 2→2 composites of a split and a merge that the sliding law
/// equates: (m⊗1)(1⊗Δ), Δ∘m, and (1⊗m)(Δ⊗1).
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
    let s = d.add_spider(color, RationalPhase::zero()); // splits i1
    let m = d.add_spider(color, RationalPhase::zero()); // merges i0 with the first half
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
    let s = d.add_spider(color, RationalPhase::zero()); // splits i0
    let m = d.add_spider(color, RationalPhase::zero()); // merges the second half with i1
    d.add_edge(i0, s);
    d.add_edge(s, o0);
    d.add_edge(s, m);
    d.add_edge(i1, m);
    d.add_edge(m, o1);
    d
}

#[test]
fn split_slides_past_merge() {
    for color in [Color::Green, Color::Red] {
        let a = slide_left(color);
        let b = slide_mid(color);
        let c = slide_right(color);
        assert!(semantics_equal(&a, &b, EqualityMode::Exact, TOL).unwrap());
        assert!(semantics_equal(&b, &c, EqualityMode::Exact, TOL).unwrap());
        // All three normalize to the same single degree-4 spider.
        for d in [&a, &b, &c] {
            let (n, _) = normalize(d).unwrap();
            let spiders: Vec<_> = n.nodes().filter(|(_, k)| !k.is_boundary()).collect();
            assert_eq!(spiders.len(), 1);
            assert_eq!(n.degree(spiders[0].0), 4);
        }
    }
}

#[test]
fn merge_after_split_is_the_identity_wire() {
    for color in [Color::Green, Color::Red] {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let s = d.add_spider(color, RationalPhase::zero());
        let m = d.add_spider(color, RationalPhase::zero());
        d.add_edge(i, s);
        d.add_edge(s, m);
        d.add_edge(s, m);
        d.add_edge(m, o);
        let (n, trace) = normalize(&d).unwrap();
        // Fusion eats both parallel edges with no scalar, then the leftover
        // degree-2 phase-0 spider is spliced away.
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].rule, RuleKind::SpiderFusion);
        assert_eq!(trace[0].scalar_delta, Complex64::new(1.0, 0.0));
        assert_eq!(trace[1].rule, RuleKind::IdentityRemoval);
        assert_eq!(n.node_count(), 2);
        assert!(evaluate(&n)
            .unwrap()
            .approx_equal(&ComplexMatrix::identity(2), TOL));
    }
}

/// Worked trace: a π/4 ancilla fed into a 2→1 spider, with a red π
/// byproduct sitting on the ancilla wire. Normalization first absorbs the
/// π into the ancilla (negating its phase, scalar e^{iπ/4}), then fuses the
/// ancilla into the spider (scalar 1/√2). The result is a single −π/4
/// phase gate times e^{iπ/4}/√2 — exactly the corrected branch operator of
/// a phase-injection by merging.
#[test]
fn corrected_phase_injection_trace() {
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

    let (n, trace) = normalize(&d).unwrap();
    let rules: Vec<RuleKind> = trace.iter().map(|s| s.rule).collect();
    assert_eq!(rules, vec![RuleKind::PiCopy, RuleKind::SpiderFusion]);

    // One spider remains: green, phase 7π/4 (≡ −π/4), degree 2.
    let spiders: Vec<_> = n.nodes().filter(|(_, k)| !k.is_boundary()).collect();
    assert_eq!(spiders.len(), 1);
    match spiders[0].1 {
        NodeKind::Spider { color, phase: p } => {
            assert_eq!(*color, Color::Green);
            assert_eq!(*p, phase(7, 4));
        }
        _ => panic!(),
    }

    // Accumulated scalar: e^{iπ/4} / √2.
    let expect_scalar = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_PI_4);
    assert!((n.scalar() - expect_scalar).norm() < 1e-12);

    // And the full tensor equals (1/√2)·diag(e^{iπ/4}, 1): the X-corrected
    // odd branch of injecting a π/4 ancilla.
    let t = evaluate(&n).unwrap();
    let f = std::f64::consts::FRAC_1_SQRT_2;
    let expect = ComplexMatrix::from_rows(vec![
        vec![Complex64::from_polar(f, std::f64::consts::FRAC_PI_4), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(f, 0.0)],
    ])
    .unwrap();
    assert!(t.approx_equal(&expect, 1e-12));
    assert!(evaluate(&d).unwrap().approx_equal(&expect, 1e-12));
}

/// A phase gate commutes with the opposite-colour π up to phase flip:
/// X · Rz(α) = e^{iα} · Rz(−α) · X, checked end to end through the rule.
#[test]
fn pi_through_phase_gate() {
    let alpha = phase(1, 4);
    let mut d = ZXDiagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let g = d.add_spider(Color::Green, alpha);
    let x = d.add_spider(Color::Red, RationalPhase::pi());
    d.add_edge(i, g);
    d.add_edge(g, x);
    d.add_edge(x, o);
    let (after, step) = rewrite::copy_pi_through(&d, x, g).unwrap();
    assert!((step.scalar_delta - alpha.phase_factor()).norm() < 1e-15);
    // The spider's phase flipped and a π emerged on its other leg.
    let flipped = after.nodes().any(|(_, k)| {
        matches!(k, NodeKind::Spider { color: Color::Green, phase: p } if *p == alpha.negate())
    });
    assert!(flipped);
    assert!(semantics_equal(&d, &after, EqualityMode::Exact, TOL).unwrap());
}
