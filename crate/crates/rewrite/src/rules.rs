//! The three local rewrite rules, each carrying its exact scalar correction.
//!
//! Soundness contract (tested exhaustively): for every legal application,
//! `evaluate(before) = evaluate(after)` including the global scalar. The
//! scalar corrections exist because degree-1 spiders are unit-normalized
//! while higher-degree spiders are not, so a rewrite that changes how many
//! degree-1 spiders a subgraph has must compensate by powers of 1/√2 (and
//! the π-commutation rule by a phase).

use num_complex::Complex64;

use zxgraph::{Color, NodeId, NodeKind, RationalPhase, ZXDiagram};

use crate::RewriteError;

/// Which rule a [`RewriteStep`] applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    SpiderFusion,
    IdentityRemoval,
    PiCopy,
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleKind::SpiderFusion => write!(f, "spider-fusion"),
            RuleKind::IdentityRemoval => write!(f, "identity-removal"),
            RuleKind::PiCopy => write!(f, "pi-copy"),
        }
    }
}

/// Record of one rule application.
#[derive(Debug, Clone)]
pub struct RewriteStep {
    /// The rule applied.
    pub rule: RuleKind,
    /// The nodes the rule matched on (in the pre-rewrite diagram).
    pub sites: Vec<NodeId>,
    /// Factor multiplied onto the diagram scalar (never zero).
    pub scalar_delta: Complex64,
}

fn spider_of(d: &ZXDiagram, id: NodeId) -> Result<(Color, RationalPhase), RewriteError> {
    match d.node(id) {
        Some(NodeKind::Spider { color, phase }) => Ok((*color, *phase)),
        Some(_) => Err(RewriteError::NotASpider(id)),
        None => Err(RewriteError::NoSuchNode(id)),
    }
}

/// Fuses two adjacent same-colour spiders into one (the lower id survives),
/// adding their phases and consuming *all* connecting edges — parallel
/// connecting edges vanish together, which is what makes the special
/// (double-edge) instances of the Frobenius laws plain fusions.
///
/// The scalar correction is `(1/√2)^(k_before − k_after)` where `k_before`
/// counts how many of `{a, b}` had degree 1 and `k_after` is 1 when the
/// fused spider has degree 1: exactly the factor that converts between the
/// unit-normalized degree-1 convention and the unnormalized general form.
///
/// Fusions whose result would have degree 0 (a fully closed pair) are
/// refused: a degree-0 spider is a bare scalar, which diagrams do not
/// represent as a node.
pub fn fuse_spiders(
    d: &ZXDiagram,
    a: NodeId,
    b: NodeId,
) -> Result<(ZXDiagram, RewriteStep), RewriteError> {
    if a == b {
        return Err(RewriteError::NotAdjacent(a, b));
    }
    let (color_a, phase_a) = spider_of(d, a)?;
    let (color_b, phase_b) = spider_of(d, b)?;
    if color_a != color_b {
        return Err(RewriteError::ColorMismatch(a, b));
    }
    let connecting = d
        .edges()
        .iter()
        .filter(|&&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
        .count();
    if connecting == 0 {
        return Err(RewriteError::NotAdjacent(a, b));
    }

    let deg_a = d.degree(a);
    let deg_b = d.degree(b);
    let merged_degree = deg_a + deg_b - 2 * connecting;
    if merged_degree == 0 {
        return Err(RewriteError::WouldHaveDegreeZero(a, b));
    }

    let (keep, drop) = if a < b { (a, b) } else { (b, a) };
    let mut out = d.clone();
    let new_edges: Vec<(NodeId, NodeId)> = d
        .edges()
        .iter()
        .filter(|&&(x, y)| !((x, y) == (a, b) || (x, y) == (b, a)))
        .map(|&(x, y)| {
            let x = if x == drop { keep } else { x };
            let y = if y == drop { keep } else { y };
            (x, y)
        })
        .collect();
    out.set_edges(new_edges);
    out.remove_node(drop);
    out.set_phase(keep, phase_a.add(&phase_b).expect("phase addition in range"));

    let k_before = usize::from(deg_a == 1) + usize::from(deg_b == 1);
    let k_after = usize::from(merged_degree == 1);
    let halves = k_before as i32 - k_after as i32;
    let scalar_delta = Complex64::new(2f64.powf(-f64::from(halves) / 2.0), 0.0);
    out.multiply_scalar(scalar_delta);

    Ok((
        out,
        RewriteStep {
            rule: RuleKind::SpiderFusion,
            sites: vec![a, b],
            scalar_delta,
        },
    ))
}

/// Deletes a degree-2, phase-0 spider (either colour) and splices its two
/// edges into one wire. Exact: such a spider's tensor is the identity.
///
/// Refused when both edges run to the same neighbor — splicing would create
/// a self-loop, which diagrams do not carry (for a same-colour neighbor,
/// fusion covers that shape instead).
pub fn remove_identity(
    d: &ZXDiagram,
    n: NodeId,
) -> Result<(ZXDiagram, RewriteStep), RewriteError> {
    let (_, phase) = spider_of(d, n)?;
    if !phase.is_zero() {
        return Err(RewriteError::NotIdentity(n, format!("phase {phase} ≠ 0")));
    }
    if d.degree(n) != 2 {
        return Err(RewriteError::NotIdentity(
            n,
            format!("degree {} ≠ 2", d.degree(n)),
        ));
    }
    let inc = d.incident_edges(n);
    debug_assert_eq!(inc.len(), 2);
    let other = |i: usize| {
        let (x, y) = d.edges()[i];
        if x == n {
            y
        } else {
            x
        }
    };
    let (x, y) = (other(inc[0]), other(inc[1]));
    if x == y {
        return Err(RewriteError::WouldSelfLoop(n, x));
    }
    let mut out = d.clone();
    out.remove_node(n); // drops both incident edges
    out.add_edge(x, y);
    Ok((
        out,
        RewriteStep {
            rule: RuleKind::IdentityRemoval,
            sites: vec![n],
            scalar_delta: Complex64::new(1.0, 0.0),
        },
    ))
}

/// Commutes a degree-2 π spider through an adjacent opposite-colour spider
/// of any degree k and phase α: the π node is deleted (its far wire
/// reattaches to the spider), the spider's phase flips to −α, fresh π nodes
/// of the original π's colour appear on the spider's other k−1 legs, and the
/// global scalar gains e^{iα}.
///
/// At k = 3, α = 0 this is the familiar copy law (a π entering one leg of a
/// copy spider emerges on both others); at k = 1 it is state absorption
/// (X·(|0⟩+e^{iα}|1⟩)/√2 = e^{iα}·(|0⟩+e^{−iα}|1⟩)/√2, and the
/// colour-swapped twin); at k = 2 it is the π-commutation of phase gates.
pub fn copy_pi_through(
    d: &ZXDiagram,
    pi_node: NodeId,
    spider: NodeId,
) -> Result<(ZXDiagram, RewriteStep), RewriteError> {
    let (pi_color, pi_phase) = spider_of(d, pi_node)?;
    let (sp_color, sp_phase) = spider_of(d, spider)?;
    if !pi_phase.is_pi() {
        return Err(RewriteError::NotPi(pi_node, pi_phase.to_string()));
    }
    if d.degree(pi_node) != 2 {
        return Err(RewriteError::NotIdentity(
            pi_node,
            format!("π node degree {} ≠ 2", d.degree(pi_node)),
        ));
    }
    if pi_color == sp_color {
        return Err(RewriteError::ColorMismatch(pi_node, spider));
    }
    let pi_edges = d.incident_edges(pi_node);
    let touches: Vec<usize> = pi_edges
        .iter()
        .copied()
        .filter(|&i| {
            let (x, y) = d.edges()[i];
            (x == pi_node && y == spider) || (y == pi_node && x == spider)
        })
        .collect();
    if touches.len() != 1 {
        // 0: not adjacent; 2: the π node is double-edged onto the spider,
        // which is a closed loop through it, not a commutation site.
        return Err(RewriteError::NotAdjacent(pi_node, spider));
    }

    // The π node's far neighbor (the wire it arrived on).
    let far_edge = if pi_edges[0] == touches[0] {
        pi_edges[1]
    } else {
        pi_edges[0]
    };
    let far = {
        let (x, y) = d.edges()[far_edge];
        if x == pi_node {
            y
        } else {
            x
        }
    };

    let mut out = d.clone();
    out.remove_node(pi_node);
    out.add_edge(far, spider);
    out.set_phase(spider, sp_phase.negate());

    // Interpose a fresh π node on every OTHER leg of the spider: all its
    // current edges except the one we just added (which is the last one).
    let legs: Vec<usize> = {
        let inc = out.incident_edges(spider);
        let last_added = out.edges().len() - 1;
        inc.into_iter().filter(|&i| i != last_added).collect()
    };
    // Rebuild edges: replace each such leg (spider, v) with (spider, p)+(p, v).
    // Insert from the highest edge index down so indices stay valid.
    for &i in legs.iter().rev() {
        let (x, y) = out.edges()[i];
        let v = if x == spider { y } else { x };
        let p = out.add_spider(pi_color, RationalPhase::pi());
        out.remove_edge_index(i);
        out.add_edge(spider, p);
        out.add_edge(p, v);
    }

    let scalar_delta = sp_phase.phase_factor();
    out.multiply_scalar(scalar_delta);
    Ok((
        out,
        RewriteStep {
            rule: RuleKind::PiCopy,
            sites: vec![pi_node, spider],
            scalar_delta,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zxgraph::evaluate;

    fn phase(n: i64, d: i64) -> RationalPhase {
        RationalPhase::new(n, d).unwrap()
    }

    /// in — green(α) — green(β) — out fuses to a single green(α+β).
    #[test]
    fn series_fusion() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let a = d.add_spider(Color::Green, phase(1, 4));
        let b = d.add_spider(Color::Green, phase(1, 2));
        d.add_edge(i, a);
        d.add_edge(a, b);
        d.add_edge(b, o);
        let before = evaluate(&d).unwrap();
        let (after, step) = fuse_spiders(&d, a, b).unwrap();
        assert_eq!(step.scalar_delta, Complex64::new(1.0, 0.0));
        assert!(evaluate(&after).unwrap().approx_equal(&before, 1e-12));
        match after.node(a).unwrap() {
            NodeKind::Spider { phase: p, .. } => assert_eq!(*p, phase(3, 4)),
            _ => panic!(),
        }
        assert!(after.node(b).is_none());
    }

    /// Fusing a degree-1 prep into a 1→2 spider sheds the prep's unit
    /// normalization: scalar 1/√2.
    #[test]
    fn degree1_fusion_scalar() {
        let mut d = ZXDiagram::new();
        let o1 = d.add_output();
        let o2 = d.add_output();
        let prep = d.add_spider(Color::Green, RationalPhase::zero());
        let split = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(prep, split);
        d.add_edge(split, o1);
        d.add_edge(split, o2);
        let before = evaluate(&d).unwrap();
        let (after, step) = fuse_spiders(&d, prep, split).unwrap();
        assert!(
            (step.scalar_delta - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm()
                < 1e-15
        );
        assert!(evaluate(&after).unwrap().approx_equal(&before, 1e-12));
    }

    /// Fusing down TO degree 1 goes the other way: scalar √2.
    #[test]
    fn fusion_to_degree1_scalar() {
        let mut d = ZXDiagram::new();
        let o = d.add_output();
        let a = d.add_spider(Color::Green, phase(1, 4));
        let b = d.add_spider(Color::Green, phase(1, 2));
        d.add_edge(a, b);
        d.add_edge(a, b);
        d.add_edge(b, o);
        let before = evaluate(&d).unwrap();
        let (after, step) = fuse_spiders(&d, a, b).unwrap();
        assert!((step.scalar_delta - Complex64::new(std::f64::consts::SQRT_2, 0.0)).norm() < 1e-15);
        assert!(evaluate(&after).unwrap().approx_equal(&before, 1e-12));
        assert_eq!(after.degree(a), 1);
    }

    /// Double-edged degree-3 pair (the special Frobenius shape) fuses to a
    /// plain degree-2 spider with no scalar correction.
    #[test]
    fn specialness_via_fusion() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let a = d.add_spider(Color::Red, RationalPhase::zero());
        let b = d.add_spider(Color::Red, RationalPhase::zero());
        d.add_edge(i, a);
        d.add_edge(a, b);
        d.add_edge(a, b);
        d.add_edge(b, o);
        let before = evaluate(&d).unwrap();
        let (after, step) = fuse_spiders(&d, a, b).unwrap();
        assert_eq!(step.scalar_delta, Complex64::new(1.0, 0.0));
        assert!(evaluate(&after).unwrap().approx_equal(&before, 1e-12));
        assert_eq!(after.degree(a), 2);
    }

    #[test]
    fn fusion_refusals() {
        let mut d = ZXDiagram::new();
        let a = d.add_spider(Color::Green, RationalPhase::zero());
        let b = d.add_spider(Color::Red, RationalPhase::zero());
        let c = d.add_spider(Color::Green, RationalPhase::zero());
        let x = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(a, b);
        d.add_edge(c, x);
        // colour mismatch
        assert!(matches!(
            fuse_spiders(&d, a, b),
            Err(RewriteError::ColorMismatch(_, _))
        ));
        // not adjacent
        assert!(matches!(
            fuse_spiders(&d, a, c),
            Err(RewriteError::NotAdjacent(_, _))
        ));
        // would close to degree 0
        assert!(matches!(
            fuse_spiders(&d, c, x),
            Err(RewriteError::WouldHaveDegreeZero(_, _))
        ));
        // boundary is not a spider
        let mut d2 = ZXDiagram::new();
        let i = d2.add_input();
        let s = d2.add_spider(Color::Green, RationalPhase::zero());
        d2.add_edge(i, s);
        assert!(matches!(
            fuse_spiders(&d2, i, s),
            Err(RewriteError::NotASpider(_))
        ));
    }

    #[test]
    fn identity_removal_on_wire() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let n = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(i, n);
        d.add_edge(n, o);
        let (after, step) = remove_identity(&d, n).unwrap();
        assert_eq!(step.scalar_delta, Complex64::new(1.0, 0.0));
        assert!(evaluate(&after)
            .unwrap()
            .approx_equal(&tensorcore::ComplexMatrix::identity(2), 1e-12));
        assert_eq!(after.node_count(), 2);
    }

    #[test]
    fn identity_removal_refusals() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let n = d.add_spider(Color::Green, phase(1, 4));
        d.add_edge(i, n);
        d.add_edge(n, o);
        assert!(matches!(
            remove_identity(&d, n),
            Err(RewriteError::NotIdentity(_, _))
        ));

        // Parallel edges to one neighbor: splice would self-loop.
        let mut d = ZXDiagram::new();
        let s = d.add_spider(Color::Red, phase(1, 4));
        let n = d.add_spider(Color::Green, RationalPhase::zero());
        let b = d.add_output();
        d.add_edge(n, s);
        d.add_edge(n, s);
        d.add_edge(s, b);
        assert!(matches!(
            remove_identity(&d, n),
            Err(RewriteError::WouldSelfLoop(_, _))
        ));
    }

    /// Red π through a green 1→2 copy spider: π emerges on both other legs.
    #[test]
    fn pi_copies_through_degree3() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o1 = d.add_output();
        let o2 = d.add_output();
        let pi = d.add_spider(Color::Red, RationalPhase::pi());
        let g = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(i, pi);
        d.add_edge(pi, g);
        d.add_edge(g, o1);
        d.add_edge(g, o2);
        let before = evaluate(&d).unwrap();
        let (after, step) = copy_pi_through(&d, pi, g).unwrap();
        assert_eq!(step.scalar_delta, Complex64::new(1.0, 0.0));
        assert!(evaluate(&after).unwrap().approx_equal(&before, 1e-12));
        // Two new red π spiders; original π gone.
        let reds: Vec<_> = after
            .nodes()
            .filter(|(_, k)| {
                matches!(k, NodeKind::Spider { color: Color::Red, phase } if phase.is_pi())
            })
            .map(|(id, _)| id)
            .collect();
        assert_eq!(reds.len(), 2);
        assert!(after.node(pi).is_none());
    }

    /// Colour-swapped and reflected variants plus the general-degree,
    /// general-phase form all preserve the tensor, with scalar e^{iα}.
    #[test]
    fn pi_copy_general_soundness() {
        for (pi_color, sp_color) in [(Color::Red, Color::Green), (Color::Green, Color::Red)] {
            for alpha in [phase(0, 1), phase(1, 4), phase(1, 2), phase(1, 1), phase(3, 2)] {
                for degree in 1..=4usize {
                    // Spider with `degree` legs: one carries the π node (fed
                    // from an input); the rest go to outputs.
                    let mut d = ZXDiagram::new();
                    let i = d.add_input();
                    let pi = d.add_spider(pi_color, RationalPhase::pi());
                    let s = d.add_spider(sp_color, alpha);
                    d.add_edge(i, pi);
                    d.add_edge(pi, s);
                    for _ in 0..degree - 1 {
                        let o = d.add_output();
                        d.add_edge(s, o);
                    }
                    let before = evaluate(&d).unwrap();
                    let (after, step) = copy_pi_through(&d, pi, s).unwrap();
                    assert!(
                        (step.scalar_delta - alpha.phase_factor()).norm() < 1e-15,
                        "scalar must be e^(iα)"
                    );
                    assert!(
                        evaluate(&after).unwrap().approx_equal(&before, 1e-12),
                        "π-copy unsound at {pi_color}/{sp_color}, α={alpha}, degree {degree}"
                    );
                }
            }
        }
    }

    #[test]
    fn pi_copy_refusals() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let p = d.add_spider(Color::Red, phase(1, 2)); // not π
        let g = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(i, p);
        d.add_edge(p, g);
        d.add_edge(g, o);
        assert!(matches!(
            copy_pi_through(&d, p, g),
            Err(RewriteError::NotPi(_, _))
        ));

        // Same colour: not a commutation site.
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let p = d.add_spider(Color::Green, RationalPhase::pi());
        let g = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(i, p);
        d.add_edge(p, g);
        d.add_edge(g, o);
        assert!(matches!(
            copy_pi_through(&d, p, g),
            Err(RewriteError::ColorMismatch(_, _))
        ));

        // Double-edged π: a loop, not a pass-through.
        let mut d = ZXDiagram::new();
        let o = d.add_output();
        let p = d.add_spider(Color::Red, RationalPhase::pi());
        let g = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(p, g);
        d.add_edge(p, g);
        d.add_edge(g, o);
        assert!(matches!(
            copy_pi_through(&d, p, g),
            Err(RewriteError::NotAdjacent(_, _))
        ));
    }
}
