//! Adjoint and composition of diagrams.

use std::collections::BTreeSet;

use crate::diagram::{NodeId, NodeKind, ZXDiagram};
use crate::ZxError;

/// The adjoint diagram: inputs and outputs swap roles (keeping their
/// orders), every spider phase is negated mod 2π, and the scalar is
/// conjugated. `evaluate(dagger_diagram(d)) = adjoint(evaluate(d))`.
#[must_use]
pub fn dagger_diagram(d: &ZXDiagram) -> ZXDiagram {
    let mut out = ZXDiagram::new();
    out.set_scalar(d.scalar().conj());
    for (id, kind) in d.nodes() {
        let flipped = match *kind {
            NodeKind::In { order } => NodeKind::Out { order },
            NodeKind::Out { order } => NodeKind::In { order },
            NodeKind::Spider { color, phase } => NodeKind::Spider {
                color,
                phase: phase.negate(),
            },
        };
        out.insert_node(id, flipped);
    }
    out.set_edges(d.edges().to_vec());
    out
}

fn id_offset(d: &ZXDiagram) -> u32 {
    d.nodes().map(|(id, _)| id.0 + 1).max().unwrap_or(0)
}

/// Sequential composition "g after f": f's outputs are joined to g's inputs
/// in order, the joined boundary nodes are deleted and their wires spliced,
/// and scalars multiply. Satisfies
/// `evaluate(compose_sequential(f, g)) = evaluate(g) · evaluate(f)`.
///
/// A join that closes a pure wire loop (a cup of f meeting a cap of g)
/// contributes a factor 2 (= tr I₂) to the scalar.
pub fn compose_sequential(f: &ZXDiagram, g: &ZXDiagram) -> Result<ZXDiagram, ZxError> {
    f.validated()?;
    g.validated()?;
    let f_out = f.outputs();
    let g_in = g.inputs();
    if f_out.len() != g_in.len() {
        return Err(ZxError::ComposeArity(f_out.len(), g_in.len()));
    }
    let offset = id_offset(f);
    let shift = |id: NodeId| NodeId(id.0 + offset);

    let mut out = ZXDiagram::new();
    out.set_scalar(f.scalar() * g.scalar());

    // Take every node except the joined boundaries.
    let connectors: BTreeSet<NodeId> = f_out
        .iter()
        .copied()
        .chain(g_in.iter().map(|&id| shift(id)))
        .collect();
    for (id, kind) in f.nodes() {
        if !connectors.contains(&id) {
            out.insert_node(id, *kind);
        }
    }
    for (id, kind) in g.nodes() {
        let id = shift(id);
        if !connectors.contains(&id) {
            out.insert_node(id, *kind);
        }
    }

    // All edges, plus one virtual edge per joined pair; then splice the
    // connector nodes away.
    let mut edges: Vec<(NodeId, NodeId)> = f.edges().to_vec();
    edges.extend(g.edges().iter().map(|&(a, b)| (shift(a), shift(b))));
    edges.extend(f_out.iter().zip(&g_in).map(|(&o, &i)| (o, shift(i))));

    let mut scalar_loops = 0u32;
    for &c in &connectors {
        // A connector always has exactly two edge ends: its original wire
        // and the virtual join (or the results of earlier splices).
        let inc: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == c || b == c)
            .map(|(i, _)| i)
            .collect();
        if inc.len() == 1 {
            // Both ends on c: a closed loop of spliced wire.
            debug_assert_eq!(edges[inc[0]], (c, c));
            edges.remove(inc[0]);
            scalar_loops += 1;
            continue;
        }
        debug_assert_eq!(inc.len(), 2, "connector {c} must have degree 2");
        let other = |i: usize| -> NodeId {
            let (a, b) = edges[i];
            if a == c {
                b
            } else {
                a
            }
        };
        let (x, y) = (other(inc[0]), other(inc[1]));
        if x == y && !connectors.contains(&x) {
            // Both of c's wires lead to the same spider: the splice would
            // close a self-loop on it, which diagrams here cannot carry.
            return Err(ZxError::Invalid(format!(
                "sequential composition would create a self-loop on {x}"
            )));
        }
        // Remove higher index first so the lower index stays valid.
        edges.remove(inc[1]);
        edges.remove(inc[0]);
        edges.push((x, y));
    }
    for _ in 0..scalar_loops {
        out.multiply_scalar(num_complex::Complex64::new(2.0, 0.0));
    }
    out.set_edges(edges);
    Ok(out)
}

/// Parallel composition with `f` above `g`: `f`'s boundaries take the more
/// significant qubit positions. Satisfies
/// `evaluate(compose_parallel(f, g)) = kron(evaluate(f), evaluate(g))`.
#[must_use]
pub fn compose_parallel(f: &ZXDiagram, g: &ZXDiagram) -> ZXDiagram {
    let offset = id_offset(f);
    let in_shift = f.inputs().len() as u32;
    let out_shift = f.outputs().len() as u32;

    let mut out = ZXDiagram::new();
    out.set_scalar(f.scalar() * g.scalar());
    for (id, kind) in f.nodes() {
        out.insert_node(id, *kind);
    }
    for (id, kind) in g.nodes() {
        let shifted = match *kind {
            NodeKind::In { order } => NodeKind::In {
                order: order + in_shift,
            },
            NodeKind::Out { order } => NodeKind::Out {
                order: order + out_shift,
            },
            spider => spider,
        };
        out.insert_node(NodeId(id.0 + offset), shifted);
    }
    let mut edges = f.edges().to_vec();
    edges.extend(
        g.edges()
            .iter()
            .map(|&(a, b)| (NodeId(a.0 + offset), NodeId(b.0 + offset))),
    );
    out.set_edges(edges);
    out
}
