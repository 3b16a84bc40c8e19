//! Terminating normalization: exhaustively apply fusion, identity removal,
//! and π-absorption until no rule matches.
//!
//! Every step the loop takes removes exactly one node from the diagram —
//! fusion merges two spiders into one, identity removal deletes one, and
//! π-absorption (the degree-1 instance of π-commutation, which spawns no
//! side π nodes) deletes one — so the number of steps is bounded by the
//! initial node count and the loop always terminates.

use zxgraph::{Color, NodeId, NodeKind, ZXDiagram};

use crate::rules::{copy_pi_through, fuse_spiders, remove_identity, RewriteStep};
use crate::RewriteError;

fn spider_color(d: &ZXDiagram, id: NodeId) -> Option<Color> {
    match d.node(id)? {
        NodeKind::Spider { color, .. } => Some(*color),
        _ => None,
    }
}

/// Lowest-id fusable pair: both spiders, same colour, adjacent, and the
/// merge would not close to degree 0.
fn find_fusion(d: &ZXDiagram) -> Option<(NodeId, NodeId)> {
    for (id, kind) in d.nodes() {
        let NodeKind::Spider { color, .. } = kind else {
            continue;
        };
        let mut partners: Vec<NodeId> = d
            .neighbors(id)
            .into_iter()
            .filter(|&m| m != id && spider_color(d, m) == Some(*color))
            .collect();
        partners.sort();
        partners.dedup();
        for m in partners {
            let connecting = d
                .edges()
                .iter()
                .filter(|&&(x, y)| (x, y) == (id, m) || (x, y) == (m, id))
                .count();
            if d.degree(id) + d.degree(m) > 2 * connecting {
                return Some((id, m));
            }
        }
    }
    None
}

/// Lowest-id removable identity: degree-2 phase-0 spider with two distinct
/// neighbors.
fn find_identity(d: &ZXDiagram) -> Option<NodeId> {
    for (id, kind) in d.nodes() {
        let NodeKind::Spider { phase, .. } = kind else {
            continue;
        };
        if !phase.is_zero() || d.degree(id) != 2 {
            continue;
        }
        let nb = d.neighbors(id);
        if nb.len() == 2 && nb[0] != nb[1] {
            return Some(id);
        }
    }
    None
}

/// Lowest-id absorption site: a degree-2 π spider wired (by a single edge)
/// to an opposite-colour degree-1 spider. Commuting the π through a
/// degree-1 spider spawns no side π nodes, so this instance strictly
/// shrinks the diagram.
fn find_pi_absorption(d: &ZXDiagram) -> Option<(NodeId, NodeId)> {
    for (id, kind) in d.nodes() {
        let NodeKind::Spider { color, phase } = kind else {
            continue;
        };
        if !phase.is_pi() || d.degree(id) != 2 {
            continue;
        }
        let nb = d.neighbors(id);
        if nb.len() == 2 && nb[0] == nb[1] {
            continue; // double-edged π: not a pass-through site
        }
        for m in nb {
            if d.degree(m) == 1 && spider_color(d, m) == Some(color.flip()) {
                return Some((id, m));
            }
        }
    }
    None
}

/// Applies fusion, identity removal, and π-absorption to fixpoint,
/// preferring the lowest-id match of the highest-priority rule at each
/// step. Returns the normal form and the step trace. The diagram's tensor
/// (scalar included) is invariant across the whole trace.
pub fn normalize(d: &ZXDiagram) -> Result<(ZXDiagram, Vec<RewriteStep>), RewriteError> {
    let mut cur = d.clone();
    let mut trace = Vec::new();
    let budget = cur.node_count() + 1;
    for _ in 0..budget {
        if let Some((a, b)) = find_fusion(&cur) {
            let (next, step) = fuse_spiders(&cur, a, b)?;
            cur = next;
            trace.push(step);
            continue;
        }
        if let Some(n) = find_identity(&cur) {
            let (next, step) = remove_identity(&cur, n)?;
            cur = next;
            trace.push(step);
            continue;
        }
        if let Some((pi, target)) = find_pi_absorption(&cur) {
            let (next, step) = copy_pi_through(&cur, pi, target)?;
            cur = next;
            trace.push(step);
            continue;
        }
        return Ok((cur, trace));
    }
    // Each iteration above removes a node, so the budget can only be
    // exhausted if a rule failed to shrink the diagram — a bug.
    unreachable!("normalization exceeded its node-count step budget");
}
