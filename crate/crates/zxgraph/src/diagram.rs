//! The open-graph diagram structure.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::phase::RationalPhase;

/// Identifier of a node within one diagram.
///
/// Ids are dense-ish small integers assigned by the diagram builder; they are
/// stable across mutations (never reused after deletion) so rewrite logs can
/// refer to deleted nodes unambiguously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Spider colour: green spiders live in the computational (Z) basis, red
/// spiders in the conjugate (X) basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Green,
    Red,
}

impl Color {
    /// The other colour.
    #[must_use]
    pub fn flip(self) -> Self {
        match self {
            Color::Green => Color::Red,
            Color::Red => Color::Green,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Green => write!(f, "green"),
            Color::Red => write!(f, "red"),
        }
    }
}

/// What a node is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Diagram input, with its position in the input ordering.
    In { order: u32 },
    /// Diagram output, with its position in the output ordering.
    Out { order: u32 },
    /// A phased spider.
    Spider { color: Color, phase: RationalPhase },
}

impl NodeKind {
    /// True for `In` and `Out` nodes.
    #[must_use]
    pub fn is_boundary(&self) -> bool {
        matches!(self, NodeKind::In { .. } | NodeKind::Out { .. })
    }
}

/// A structural problem found by [`ZXDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {index} endpoint {node} does not exist")]
    MissingEndpoint { index: usize, node: NodeId },
    #[error("edge {index} is a self-loop on {node}")]
    SelfLoop { index: usize, node: NodeId },
    #[error("boundary node {node} has degree {degree}, expected exactly 1")]
    BoundaryDegree { node: NodeId, degree: usize },
    #[error("spider {node} has degree 0")]
    ZeroDegreeSpider { node: NodeId },
    #[error("input order indices are not 0..{expected} without gaps (got {got:?})")]
    InputOrder { expected: usize, got: Vec<u32> },
    #[error("output order indices are not 0..{expected} without gaps (got {got:?})")]
    OutputOrder { expected: usize, got: Vec<u32> },
    #[error("scalar is not finite")]
    ScalarNotFinite,
    #[error("scalar is zero (zero diagrams are rejected)")]
    ScalarZero,
}

/// An open ZX diagram: phased spiders and ordered boundary nodes joined by a
/// multiset of edges, with an explicit global scalar.
///
/// Parallel edges are allowed (and meaningful); self-loops are rejected.
/// The scalar participates in [`evaluate`](crate::evaluate) so rewrites can
/// preserve semantics exactly rather than "up to normalization".
#[derive(Debug, Clone)]
pub struct ZXDiagram {
    scalar: Complex64,
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: Vec<(NodeId, NodeId)>,
    next_id: u32,
}

impl Default for ZXDiagram {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for ZXDiagram {
    /// Structural equality: identical node map, identical edge multiset,
    /// bit-identical scalar. Id-allocation history is ignored.
    fn eq(&self, other: &Self) -> bool {
        if self.scalar != other.scalar || self.nodes != other.nodes {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        for e in a.iter_mut().chain(b.iter_mut()) {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl ZXDiagram {
    /// The empty diagram with scalar 1.
    #[must_use]
    pub fn new() -> Self {
        Self {
            scalar: Complex64::new(1.0, 0.0),
            nodes: BTreeMap::new(),
            edges: Vec::new(),
            next_id: 0,
        }
    }

    fn fresh_id(&mut self) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        id
    }

    /// Adds an input boundary node at the next order position.
    pub fn add_input(&mut self) -> NodeId {
        let order = self.inputs().len() as u32;
        let id = self.fresh_id();
        self.nodes.insert(id, NodeKind::In { order });
        id
    }

    /// Adds an output boundary node at the next order position.
    pub fn add_output(&mut self) -> NodeId {
        let order = self.outputs().len() as u32;
        let id = self.fresh_id();
        self.nodes.insert(id, NodeKind::Out { order });
        id
    }

    /// Adds a spider.
    pub fn add_spider(&mut self, color: Color, phase: RationalPhase) -> NodeId {
        let id = self.fresh_id();
        self.nodes.insert(id, NodeKind::Spider { color, phase });
        id
    }

    /// Inserts a node under an explicit id (file reader / structural
    /// surgery). Bumps the fresh-id counter past `id`.
    pub fn insert_node(&mut self, id: NodeId, kind: NodeKind) {
        self.next_id = self.next_id.max(id.0 + 1);
        self.nodes.insert(id, kind);
    }

    /// Adds an edge between two existing nodes. Parallel edges stack.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        self.edges.push((a, b));
    }

    /// Removes the edge at `index` (indices follow [`Self::edges`] order).
    pub fn remove_edge_index(&mut self, index: usize) {
        self.edges.remove(index);
    }

    /// Replaces the whole edge list.
    pub fn set_edges(&mut self, edges: Vec<(NodeId, NodeId)>) {
        self.edges = edges;
    }

    /// Removes a node together with all incident edges.
    pub fn remove_node(&mut self, id: NodeId) {
        self.nodes.remove(&id);
        self.edges.retain(|&(a, b)| a != id && b != id);
    }

    /// Overwrites a spider's phase.
    ///
    /// # Panics
    /// Panics if `id` is not a spider.
    pub fn set_phase(&mut self, id: NodeId, phase: RationalPhase) {
        match self.nodes.get_mut(&id) {
            Some(NodeKind::Spider { phase: p, .. }) => *p = phase,
            _ => panic!("set_phase on non-spider {id}"),
        }
    }

    /// The global scalar.
    #[must_use]
    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    /// Sets the global scalar.
    pub fn set_scalar(&mut self, scalar: Complex64) {
        self.scalar = scalar;
    }

    /// Multiplies the global scalar by a factor.
    pub fn multiply_scalar(&mut self, factor: Complex64) {
        self.scalar *= factor;
    }

    /// Node lookup.
    #[must_use]
    pub fn node(&self, id: NodeId) -> Option<&NodeKind> {
        self.nodes.get(&id)
    }

    /// All nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &NodeKind)> {
        self.nodes.iter().map(|(&id, kind)| (id, kind))
    }

    /// Number of nodes.
    #[must_use]
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The edge multiset, in insertion order.
    #[must_use]
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Degree of a node (parallel edges count separately).
    #[must_use]
    pub fn degree(&self, id: NodeId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == id) + usize::from(b == id))
            .sum()
    }

    /// Indices into [`Self::edges`] of all edges touching `id`.
    #[must_use]
    pub fn incident_edges(&self, id: NodeId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == id || b == id)
            .map(|(i, _)| i)
            .collect()
    }

    /// Neighbors of `id` with multiplicity, ascending.
    #[must_use]
    pub fn neighbors(&self, id: NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Input boundary ids in order-index order.
    #[must_use]
    pub fn inputs(&self) -> Vec<NodeId> {
        let mut ins: Vec<(u32, NodeId)> = self
            .nodes
            .iter()
            .filter_map(|(&id, kind)| match kind {
                NodeKind::In { order } => Some((*order, id)),
                _ => None,
            })
            .collect();
        ins.sort_unstable();
        ins.into_iter().map(|(_, id)| id).collect()
    }

    /// Output boundary ids in order-index order.
    #[must_use]
    pub fn outputs(&self) -> Vec<NodeId> {
        let mut outs: Vec<(u32, NodeId)> = self
            .nodes
            .iter()
            .filter_map(|(&id, kind)| match kind {
                NodeKind::Out { order } => Some((*order, id)),
                _ => None,
            })
            .collect();
        outs.sort_unstable();
        outs.into_iter().map(|(_, id)| id).collect()
    }

    /// Checks every structural invariant, returning all violations found
    /// (empty ⇔ the diagram is well-formed). Never panics.
    #[must_use]
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();

        for (index, &(a, b)) in self.edges.iter().enumerate() {
            for node in [a, b] {
                if !self.nodes.contains_key(&node) {
                    v.push(Violation::MissingEndpoint { index, node });
                }
            }
            if a == b {
                v.push(Violation::SelfLoop { index, node: a });
            }
        }

        for (&id, kind) in &self.nodes {
            let degree = self.degree(id);
            match kind {
                NodeKind::In { .. } | NodeKind::Out { .. } => {
                    if degree != 1 {
                        v.push(Violation::BoundaryDegree { node: id, degree });
                    }
                }
                NodeKind::Spider { .. } => {
                    if degree == 0 {
                        v.push(Violation::ZeroDegreeSpider { node: id });
                    }
                }
            }
        }

        let mut in_orders: Vec<u32> = self
            .nodes
            .values()
            .filter_map(|k| match k {
                NodeKind::In { order } => Some(*order),
                _ => None,
            })
            .collect();
        in_orders.sort_unstable();
        if !in_orders.iter().enumerate().all(|(i, &o)| o as usize == i) {
            v.push(Violation::InputOrder {
                expected: in_orders.len(),
                got: in_orders,
            });
        }
        let mut out_orders: Vec<u32> = self
            .nodes
            .values()
            .filter_map(|k| match k {
                NodeKind::Out { order } => Some(*order),
                _ => None,
            })
            .collect();
        out_orders.sort_unstable();
        if !out_orders.iter().enumerate().all(|(i, &o)| o as usize == i) {
            v.push(Violation::OutputOrder {
                expected: out_orders.len(),
                got: out_orders,
            });
        }

        if !self.scalar.re.is_finite() || !self.scalar.im.is_finite() {
            v.push(Violation::ScalarNotFinite);
        } else if self.scalar == Complex64::new(0.0, 0.0) {
            v.push(Violation::ScalarZero);
        }

        v
    }

    /// `Ok` when [`Self::validate`] finds nothing, otherwise an
    /// [`crate::ZxError::Invalid`] listing every violation.
    pub fn validated(&self) -> Result<(), crate::ZxError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg = v
                .iter()
                .map(Violation::to_string)
                .collect::<Vec<_>>()
                .join("; ");
            Err(crate::ZxError::Invalid(msg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_diagram_is_valid() {
        assert!(ZXDiagram::new().validate().is_empty());
    }

    #[test]
    fn wire_is_valid() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        d.add_edge(i, o);
        assert!(d.validate().is_empty());
        assert_eq!(d.inputs(), vec![i]);
        assert_eq!(d.outputs(), vec![o]);
    }

    #[test]
    fn self_loop_rejected() {
        let mut d = ZXDiagram::new();
        let s = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(s, s);
        let v = d.validate();
        assert!(v.contains(&Violation::SelfLoop { index: 0, node: s }));
    }

    #[test]
    fn dangling_boundary_rejected() {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let v = d.validate();
        assert!(v.contains(&Violation::BoundaryDegree { node: i, degree: 0 }));
    }

    #[test]
    fn zero_degree_spider_rejected() {
        let mut d = ZXDiagram::new();
        let s = d.add_spider(Color::Red, RationalPhase::pi());
        let v = d.validate();
        assert!(v.contains(&Violation::ZeroDegreeSpider { node: s }));
    }

    #[test]
    fn zero_scalar_rejected() {
        let mut d = ZXDiagram::new();
        d.set_scalar(Complex64::new(0.0, 0.0));
        assert!(d.validate().contains(&Violation::ScalarZero));
    }

    #[test]
    fn structural_equality_ignores_edge_order() {
        let mut d1 = ZXDiagram::new();
        let i = d1.add_input();
        let o = d1.add_output();
        let s = d1.add_spider(Color::Green, RationalPhase::zero());
        let mut d2 = d1.clone();
        d1.add_edge(i, s);
        d1.add_edge(s, o);
        d2.add_edge(o, s);
        d2.add_edge(s, i);
        assert_eq!(d1, d2);
    }

    #[test]
    fn degree_counts_parallel_edges() {
        let mut d = ZXDiagram::new();
        let a = d.add_spider(Color::Green, RationalPhase::zero());
        let b = d.add_spider(Color::Green, RationalPhase::zero());
        d.add_edge(a, b);
        d.add_edge(a, b);
        assert_eq!(d.degree(a), 2);
        assert_eq!(d.neighbors(a), vec![b, b]);
    }
}
