//! Scalar-exact rewriting of spider diagrams.
//!
//! Three local rules — spider fusion, identity removal, and π-commutation —
//! each return a rewritten diagram plus a [`RewriteStep`] recording the
//! exact scalar correction applied, so the diagram's tensor (global factor
//! included) is invariant under every legal application. [`normalize`]
//! drives the shrinking rules to a fixpoint with a termination bound,
//! [`semantics_equal`] decides tensor equality under three strictness
//! modes, and [`random_diagram`] provides seeded inputs for fuzzing the
//! rules against dense evaluation.

mod equality;
mod normalize;
mod random;
mod rules;

pub use equality::{matrices_equal, semantics_equal, EqualityMode};
pub use normalize::normalize;
pub use random::{random_diagram, RandomLimits};
pub use rules::{copy_pi_through, fuse_spiders, remove_identity, RewriteStep, RuleKind};

use zxgraph::NodeId;

/// Why a rewrite rule refused to apply.
#[derive(Debug, thiserror::Error)]
pub enum RewriteError {
    /// The diagram has no node with this id.
    #[error("no node {0} in the diagram")]
    NoSuchNode(NodeId),
    /// The rule needs a spider but the node is a boundary.
    #[error("node {0} is a boundary, not a spider")]
    NotASpider(NodeId),
    /// Fusion needs equal colours; π-commutation needs opposite colours.
    #[error("nodes {0} and {1} have incompatible colours for this rule")]
    ColorMismatch(NodeId, NodeId),
    /// The two nodes are not joined by exactly the edges the rule expects.
    #[error("nodes {0} and {1} are not adjacent in the required way")]
    NotAdjacent(NodeId, NodeId),
    /// Fusing would produce a degree-0 spider (a bare scalar).
    #[error("fusing {0} and {1} would leave a degree-0 spider")]
    WouldHaveDegreeZero(NodeId, NodeId),
    /// The node is not a removable identity (wrong phase or degree).
    #[error("node {0} is not a removable identity: {1}")]
    NotIdentity(NodeId, String),
    /// Splicing out this node would connect a node to itself.
    #[error("removing {0} would create a self-loop on {1}")]
    WouldSelfLoop(NodeId, NodeId),
    /// π-commutation needs a π phase on the moving spider.
    #[error("node {0} has phase {1}, not π")]
    NotPi(NodeId, String),
}
