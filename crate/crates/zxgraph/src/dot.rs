//! Graphviz DOT export.

use std::fmt::Write as _;
use std::path::Path;

use crate::diagram::{Color, NodeKind, ZXDiagram};
use crate::ZxError;

/// Renders the diagram as an undirected Graphviz graph: green spiders as
/// filled light-green circles, red spiders as filled light-red circles
/// (both labelled with their phase), boundaries as points tagged
/// `in<order>`/`out<order>`. Output is deterministic (nodes ascending by
/// id, edges in insertion order).
#[must_use]
pub fn diagram_to_dot(d: &ZXDiagram) -> String {
    let mut s = String::from("graph zx {\n  rankdir=BT;\n");
    for (id, kind) in d.nodes() {
        match kind {
            NodeKind::In { order } => {
                let _ = writeln!(s, "  {id} [shape=point, xlabel=\"in{order}\"];");
            }
            NodeKind::Out { order } => {
                let _ = writeln!(s, "  {id} [shape=point, xlabel=\"out{order}\"];");
            }
            NodeKind::Spider { color, phase } => {
                let fill = match color {
                    Color::Green => "lightgreen",
                    Color::Red => "lightpink",
                };
                let _ = writeln!(
                    s,
                    "  {id} [shape=circle, style=filled, fillcolor={fill}, label=\"{phase}\"];"
                );
            }
        }
    }
    for &(a, b) in d.edges() {
        let _ = writeln!(s, "  {a} -- {b};");
    }
    s.push_str("}\n");
    s
}

/// Writes the DOT rendering to a file.
pub fn export_dot(d: &ZXDiagram, path: &Path) -> Result<(), ZxError> {
    std::fs::write(path, diagram_to_dot(d))?;
    Ok(())
}
