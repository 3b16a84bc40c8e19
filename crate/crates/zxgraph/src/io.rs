//! Diagram file format (version `"zxs-1"`).
//!
//! A diagram is a single JSON object:
//!
//! ```json
//! {
//!   "version": "zxs-1",
//!   "scalar": { "re": 1.0, "im": 0.0 },
//!   "nodes": [
//!     { "id": 0, "kind": "in",  "order": 0 },
//!     { "id": 1, "kind": "out", "order": 0 },
//!     { "id": 2, "kind": "z",   "phase": { "num": 1, "den": 4 } }
//!   ],
//!   "edges": [[0, 2], [2, 1]]
//! }
//! ```
//!
//! * `kind` is `"in"`/`"out"` for ordered boundary nodes (field `order`
//!   required, 0-based) and `"z"` (green) / `"x"` (red) for spiders.
//! * `phase` is a rational multiple of π; omitting it on a spider means 0.
//!   Non-canonical fractions (unreduced, negative, or ≥ 2) are accepted and
//!   normalized, with a warning returned to the caller.
//! * `edges` lists unordered id pairs; duplicates denote parallel edges.
//!
//! Writing always produces canonical form: nodes ascending by id, reduced
//! phases, full float precision on the scalar. Reading a written file
//! reproduces the diagram exactly (including the scalar bit pattern).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagram::{Color, NodeId, NodeKind, ZXDiagram};
use crate::phase::{RationalPhase, RawPhase};
use crate::ZxError;

/// Format version tag written and required by this module.
pub const FORMAT_VERSION: &str = "zxs-1";

#[derive(Serialize, Deserialize)]
struct RawComplex {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    id: u32,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<RawPhase>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    version: String,
    scalar: RawComplex,
    nodes: Vec<RawNode>,
    edges: Vec<(u32, u32)>,
}

/// Parses a diagram from JSON text. Returns the diagram together with any
/// non-fatal warnings (currently: auto-reduced phases).
pub fn parse_diagram(text: &str) -> Result<(ZXDiagram, Vec<String>), ZxError> {
    let raw: RawDiagram =
        serde_json::from_str(text).map_err(|e| ZxError::Parse(e.to_string()))?;
    if raw.version != FORMAT_VERSION {
        return Err(ZxError::Parse(format!(
            "unsupported version {:?}, expected {:?}",
            raw.version, FORMAT_VERSION
        )));
    }

    let mut d = ZXDiagram::new();
    d.set_scalar(Complex64::new(raw.scalar.re, raw.scalar.im));
    let mut warnings = Vec::new();

    for n in &raw.nodes {
        let id = NodeId(n.id);
        if d.node(id).is_some() {
            return Err(ZxError::Parse(format!("duplicate node id {}", n.id)));
        }
        let kind = match n.kind.as_str() {
            "in" | "out" => {
                if n.phase.is_some() {
                    return Err(ZxError::Parse(format!(
                        "node {}: boundary nodes take \"order\", not \"phase\"",
                        n.id
                    )));
                }
                let order = n.order.ok_or_else(|| {
                    ZxError::Parse(format!(
                        "node {}: boundary node is missing \"order\"",
                        n.id
                    ))
                })?;
                if n.kind == "in" {
                    NodeKind::In { order }
                } else {
                    NodeKind::Out { order }
                }
            }
            "z" | "x" => {
                if n.order.is_some() {
                    return Err(ZxError::Parse(format!(
                        "node {}: spiders take \"phase\", not \"order\"",
                        n.id
                    )));
                }
                let phase = match n.phase {
                    None => RationalPhase::zero(),
                    Some(raw_phase) => {
                        let p =
                            RationalPhase::new(raw_phase.num, raw_phase.den).map_err(|e| {
                                ZxError::Parse(format!("node {}: {e}", n.id))
                            })?;
                        if !RationalPhase::is_canonical_raw(raw_phase.num, raw_phase.den) {
                            warnings.push(format!(
                                "node {}: phase {}/{} reduced to {}/{}",
                                n.id,
                                raw_phase.num,
                                raw_phase.den,
                                p.num(),
                                p.den()
                            ));
                        }
                        p
                    }
                };
                let color = if n.kind == "z" { Color::Green } else { Color::Red };
                NodeKind::Spider { color, phase }
            }
            other => {
                return Err(ZxError::Parse(format!(
                    "node {}: unknown kind {other:?} (expected in/out/z/x)",
                    n.id
                )))
            }
        };
        d.insert_node(id, kind);
    }

    for &(a, b) in &raw.edges {
        d.add_edge(NodeId(a), NodeId(b));
    }

    // A file that parses but breaks structural invariants is still a bad
    // input file; surface it as such rather than waiting for evaluation.
    d.validated()?;
    Ok((d, warnings))
}

/// Serializes a diagram to canonical pretty-printed JSON.
#[must_use]
pub fn diagram_to_string(d: &ZXDiagram) -> String {
    let nodes = d
        .nodes()
        .map(|(id, kind)| match *kind {
            NodeKind::In { order } => RawNode {
                id: id.0,
                kind: "in".into(),
                order: Some(order),
                phase: None,
            },
            NodeKind::Out { order } => RawNode {
                id: id.0,
                kind: "out".into(),
                order: Some(order),
                phase: None,
            },
            NodeKind::Spider { color, phase } => RawNode {
                id: id.0,
                kind: match color {
                    Color::Green => "z".into(),
                    Color::Red => "x".into(),
                },
                order: None,
                phase: Some(phase.into()),
            },
        })
        .collect();
    let raw = RawDiagram {
        version: FORMAT_VERSION.into(),
        scalar: RawComplex {
            re: d.scalar().re,
            im: d.scalar().im,
        },
        nodes,
        edges: d.edges().iter().map(|&(a, b)| (a.0, b.0)).collect(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Reads a diagram file, returning the diagram and any warnings.
pub fn read_diagram(path: &Path) -> Result<(ZXDiagram, Vec<String>), ZxError> {
    let text = std::fs::read_to_string(path)?;
    parse_diagram(&text)
}

/// Writes a diagram in canonical form.
pub fn write_diagram(d: &ZXDiagram, path: &Path) -> Result<(), ZxError> {
    std::fs::write(path, diagram_to_string(d))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnot() -> ZXDiagram {
        let mut d = ZXDiagram::new();
        let ic = d.add_input();
        let it = d.add_input();
        let oc = d.add_output();
        let ot = d.add_output();
        let g = d.add_spider(Color::Green, RationalPhase::zero());
        let r = d.add_spider(Color::Red, RationalPhase::zero());
        d.add_edge(ic, g);
        d.add_edge(g, oc);
        d.add_edge(it, r);
        d.add_edge(r, ot);
        d.add_edge(g, r);
        d
    }

    #[test]
    fn roundtrip_is_identity() {
        let d = cnot();
        let text = diagram_to_string(&d);
        let (back, warnings) = parse_diagram(&text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(d, back);
        // Canonical form is stable under a second pass.
        assert_eq!(text, diagram_to_string(&back));
    }

    #[test]
    fn scalar_roundtrips_to_full_precision() {
        let mut d = ZXDiagram::new();
        d.set_scalar(Complex64::new(
            std::f64::consts::FRAC_1_SQRT_2,
            -1.0 / 3.0,
        ));
        let (back, _) = parse_diagram(&diagram_to_string(&d)).unwrap();
        assert_eq!(d.scalar(), back.scalar());
    }

    #[test]
    fn unreduced_phase_warns() {
        let text = r#"{
            "version": "zxs-1",
            "scalar": {"re": 1.0, "im": 0.0},
            "nodes": [
                {"id": 0, "kind": "in", "order": 0},
                {"id": 1, "kind": "z", "phase": {"num": 2, "den": 8}},
                {"id": 2, "kind": "out", "order": 0}
            ],
            "edges": [[0,1],[1,2]]
        }"#;
        let (d, warnings) = parse_diagram(text).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("reduced to 1/4"));
        match d.node(NodeId(1)).unwrap() {
            NodeKind::Spider { phase, .. } => {
                assert_eq!(*phase, RationalPhase::new(1, 4).unwrap());
            }
            _ => panic!("expected spider"),
        }
    }

    #[test]
    fn zero_denominator_is_parse_error() {
        let text = r#"{
            "version": "zxs-1",
            "scalar": {"re": 1.0, "im": 0.0},
            "nodes": [{"id": 0, "kind": "z", "phase": {"num": 1, "den": 0}}],
            "edges": []
        }"#;
        let err = parse_diagram(text).unwrap_err();
        assert!(matches!(err, ZxError::Parse(_)), "got {err:?}");
        assert!(err.to_string().contains("denominator"));
    }

    #[test]
    fn unknown_kind_is_parse_error() {
        let text = r#"{
            "version": "zxs-1",
            "scalar": {"re": 1.0, "im": 0.0},
            "nodes": [{"id": 0, "kind": "h"}],
            "edges": []
        }"#;
        let err = parse_diagram(text).unwrap_err();
        assert!(err.to_string().contains("unknown kind"));
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"version": "zxs-2", "scalar": {"re":1.0,"im":0.0}, "nodes": [], "edges": []}"#;
        assert!(parse_diagram(text).is_err());
    }

    #[test]
    fn invalid_structure_rejected_at_read() {
        // Edge referencing a missing node.
        let text = r#"{
            "version": "zxs-1",
            "scalar": {"re": 1.0, "im": 0.0},
            "nodes": [{"id": 0, "kind": "in", "order": 0}],
            "edges": [[0, 7]]
        }"#;
        assert!(parse_diagram(text).is_err());
    }
}
