//! Text formats: the labeled graph file and the three tree renderings.
//!
//! Graph files are line-oriented. `c ...` is a comment, `p <n> <m>`
//! declares the vertex and edge counts (optional, at most once, before any
//! edge), `e <u> <v>` adds an edge between zero-based vertex ids, and
//! `n <id> <name>` names a vertex. Strict parsing rejects self-loops,
//! duplicate edges, counts that disagree with the header and partial label
//! sets; lenient parsing drops or fills those in and reports each repair
//! as a warning.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::tree::{MDTree, NodeId, NodeKind};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {v} out of range (graph has {n} vertices)")]
    VertexRange { line: usize, v: u64, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("header declared {declared} edges but the file has {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("labels cover {labeled} of {n} vertices")]
    PartialLabels { labeled: usize, n: usize },
    #[error("the file declares no vertices")]
    Empty,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseMode {
    Strict,
    Lenient,
}

#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Option<Vec<String>>,
    /// Repairs made in lenient mode, one message each.
    pub warnings: Vec<String>,
}

/// Parses the labeled graph format. The vertex count comes from the header
/// when present, otherwise from the largest id mentioned.
pub fn parse_graph(text: &str, mode: ParseMode) -> Result<ParsedGraph, ParseError> {
    let lenient = mode == ParseMode::Lenient;
    let mut warnings: Vec<String> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges: Vec<(u64, u64, usize)> = Vec::new();
    let mut raw_labels: Vec<(u64, String, usize)> = Vec::new();
    let mut max_id: Option<u64> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut parts = raw.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let fail = |reason: String| ParseError::Malformed { line, reason };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(fail("second header".into()));
                }
                if !raw_edges.is_empty() {
                    return Err(fail("header after edges".into()));
                }
                let n: usize = parse_field(parts.next(), line, "vertex count")?;
                let m: usize = parse_field(parts.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let u: u64 = parse_field(parts.next(), line, "edge endpoint")?;
                let v: u64 = parse_field(parts.next(), line, "edge endpoint")?;
                max_id = Some(max_id.unwrap_or(0).max(u).max(v));
                raw_edges.push((u, v, line));
            }
            "n" => {
                let id: u64 = parse_field(parts.next(), line, "vertex id")?;
                let name = parts.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(fail("label line without a name".into()));
                }
                max_id = Some(max_id.unwrap_or(0).max(id));
                raw_labels.push((id, name, line));
            }
            _ => return Err(fail(format!("unknown line tag {tag:?}"))),
        }
    }

    let n = match header {
        Some((n, _)) => n,
        None => match max_id {
            Some(m) => m as usize + 1,
            None => return Err(ParseError::Empty),
        },
    };
    if n == 0 {
        return Err(ParseError::Empty);
    }

    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(raw_edges.len());
    let mut seen = std::collections::HashSet::<(u32, u32)>::with_capacity(raw_edges.len());
    for (u, v, line) in raw_edges {
        if u >= n as u64 || v >= n as u64 {
            return Err(ParseError::VertexRange { line, v: u.max(v), n });
        }
        let (u, v) = (u as u32, v as u32);
        if u == v {
            if lenient {
                warnings.push(format!("line {line}: dropped self-loop at {u}"));
                continue;
            }
            return Err(ParseError::SelfLoop { line, v: u });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            if lenient {
                warnings.push(format!("line {line}: dropped duplicate edge {u}-{v}"));
                continue;
            }
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }

    if let Some((_, m)) = header {
        if edges.len() != m {
            if lenient {
                warnings.push(format!(
                    "header declared {m} edges but the file has {}",
                    edges.len()
                ));
            } else {
                return Err(ParseError::EdgeCountMismatch { declared: m, found: edges.len() });
            }
        }
    }

    let labels = if raw_labels.is_empty() {
        None
    } else {
        let mut labels = vec![String::new(); n];
        let mut labeled = 0usize;
        for (id, name, line) in raw_labels {
            if id >= n as u64 {
                return Err(ParseError::VertexRange { line, v: id, n });
            }
            let slot = &mut labels[id as usize];
            if slot.is_empty() {
                labeled += 1;
            } else if lenient {
                warnings.push(format!("line {line}: relabeled vertex {id}"));
            } else {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("vertex {id} labeled twice"),
                });
            }
            *slot = name;
        }
        if labeled < n {
            if lenient {
                for (i, slot) in labels.iter_mut().enumerate() {
                    if slot.is_empty() {
                        *slot = i.to_string();
                    }
                }
                warnings.push(format!("filled {} missing labels with ids", n - labeled));
            } else {
                return Err(ParseError::PartialLabels { labeled, n });
            }
        }
        Some(labels)
    };

    let graph = Graph::new(n, &edges).expect("validated above");
    Ok(ParsedGraph { graph, labels, warnings })
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let s = field.ok_or_else(|| ParseError::Malformed {
        line,
        reason: format!("missing {what}"),
    })?;
    s.parse().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("bad {what} {s:?}"),
    })
}

/// Renders a graph so that parsing the result reproduces it exactly.
pub fn render_graph(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    if let Some(labels) = labels {
        for (i, name) in labels.iter().enumerate() {
            let _ = writeln!(out, "n {i} {name}");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Graphviz rendering of a decomposition tree. Series nodes are labeled 1,
/// parallel nodes 0 and prime nodes P; leaves show their label when one is
/// given, otherwise the vertex id.
pub fn render_dot(t: &MDTree, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph mdtree {\n  ordering=out;\n");
    for id in t.node_ids() {
        let line = match t.kind(id) {
            NodeKind::Leaf(v) => {
                let name = labels
                    .map(|ls| ls[v as usize].clone())
                    .unwrap_or_else(|| v.to_string());
                format!("  n{id} [shape=plaintext, label=\"{}\"];", escape(&name))
            }
            NodeKind::Series => format!("  n{id} [shape=circle, label=\"1\"];"),
            NodeKind::Parallel => format!("  n{id} [shape=circle, label=\"0\"];"),
            NodeKind::Prime => format!("  n{id} [shape=box, label=\"P\"];"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    for id in t.node_ids() {
        for &c in t.children(id) {
            let _ = writeln!(out, "  n{id} -> n{c};");
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nested-object rendering: `{"kind":"series","children":[...]}` with
/// leaves as `{"kind":"leaf","vertex":3}`. Emitted iteratively, so trees of
/// any depth are fine.
pub fn render_record(t: &MDTree) -> String {
    enum Tok {
        Node(NodeId),
        Sep,
        Close,
    }
    let mut out = String::new();
    let mut stack = vec![Tok::Node(t.root())];
    while let Some(tok) = stack.pop() {
        match tok {
            Tok::Sep => out.push(','),
            Tok::Close => out.push_str("]}"),
            Tok::Node(id) => match t.kind(id) {
                NodeKind::Leaf(v) => {
                    let _ = write!(out, "{{\"kind\":\"leaf\",\"vertex\":{v}}}");
                }
                kind => {
                    let _ = write!(out, "{{\"kind\":\"{}\",\"children\":[", kind.name());
                    stack.push(Tok::Close);
                    for (i, &c) in t.children(id).iter().enumerate().rev() {
                        stack.push(Tok::Node(c));
                        if i > 0 {
                            stack.push(Tok::Sep);
                        }
                    }
                }
            },
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::graph::Graph;

    #[test]
    fn parses_minimal_file() {
        let text = "c a path\np 4 3\ne 0 1\ne 1 2\ne 2 3\n";
        let p = parse_graph(text, ParseMode::Strict).unwrap();
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.edge_count(), 3);
        assert!(p.labels.is_none());
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn infers_size_without_header() {
        let p = parse_graph("e 0 5\n", ParseMode::Strict).unwrap();
        assert_eq!(p.graph.vertex_count(), 6);
    }

    #[test]
    fn round_trips_with_labels() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let labels: Vec<String> = ["left", "mid", "right"].iter().map(|s| s.to_string()).collect();
        let text = render_graph(&g, Some(&labels));
        let p = parse_graph(&text, ParseMode::Strict).unwrap();
        assert_eq!(p.graph.edges(), g.edges());
        assert_eq!(p.labels.as_deref(), Some(&labels[..]));
    }

    #[test]
    fn strict_rejections_carry_line_numbers() {
        let dup = parse_graph("e 0 1\ne 1 0\n", ParseMode::Strict).unwrap_err();
        assert!(dup.to_string().contains("line 2"), "{dup}");
        let loop_ = parse_graph("e 2 2\n", ParseMode::Strict).unwrap_err();
        assert!(loop_.to_string().contains("line 1"), "{loop_}");
        let bad = parse_graph("p 2 5\ne 0 1\n", ParseMode::Strict).unwrap_err();
        assert!(matches!(bad, ParseError::EdgeCountMismatch { declared: 5, found: 1 }));
        let range = parse_graph("p 2 1\ne 0 7\n", ParseMode::Strict).unwrap_err();
        assert!(range.to_string().contains("out of range"), "{range}");
    }

    #[test]
    fn lenient_repairs_and_warns() {
        let text = "p 3 3\ne 0 1\ne 1 0\ne 2 2\n";
        let p = parse_graph(text, ParseMode::Lenient).unwrap();
        assert_eq!(p.graph.edge_count(), 1);
        assert_eq!(p.warnings.len(), 3);
    }

    #[test]
    fn rejects_unknown_tags() {
        assert!(parse_graph("x 1 2\n", ParseMode::Lenient).is_err());
    }

    #[test]
    fn record_and_dot_agree_with_tree() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = decompose(&g);
        let rec = render_record(&t);
        assert_eq!(rec.matches("\"kind\":\"leaf\"").count(), 4);
        assert_eq!(rec.matches("\"kind\":\"prime\"").count(), 1);
        let dot = render_dot(&t, None);
        // One arrow per tree edge.
        assert_eq!(dot.matches(" -> ").count(), t.node_count() - 1);
        assert!(dot.contains("label=\"P\""));
    }
}
