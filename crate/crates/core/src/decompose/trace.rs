//! Instrumentation for the decomposition pipeline.
//!
//! Tracing records, per recursion stage, the BFS layering, the active-edge
//! lists, the component sequence with attachment data, the chosen brackets
//! and the work counters. Forest snapshots are nested value trees and are
//! only captured for small stages so tracing stays usable on big inputs.

use std::fmt;

use crate::tree::NodeKind;

/// Stages with universes up to this size get forest snapshots.
pub const SNAPSHOT_LIMIT: usize = 4096;

/// Counters for one stage, exposed so tests can hold the per-stage work to
/// the budgets the design promises.
#[derive(Clone, Copy, Default, Debug)]
pub struct StageCounters {
    /// Stage vertices with at least one active edge.
    pub vertices_with_alpha: usize,
    /// Vertices that issued refinement work.
    pub refine_vertex_ops: usize,
    /// Individual per-side refine calls.
    pub refine_calls: usize,
    /// Mark-bit transitions during refinement.
    pub mark_ops: usize,
    /// Forest nodes at the start of refinement.
    pub forest_nodes: usize,
    /// Cross-layer edges inside the stage.
    pub active_edges: usize,
}

/// One tree of a forest snapshot.
#[derive(Clone, Debug)]
pub struct TraceTree {
    pub kind: NodeKind,
    pub left_marked: bool,
    pub right_marked: bool,
    pub children: Vec<TraceTree>,
}

impl TraceTree {
    pub fn leaves(&self, out: &mut Vec<u32>) {
        if let NodeKind::Leaf(v) = self.kind {
            out.push(v);
        }
        for c in &self.children {
            c.leaves(out);
        }
    }
}

#[derive(Clone, Debug)]
pub struct ForestSnapshot {
    pub roots: Vec<TraceTree>,
}

impl ForestSnapshot {
    pub fn leaf_order(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for r in &self.roots {
            r.leaves(&mut out);
        }
        out
    }
}

fn write_tree(t: &TraceTree, out: &mut String) {
    let marks = match (t.left_marked, t.right_marked) {
        (false, false) => "",
        (true, false) => "!L",
        (false, true) => "!R",
        (true, true) => "!LR",
    };
    match t.kind {
        NodeKind::Leaf(v) => {
            out.push_str(&v.to_string());
            out.push_str(marks);
        }
        ref k => {
            out.push('(');
            out.push_str(k.name());
            out.push_str(marks);
            for c in &t.children {
                out.push(' ');
                write_tree(c, out);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for ForestSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            write_tree(r, &mut s);
        }
        f.write_str(&s)
    }
}

/// One run of the component sequence, ordered by position.
#[derive(Clone, Debug)]
pub struct SequenceEntry {
    /// Signed distance from the pivot; the pivot itself is position 0.
    pub position: i32,
    pub members: Vec<u32>,
    /// BFS layer of the component; `None` for the pivot entry.
    pub layer: Option<u32>,
    pub right_edge: bool,
    /// Attachment position; `None` for the pivot entry.
    pub mu: Option<i32>,
}

#[derive(Clone, Copy, Debug)]
pub struct BracketTrace {
    pub lo: i32,
    pub hi: i32,
    pub kind: NodeKind,
}

/// Everything one stage did. A single-vertex universe produces a
/// degenerate stage where only `pivot`, `universe` and the leaf order are
/// meaningful.
#[derive(Clone, Debug, Default)]
pub struct StageTrace {
    pub depth: usize,
    pub pivot: u32,
    pub universe: Vec<u32>,
    pub layers: Vec<Vec<u32>>,
    /// Active-edge lists, one `(vertex, neighbours)` pair per stage vertex.
    pub alpha: Vec<(u32, Vec<u32>)>,
    pub post_recursion: Option<ForestSnapshot>,
    pub post_refinement: Option<ForestSnapshot>,
    pub post_promotion: Option<ForestSnapshot>,
    pub post_promotion_leaf_order: Vec<u32>,
    pub sequence: Vec<SequenceEntry>,
    pub brackets: Vec<BracketTrace>,
    pub counters: StageCounters,
}

#[derive(Clone, Debug, Default)]
pub struct DecomposeTrace {
    /// Stages in completion order: a stage's layer recursions come first.
    pub stages: Vec<StageTrace>,
}

impl DecomposeTrace {
    /// Concatenated promoted leaf orders of the outermost stages. This
    /// visits every vertex once and is a factorizing permutation of the
    /// input graph.
    pub fn top_level_order(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for s in &self.stages {
            if s.depth == 0 {
                out.extend(&s.post_promotion_leaf_order);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            render_stage(s, &mut out);
        }
        out
    }
}

fn list(vs: &[u32]) -> String {
    let strs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    strs.join(" ")
}

fn render_stage(s: &StageTrace, out: &mut String) {
    use std::fmt::Write;
    let pad = "  ".repeat(s.depth);
    let _ = writeln!(out, "{pad}stage depth={} pivot={} universe=[{}]", s.depth, s.pivot, list(&s.universe));
    for (i, ly) in s.layers.iter().enumerate() {
        let _ = writeln!(out, "{pad}  layer {i}: [{}]", list(ly));
    }
    for (v, a) in &s.alpha {
        if !a.is_empty() {
            let _ = writeln!(out, "{pad}  alpha({v}) = [{}]", list(a));
        }
    }
    for (name, snap) in [
        ("post-recursion", &s.post_recursion),
        ("post-refinement", &s.post_refinement),
        ("post-promotion", &s.post_promotion),
    ] {
        if let Some(sn) = snap {
            let _ = writeln!(out, "{pad}  {name}: {sn}");
        }
    }
    for e in &s.sequence {
        let mu = e.mu.map_or(String::new(), |m| format!(" mu={m}"));
        let ly = e.layer.map_or(String::new(), |l| format!(" layer={l}"));
        let re = if e.right_edge { " right-edge" } else { "" };
        let _ = writeln!(
            out,
            "{pad}  seq {:+}: [{}]{ly}{mu}{re}",
            e.position,
            list(&e.members)
        );
    }
    for b in &s.brackets {
        let _ = writeln!(out, "{pad}  bracket [{}, {:+}] {}", b.lo, b.hi, b.kind.name());
    }
    let c = &s.counters;
    if c.forest_nodes > 0 {
        let _ = writeln!(
            out,
            "{pad}  work: alpha-vertices={} refine-vertices={} refine-calls={} marks={} nodes={} active-edges={}",
            c.vertices_with_alpha, c.refine_vertex_ops, c.refine_calls, c.mark_ops, c.forest_nodes, c.active_edges
        );
    }
}
