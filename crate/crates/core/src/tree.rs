//! The modular decomposition tree and its validator.

use crate::graph::{Graph, VertexSet};
use std::fmt;

pub type NodeId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeKind {
    Leaf(u32),
    Series,
    Parallel,
    Prime,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Leaf(_) => "leaf",
            NodeKind::Series => "series",
            NodeKind::Parallel => "parallel",
            NodeKind::Prime => "prime",
        }
    }
}

/// Immutable rooted ordered tree whose leaves are the vertices `0..n`.
///
/// Node spans (the sets of descendant leaves) are cached as ranges over a
/// depth-first leaf ordering, so membership data costs O(1) per node.
#[derive(Clone)]
pub struct MDTree {
    kinds: Vec<NodeKind>,
    children: Vec<Vec<NodeId>>,
    parent: Vec<Option<NodeId>>,
    root: NodeId,
    leaf_order: Vec<u32>,
    span: Vec<(u32, u32)>,
    min_leaf: Vec<u32>,
    leaf_of_vertex: Vec<NodeId>,
}

impl MDTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.kinds[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id]
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        matches!(self.kinds[id], NodeKind::Leaf(_))
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.kinds.len()
    }

    /// Number of leaves, i.e. the vertex count of the decomposed graph.
    pub fn leaf_count(&self) -> usize {
        self.leaf_order.len()
    }

    pub fn leaf_node(&self, v: u32) -> NodeId {
        self.leaf_of_vertex[v as usize]
    }

    pub fn span_size(&self, id: NodeId) -> usize {
        let (a, b) = self.span[id];
        (b - a) as usize
    }

    /// Descendant leaves in depth-first order.
    pub fn span_leaves(&self, id: NodeId) -> &[u32] {
        let (a, b) = self.span[id];
        &self.leaf_order[a as usize..b as usize]
    }

    pub fn min_leaf(&self, id: NodeId) -> u32 {
        self.min_leaf[id]
    }

    pub fn leaf_span(&self, id: NodeId) -> VertexSet {
        VertexSet::new(self.leaf_order.len(), self.span_leaves(id).to_vec())
    }

    /// Node spans sorted by (size, smallest vertex). For a valid tree these
    /// are exactly the strong modules of the decomposed graph.
    pub fn strong_modules(&self) -> Vec<VertexSet> {
        let mut spans: Vec<VertexSet> = self.node_ids().map(|id| self.leaf_span(id)).collect();
        spans.sort_by_key(|s| (s.len(), s.min()));
        spans
    }

    /// Canonical form: leaves print their vertex id, internal nodes print
    /// `(kind child ...)` with children ordered by smallest descendant leaf.
    /// Two trees are isomorphic as MD trees iff their strings are equal.
    pub fn canonical_string(&self) -> String {
        enum Tok {
            Node(NodeId),
            Space,
            Close,
        }
        let mut out = String::new();
        let mut stack = vec![Tok::Node(self.root)];
        while let Some(tok) = stack.pop() {
            match tok {
                Tok::Space => out.push(' '),
                Tok::Close => out.push(')'),
                Tok::Node(id) => match self.kinds[id] {
                    NodeKind::Leaf(v) => out.push_str(&v.to_string()),
                    kind => {
                        let mut kids: Vec<NodeId> = self.children[id].clone();
                        kids.sort_by_key(|&c| self.min_leaf[c]);
                        out.push('(');
                        out.push_str(kind.name());
                        stack.push(Tok::Close);
                        for &c in kids.iter().rev() {
                            stack.push(Tok::Node(c));
                            stack.push(Tok::Space);
                        }
                    }
                },
            }
        }
        out
    }

    fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.kinds.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            for &c in &self.children[id] {
                depth[c] = depth[id] + 1;
                stack.push(c);
            }
        }
        depth
    }

    fn lca(&self, depth: &[u32], mut a: NodeId, mut b: NodeId) -> NodeId {
        while depth[a] > depth[b] {
            a = self.parent[a].unwrap();
        }
        while depth[b] > depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }
}

impl fmt::Display for MDTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for MDTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MDTree({self})")
    }
}

/// Incremental construction of an [`MDTree`].
pub struct MDTreeBuilder {
    kinds: Vec<NodeKind>,
    children: Vec<Vec<NodeId>>,
}

impl MDTreeBuilder {
    pub fn new() -> MDTreeBuilder {
        MDTreeBuilder {
            kinds: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn leaf(&mut self, v: u32) -> NodeId {
        self.kinds.push(NodeKind::Leaf(v));
        self.children.push(Vec::new());
        self.kinds.len() - 1
    }

    pub fn internal(&mut self, kind: NodeKind, children: Vec<NodeId>) -> NodeId {
        assert!(!matches!(kind, NodeKind::Leaf(_)));
        assert!(children.len() >= 2, "internal node needs >= 2 children");
        self.kinds.push(kind);
        self.children.push(children);
        self.kinds.len() - 1
    }

    /// Finalizes the tree. Leaf vertex ids must be exactly `0..#leaves`.
    pub fn build(self, root: NodeId) -> MDTree {
        let n_nodes = self.kinds.len();
        let mut parent = vec![None; n_nodes];
        let mut leaf_order = Vec::new();
        let mut span = vec![(0u32, 0u32); n_nodes];
        let mut min_leaf = vec![u32::MAX; n_nodes];

        // Pre visit records the span start, post visit closes it and folds
        // in the minimum leaf; both without recursion.
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                span[id].1 = leaf_order.len() as u32;
                if let NodeKind::Leaf(v) = self.kinds[id] {
                    leaf_order.push(v);
                    span[id].1 += 1;
                    min_leaf[id] = v;
                } else {
                    min_leaf[id] = self.children[id]
                        .iter()
                        .map(|&c| min_leaf[c])
                        .min()
                        .expect("internal node without children");
                }
            } else {
                span[id].0 = leaf_order.len() as u32;
                stack.push((id, true));
                for &c in self.children[id].iter().rev() {
                    assert!(parent[c].is_none(), "node {c} attached twice");
                    parent[c] = Some(id);
                    stack.push((c, false));
                }
            }
        }

        let n = leaf_order.len();
        let mut leaf_of_vertex = vec![usize::MAX; n];
        for id in 0..n_nodes {
            if let NodeKind::Leaf(v) = self.kinds[id] {
                assert!((v as usize) < n, "leaf ids must be dense 0..n");
                assert!(
                    leaf_of_vertex[v as usize] == usize::MAX,
                    "duplicate leaf {v}"
                );
                leaf_of_vertex[v as usize] = id;
            }
        }

        MDTree {
            kinds: self.kinds,
            children: self.children,
            parent,
            root,
            leaf_order,
            span,
            min_leaf,
            leaf_of_vertex,
        }
    }
}

impl Default for MDTreeBuilder {
    fn default() -> Self {
        MDTreeBuilder::new()
    }
}

/// One failed validation check.
#[derive(Debug, Clone)]
pub struct Violation {
    pub node: NodeId,
    pub message: String,
}

/// Outcome of [`validate`]; empty means the tree is the MD tree data the
/// checks can certify for the given graph.
#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, node: NodeId, message: String) {
        self.violations.push(Violation { node, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "node {}: {}", v.node, v.message)?;
        }
        Ok(())
    }
}

/// Checks that `t` is a structurally sound MD tree for `g`:
/// leaves are in bijection with vertices, internal nodes have >= 2 children
/// and alternate kinds (no series-series or parallel-parallel edges), every
/// node span is a module, series/parallel quotients are complete/edgeless,
/// and prime quotients contain no nontrivial module.
pub fn validate(t: &MDTree, g: &Graph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.vertex_count();

    let mut sorted_leaves: Vec<u32> = t.leaf_order.clone();
    sorted_leaves.sort_unstable();
    if sorted_leaves != (0..n as u32).collect::<Vec<_>>() {
        report.push(
            t.root(),
            format!("leaves are not exactly the vertices 0..{n}"),
        );
        return report;
    }

    for id in t.node_ids() {
        if t.is_leaf(id) {
            continue;
        }
        if t.children(id).len() < 2 {
            report.push(id, "internal node with fewer than 2 children".into());
        }
        if let Some(p) = t.parent(id) {
            let k = t.kind(id);
            if k == t.kind(p) && matches!(k, NodeKind::Series | NodeKind::Parallel) {
                report.push(id, format!("{} node nested under {}", k.name(), k.name()));
            }
        }
        if t.kind(id) == NodeKind::Prime && t.children(id).len() < 4 {
            report.push(id, "prime node with fewer than 4 children".into());
        }
    }

    let depth = t.depths();

    // Module check: for every vertex v and internal node A with v outside
    // span(A), v must be adjacent to none or all of span(A). Each edge (v,w)
    // charges the ancestors of w up to the first one containing v.
    let mut stamp = vec![u32::MAX; t.node_count()];
    let mut adj_count = vec![0u32; t.node_count()];
    let mut touched: Vec<NodeId> = Vec::new();
    for v in 0..n as u32 {
        let mut a = Some(t.leaf_node(v));
        while let Some(id) = a {
            stamp[id] = v;
            a = t.parent(id);
        }
        for &w in g.neighbors(v) {
            let mut node = t.parent(t.leaf_node(w));
            while let Some(id) = node {
                if stamp[id] == v {
                    break;
                }
                if adj_count[id] == 0 {
                    touched.push(id);
                }
                adj_count[id] += 1;
                node = t.parent(id);
            }
        }
        for &id in &touched {
            if (adj_count[id] as usize) < t.span_size(id) {
                report.push(
                    id,
                    format!(
                        "span is not a module: vertex {v} sees {} of {} members",
                        adj_count[id],
                        t.span_size(id)
                    ),
                );
            }
            adj_count[id] = 0;
        }
        touched.clear();
    }

    // Kind checks via edge LCAs: an edge whose endpoints' LCA is parallel
    // violates parallel; series nodes must own exactly the complete-join
    // edge count between their children.
    let mut lca_edges = vec![0u64; t.node_count()];
    for (u, w) in g.edges() {
        let a = t.lca(&depth, t.leaf_node(u), t.leaf_node(w));
        lca_edges[a] += 1;
        if t.kind(a) == NodeKind::Parallel {
            report.push(a, format!("parallel node but edge ({u}, {w}) inside it"));
        }
    }
    for id in t.node_ids() {
        if t.kind(id) != NodeKind::Series {
            continue;
        }
        let total: u64 = t.span_size(id) as u64;
        let sq_sum: u64 = t
            .children(id)
            .iter()
            .map(|&c| (t.span_size(c) as u64).pow(2))
            .sum();
        let required = (total * total - sq_sum) / 2;
        if lca_edges[id] != required {
            report.push(
                id,
                format!(
                    "series node with {} own edges, complete join needs {required}",
                    lca_edges[id]
                ),
            );
        }
    }

    // Prime quotients must have no module of size in 2..#children. The
    // quotient is probed through child representatives; with the span
    // checks above already passed, any member stands for its whole child.
    for id in t.node_ids() {
        if t.kind(id) != NodeKind::Prime {
            continue;
        }
        let reps: Vec<u32> = t.children(id).iter().map(|&c| t.min_leaf(c)).collect();
        if let Some(module) = quotient_module(g, &reps) {
            report.push(
                id,
                format!("prime node whose quotient has a nontrivial module {module:?}"),
            );
        }
    }

    report
}

/// Finds a nontrivial module of the quotient graph on `reps`, if any, by
/// growing the module closure of every rep pair. Exhaustive by design; the
/// cost grows steeply with the number of children, which keeps this
/// honest as an oracle but slow on huge prime nodes.
fn quotient_module(g: &Graph, reps: &[u32]) -> Option<Vec<usize>> {
    let k = reps.len();
    for a in 0..k {
        for b in a + 1..k {
            let mut in_set = vec![false; k];
            in_set[a] = true;
            in_set[b] = true;
            let mut size = 2;
            let mut changed = true;
            while changed && size < k {
                changed = false;
                for v in 0..k {
                    if in_set[v] {
                        continue;
                    }
                    let mut seen_adj = false;
                    let mut seen_non = false;
                    for u in 0..k {
                        if in_set[u] {
                            if g.has_edge(reps[v], reps[u]) {
                                seen_adj = true;
                            } else {
                                seen_non = true;
                            }
                        }
                    }
                    if seen_adj && seen_non {
                        in_set[v] = true;
                        size += 1;
                        changed = true;
                    }
                }
            }
            if size < k {
                return Some((0..k).filter(|&v| in_set[v]).collect());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_tree() -> MDTree {
        let mut b = MDTreeBuilder::new();
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let l2 = b.leaf(2);
        let root = b.internal(NodeKind::Series, vec![l2, l0, l1]);
        b.build(root)
    }

    #[test]
    fn canonical_sorts_children_by_min_leaf() {
        assert_eq!(k3_tree().canonical_string(), "(series 0 1 2)");
    }

    #[test]
    fn canonical_single_leaf() {
        let mut b = MDTreeBuilder::new();
        let l = b.leaf(0);
        let t = b.build(l);
        assert_eq!(t.canonical_string(), "0");
        assert_eq!(t.node_count(), 1);
    }

    #[test]
    fn canonical_nested() {
        let mut b = MDTreeBuilder::new();
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let l2 = b.leaf(2);
        let inner = b.internal(NodeKind::Parallel, vec![l2, l0]);
        let root = b.internal(NodeKind::Series, vec![inner, l1]);
        let t = b.build(root);
        assert_eq!(t.canonical_string(), "(series (parallel 0 2) 1)");
        assert_eq!(t.span_leaves(inner), &[2, 0]);
        assert_eq!(t.min_leaf(inner), 0);
    }

    #[test]
    fn strong_modules_are_node_spans() {
        let t = k3_tree();
        let mods = t.strong_modules();
        let as_vecs: Vec<Vec<u32>> = mods.iter().map(|m| m.as_slice().to_vec()).collect();
        assert_eq!(as_vecs, vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]);
    }

    #[test]
    fn validate_accepts_k3_series() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let report = validate(&k3_tree(), &g);
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn validate_accepts_single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        let mut b = MDTreeBuilder::new();
        let l = b.leaf(0);
        let t = b.build(l);
        assert!(validate(&t, &g).is_valid());
    }

    #[test]
    fn validate_rejects_parallel_over_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut b = MDTreeBuilder::new();
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let root = b.internal(NodeKind::Parallel, vec![l0, l1]);
        let t = b.build(root);
        let report = validate(&t, &g);
        assert!(!report.is_valid());
        assert!(report.violations[0].message.contains("parallel"));
    }

    #[test]
    fn validate_rejects_non_module_span() {
        // P4 with a fake series pair {1,2}: vertex 0 sees 1 but not 2.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut b = MDTreeBuilder::new();
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let l2 = b.leaf(2);
        let l3 = b.leaf(3);
        let pair = b.internal(NodeKind::Series, vec![l1, l2]);
        let root = b.internal(NodeKind::Prime, vec![l0, pair, l3]);
        let t = b.build(root);
        let report = validate(&t, &g);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("not a module")));
    }

    #[test]
    fn validate_accepts_p4_prime() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut b = MDTreeBuilder::new();
        let leaves: Vec<NodeId> = (0..4).map(|v| b.leaf(v)).collect();
        let root = b.internal(NodeKind::Prime, leaves);
        let t = b.build(root);
        assert!(validate(&t, &g).is_valid());
    }

    #[test]
    fn validate_rejects_prime_over_cograph() {
        // K4's quotient is complete, so a flat prime root must be refused.
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut b = MDTreeBuilder::new();
        let leaves: Vec<NodeId> = (0..4).map(|v| b.leaf(v)).collect();
        let root = b.internal(NodeKind::Prime, leaves);
        let t = b.build(root);
        assert!(!validate(&t, &g).is_valid());
    }

    #[test]
    fn validate_rejects_same_kind_nesting() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut b = MDTreeBuilder::new();
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let l2 = b.leaf(2);
        let inner = b.internal(NodeKind::Series, vec![l0, l1]);
        let root = b.internal(NodeKind::Series, vec![inner, l2]);
        let t = b.build(root);
        let report = validate(&t, &g);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("nested")));
    }
}
