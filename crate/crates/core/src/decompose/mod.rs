//! Modular decomposition through one recursive pipeline.
//!
//! A stage picks the smallest vertex x of its universe as pivot and splits
//! the rest into BFS layers over x. Each layer is decomposed recursively,
//! the resulting trees are lined up as `T(N0), x, T(N1), ...` and refined
//! along the active (cross-layer) edges, marked subtrees are promoted to
//! the surface, and the resulting run sequence of co-components and
//! components is bracketed into the nested strong modules containing x.
//! Folding the brackets yields the tree of one connected component; a
//! disconnected universe is split up front and the component trees meet
//! under a single parallel root.
//!
//! Recursion depth tracks the layering structure, which sparse graphs with
//! long chains of nested modules can drive to the vertex count, so large
//! inputs run on a dedicated worker thread with a big stack. Everything
//! else here is iterative.

mod assemble;
mod delineate;
mod forest;
mod promote;
mod refine;
mod sequence;
mod trace;

pub use trace::{
    BracketTrace, DecomposeTrace, ForestSnapshot, SequenceEntry, StageCounters, StageTrace,
    TraceTree, SNAPSHOT_LIMIT,
};

use crate::graph::Graph;
use crate::tree::{MDTree, MDTreeBuilder, NodeKind};
use assemble::{assemble, merge_node};
use delineate::delineate;
use forest::{Forest, Kind, NO_NODE};
use promote::promote;
use refine::{refine_forest, RefineStats};
use sequence::{extract_sequence, mu_left, right_info, tag_components, NO_COMP};

/// Universes at least this large run on the big-stack worker thread.
const BIG_INPUT: usize = 256;
const WORKER_STACK: usize = 512 << 20;

/// Computes the modular decomposition tree of `g`.
///
/// Panics if the graph has no vertices.
pub fn decompose(g: &Graph) -> MDTree {
    run(g, false).0
}

/// Like [`decompose`], also returning the per-stage instrumentation.
pub fn decompose_traced(g: &Graph) -> (MDTree, DecomposeTrace) {
    let (t, tr) = run(g, true);
    (t, tr.expect("trace requested"))
}

fn run(g: &Graph, traced: bool) -> (MDTree, Option<DecomposeTrace>) {
    let n = g.vertex_count();
    assert!(n > 0, "decomposition needs at least one vertex");
    if n < BIG_INPUT {
        return run_here(g, traced);
    }
    std::thread::scope(|s| {
        let worker = std::thread::Builder::new()
            .name("md-worker".into())
            .stack_size(WORKER_STACK)
            .spawn_scoped(s, || run_here(g, traced))
            .expect("spawn decomposition worker");
        match worker.join() {
            Ok(r) => r,
            Err(panic) => std::panic::resume_unwind(panic),
        }
    })
}

struct Ctx<'a> {
    g: &'a Graph,
    forest: Forest,
    /// Epoch stamps shared by universe membership, BFS visits and stage
    /// membership; a fresh value per use means no clearing between stages.
    stamp: Vec<u32>,
    next_stamp: u32,
    /// BFS layer per stage vertex; the pivot holds `u32::MAX`.
    lay: Vec<u32>,
    comp_of: Vec<u32>,
    /// Index of each vertex into the current stage's member list.
    local_of: Vec<u32>,
    /// Join-count accumulator for attachment scans.
    cnt: Vec<u64>,
    /// Forest leaf of each vertex, created once per run.
    leaf_node: Vec<usize>,
    trace: Option<DecomposeTrace>,
}

impl Ctx<'_> {
    fn fresh_stamp(&mut self) -> u32 {
        self.next_stamp += 1;
        self.next_stamp
    }

    fn leaf(&mut self, v: u32) -> usize {
        let slot = &mut self.leaf_node[v as usize];
        if *slot == NO_NODE {
            *slot = self.forest.new_node(Kind::Leaf(v));
        }
        *slot
    }
}

fn run_here(g: &Graph, traced: bool) -> (MDTree, Option<DecomposeTrace>) {
    let n = g.vertex_count();
    let mut ctx = Ctx {
        g,
        forest: Forest::new(),
        stamp: vec![0; n],
        next_stamp: 0,
        lay: vec![0; n],
        comp_of: vec![0; n],
        local_of: vec![0; n],
        cnt: vec![0; n],
        leaf_node: vec![NO_NODE; n],
        trace: traced.then(DecomposeTrace::default),
    };
    let universe: Vec<u32> = (0..n as u32).collect();
    let root = md(&mut ctx, &universe, 0);
    let tree = forest_to_tree(&ctx.forest, root);
    (tree, ctx.trace)
}

/// Decomposes the induced subgraph on `universe` and returns its tree in
/// the shared forest.
fn md(ctx: &mut Ctx, universe: &[u32], depth: usize) -> usize {
    debug_assert!(!universe.is_empty());
    if universe.len() == 1 {
        return md_connected(ctx, universe, depth);
    }
    let g = ctx.g;

    // Connected components first. Chaining through a "rest of the
    // universe" instead would rescan the leftovers once per component.
    let member = ctx.fresh_stamp();
    for &v in universe {
        ctx.stamp[v as usize] = member;
    }
    let visited = ctx.fresh_stamp();
    let mut comps: Vec<(u32, Vec<u32>)> = Vec::new();
    for &start in universe {
        if ctx.stamp[start as usize] != member {
            continue;
        }
        ctx.stamp[start as usize] = visited;
        let mut queue: Vec<u32> = vec![start];
        let mut lo = start;
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            lo = lo.min(v);
            for &w in g.neighbors(v) {
                if ctx.stamp[w as usize] == member {
                    ctx.stamp[w as usize] = visited;
                    queue.push(w);
                }
            }
        }
        comps.push((lo, queue));
    }
    if comps.len() == 1 {
        return md_connected(ctx, universe, depth);
    }

    // Each component pivots on its own smallest vertex; ordering the parts
    // by that pivot keeps the overall leaf order aligned with pivot rank.
    comps.sort_unstable_by_key(|&(lo, _)| lo);
    let mut parts: Vec<usize> = Vec::with_capacity(comps.len());
    for (_, comp) in &comps {
        parts.push(md_connected(ctx, comp, depth));
    }
    merge_node(&mut ctx.forest, Kind::Parallel, &parts)
}

/// Decomposes one connected universe: BFS layers around the smallest
/// vertex, then the stage pipeline.
fn md_connected(ctx: &mut Ctx, universe: &[u32], depth: usize) -> usize {
    if universe.len() == 1 {
        let v = universe[0];
        if let Some(tr) = &mut ctx.trace {
            tr.stages.push(StageTrace {
                depth,
                pivot: v,
                universe: vec![v],
                post_promotion_leaf_order: vec![v],
                ..StageTrace::default()
            });
        }
        return ctx.leaf(v);
    }
    let g = ctx.g;
    let x = universe.iter().copied().min().unwrap();

    // BFS from x over the universe. Unvisited members keep the membership
    // stamp, visited ones move to the visit stamp.
    let member = ctx.fresh_stamp();
    for &v in universe {
        ctx.stamp[v as usize] = member;
    }
    let visited = ctx.fresh_stamp();
    ctx.stamp[x as usize] = visited;
    let mut layers: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<u32> = Vec::new();
    for &w in g.neighbors(x) {
        if ctx.stamp[w as usize] == member {
            ctx.stamp[w as usize] = visited;
            frontier.push(w);
        }
    }
    let mut reached = 1 + frontier.len();
    while !frontier.is_empty() {
        let mut next: Vec<u32> = Vec::new();
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if ctx.stamp[w as usize] == member {
                    ctx.stamp[w as usize] = visited;
                    next.push(w);
                }
            }
        }
        reached += next.len();
        layers.push(frontier);
        frontier = next;
    }
    debug_assert_eq!(reached, universe.len(), "universe must be connected");

    let layer_roots: Vec<usize> = layers.iter().map(|ly| md(ctx, ly, depth + 1)).collect();
    stage_core(ctx, x, universe, &layers, layer_roots, depth)
}

/// Refine, promote, delineate and assemble one stage whose layers are
/// already decomposed.
fn stage_core(
    ctx: &mut Ctx,
    x: u32,
    universe: &[u32],
    layers: &[Vec<u32>],
    layer_roots: Vec<usize>,
    depth: usize,
) -> usize {
    let g = ctx.g;

    // Forest roots in pivot order: first layer, pivot, later layers.
    let anchor = ctx.forest.new_anchor();
    let x_leaf = ctx.leaf(x);
    ctx.forest.push_root(anchor, layer_roots[0]);
    ctx.forest.push_root(anchor, x_leaf);
    for &r in &layer_roots[1..] {
        ctx.forest.push_root(anchor, r);
    }

    // Stage tagging. Layer recursion reused these arrays for inner stages,
    // so they are (re)written only now, after all of it has finished.
    let stage = ctx.fresh_stamp();
    let member_count = 1 + layers.iter().map(Vec::len).sum::<usize>();
    let mut members: Vec<u32> = Vec::with_capacity(member_count);
    members.push(x);
    ctx.stamp[x as usize] = stage;
    ctx.lay[x as usize] = u32::MAX;
    ctx.comp_of[x as usize] = NO_COMP;
    for (i, ly) in layers.iter().enumerate() {
        for &v in ly {
            members.push(v);
            ctx.stamp[v as usize] = stage;
            ctx.lay[v as usize] = i as u32;
        }
    }
    for (i, &v) in members.iter().enumerate() {
        ctx.local_of[v as usize] = i as u32;
    }

    let mut stack: Vec<usize> = Vec::new();
    let comps = tag_components(&ctx.forest, &layer_roots, &mut ctx.comp_of, &mut stack);

    // Active edges: stage neighbours in a different layer. The pivot's own
    // layer value makes its whole neighbourhood active.
    let mut counters = StageCounters::default();
    let mut alpha: Vec<Vec<u32>> = Vec::with_capacity(member_count);
    for &v in &members {
        let lv = ctx.lay[v as usize];
        let mut a: Vec<u32> = Vec::new();
        for &w in g.neighbors(v) {
            if ctx.stamp[w as usize] == stage && ctx.lay[w as usize] != lv {
                a.push(w);
            }
        }
        if !a.is_empty() {
            counters.vertices_with_alpha += 1;
            counters.active_edges += a.len();
        }
        alpha.push(a);
    }
    counters.active_edges /= 2;

    let pre_roots = ctx.forest.roots(anchor);
    let mut pre_leaf_order: Vec<u32> = Vec::with_capacity(member_count);
    for &r in &pre_roots {
        ctx.forest.collect_leaves(r, &mut pre_leaf_order, &mut stack);
        counters.forest_nodes += ctx.forest.subtree_size(r, &mut stack);
    }
    let snap = ctx.trace.is_some() && member_count <= SNAPSHOT_LIMIT;
    let post_recursion = snap.then(|| snapshot(&ctx.forest, &pre_roots));

    let mut rstats = RefineStats::default();
    refine_forest(
        &mut ctx.forest,
        &alpha,
        &ctx.lay,
        &ctx.local_of,
        &ctx.leaf_node,
        &pre_leaf_order,
        x,
        &mut rstats,
    );
    counters.refine_vertex_ops = rstats.vertices;
    counters.refine_calls = rstats.calls;
    counters.mark_ops = rstats.marks;

    let post_refinement = snap.then(|| {
        let roots = ctx.forest.roots(anchor);
        snapshot(&ctx.forest, &roots)
    });

    let promoted = promote(&mut ctx.forest, anchor);
    let post_promotion = snap.then(|| snapshot(&ctx.forest, &promoted));

    let seq = extract_sequence(&ctx.forest, &promoted, x, &ctx.comp_of, &comps, &mut stack);
    let ml = mu_left(&seq, &alpha, &ctx.local_of, &ctx.lay, &ctx.comp_of);
    let ri = right_info(
        &seq,
        &comps,
        &alpha,
        &ctx.local_of,
        &ctx.lay,
        &ctx.comp_of,
        &mut ctx.cnt,
    );
    let brackets = delineate(seq.left.len(), seq.right.len(), &ml, &ri);

    let x_index = seq
        .roots
        .iter()
        .position(|r| r.node == x_leaf)
        .expect("pivot leaf must be a promoted root");
    let root = assemble(&mut ctx.forest, &seq.roots, x_index, &brackets);

    if let Some(tr) = &mut ctx.trace {
        let mut entries: Vec<SequenceEntry> = Vec::with_capacity(seq.left.len() + seq.right.len() + 1);
        for i in (1..=seq.left.len()).rev() {
            let c = seq.left[i - 1] as usize;
            let (s, e) = seq.run_of[c];
            entries.push(SequenceEntry {
                position: -(i as i32),
                members: seq.leaf_order[s as usize..e as usize].to_vec(),
                layer: Some(0),
                right_edge: false,
                mu: Some(ml[i - 1]),
            });
        }
        entries.push(SequenceEntry {
            position: 0,
            members: vec![x],
            layer: None,
            right_edge: false,
            mu: None,
        });
        for j in 1..=seq.right.len() {
            let c = seq.right[j - 1] as usize;
            let (s, e) = seq.run_of[c];
            entries.push(SequenceEntry {
                position: j as i32,
                members: seq.leaf_order[s as usize..e as usize].to_vec(),
                layer: Some(ri.layer[j - 1]),
                right_edge: ri.right_edge[j - 1],
                mu: Some(ri.mu[j - 1]),
            });
        }
        tr.stages.push(StageTrace {
            depth,
            pivot: x,
            universe: universe.to_vec(),
            layers: layers.to_vec(),
            alpha: members.iter().copied().zip(alpha).collect(),
            post_recursion,
            post_refinement,
            post_promotion,
            post_promotion_leaf_order: seq.leaf_order.clone(),
            sequence: entries,
            brackets: brackets
                .iter()
                .map(|b| BracketTrace {
                    lo: b.lo,
                    hi: b.hi,
                    kind: public_kind(b.kind),
                })
                .collect(),
            counters,
        });
    }

    root
}

fn public_kind(k: Kind) -> NodeKind {
    match k {
        Kind::Leaf(v) => NodeKind::Leaf(v),
        Kind::Series => NodeKind::Series,
        Kind::Parallel => NodeKind::Parallel,
        Kind::Prime => NodeKind::Prime,
        Kind::Anchor => unreachable!("anchors never appear in trees"),
    }
}

fn snapshot(f: &Forest, roots: &[usize]) -> ForestSnapshot {
    fn build(f: &Forest, id: usize) -> TraceTree {
        TraceTree {
            kind: public_kind(f.kind[id]),
            left_marked: f.marked(id, forest::Side::Left),
            right_marked: f.marked(id, forest::Side::Right),
            children: f.children_vec(id).iter().map(|&c| build(f, c)).collect(),
        }
    }
    ForestSnapshot {
        roots: roots.iter().map(|&r| build(f, r)).collect(),
    }
}

/// Copies the finished forest tree into the public representation.
fn forest_to_tree(f: &Forest, root: usize) -> MDTree {
    let mut b = MDTreeBuilder::new();
    let mut map = vec![usize::MAX; f.kind.len()];
    let mut stack: Vec<(usize, bool)> = vec![(root, false)];
    while let Some((id, expanded)) = stack.pop() {
        if expanded {
            let kids: Vec<usize> = f.children_vec(id).iter().map(|&c| map[c]).collect();
            map[id] = b.internal(public_kind(f.kind[id]), kids);
        } else if let Kind::Leaf(v) = f.kind[id] {
            map[id] = b.leaf(v);
        } else {
            stack.push((id, true));
            let mut c = f.last_child[id];
            while c != NO_NODE {
                stack.push((c, false));
                c = f.prev_sib[c];
            }
        }
    }
    b.build(map[root])
}
