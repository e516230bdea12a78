//! Brute-force reference implementations used to cross-check the pipeline.
//!
//! Everything here favors obviousness over speed. Two independent paths
//! produce MD trees: subset enumeration over bitmasks (n <= 16) and a direct
//! transcription of the recursive definition (components, co-components,
//! maximal proper modules). The pipeline is trusted only because it agrees
//! with these on large corpora.

use crate::graph::{Graph, VertexSet};
use crate::tree::{MDTree, MDTreeBuilder, NodeId, NodeKind};

/// True iff every vertex outside `members` is adjacent to none or all of it.
pub fn is_module(g: &Graph, members: &VertexSet) -> bool {
    for v in g.vertices() {
        if members.contains(v) {
            continue;
        }
        let hits = g
            .neighbors(v)
            .iter()
            .filter(|&&w| members.contains(w))
            .count();
        if hits != 0 && hits != members.len() {
            return false;
        }
    }
    true
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    assert!(n <= 16, "subset enumeration needs n <= 16, got {n}");
    let mut adj = vec![0u32; n];
    for (u, w) in g.edges() {
        adj[u as usize] |= 1 << w;
        adj[w as usize] |= 1 << u;
    }
    adj
}

fn mask_is_module(adj: &[u32], m: u32) -> bool {
    for (v, &av) in adj.iter().enumerate() {
        if m >> v & 1 == 1 {
            continue;
        }
        let inter = av & m;
        if inter != 0 && inter != m {
            return false;
        }
    }
    true
}

/// All nonempty modules as bitmasks, ascending. Requires n <= 16.
fn all_module_masks(g: &Graph) -> Vec<u32> {
    let adj = adjacency_masks(g);
    let full = (1u32 << g.vertex_count()) - 1;
    (1..=full).filter(|&m| mask_is_module(&adj, m)).collect()
}

fn mask_to_set(n: usize, m: u32) -> VertexSet {
    VertexSet::new(n, (0..n as u32).filter(|&v| m >> v & 1 == 1).collect())
}

/// Strong modules by exhaustive enumeration: modules that overlap no other
/// module. Sorted by (size, smallest vertex). Requires n <= 16.
pub fn strong_modules_bruteforce(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mods = all_module_masks(g);
    let mut strong: Vec<VertexSet> = mods
        .iter()
        .filter(|&&m| {
            mods.iter().all(|&o| {
                let i = m & o;
                i == 0 || i == m || i == o
            })
        })
        .map(|&m| mask_to_set(n, m))
        .collect();
    strong.sort_by_key(|s| (s.len(), s.min()));
    strong
}

fn quotient_kind(g: &Graph, reps: &[u32]) -> NodeKind {
    let mut any_edge = false;
    let mut any_gap = false;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if g.has_edge(reps[i], reps[j]) {
                any_edge = true;
            } else {
                any_gap = true;
            }
        }
    }
    match (any_edge, any_gap) {
        (true, false) => NodeKind::Series,
        (false, true) => NodeKind::Parallel,
        _ => NodeKind::Prime,
    }
}

/// MD tree via strong-module enumeration: nest the strong modules by
/// containment, then label each node by its quotient. Requires 1 <= n <= 16.
pub fn md_tree_bruteforce(g: &Graph) -> MDTree {
    let n = g.vertex_count();
    assert!(n >= 1);
    let mut strong: Vec<u32> = {
        let mods = all_module_masks(g);
        mods.iter()
            .filter(|&&m| {
                mods.iter().all(|&o| {
                    let i = m & o;
                    i == 0 || i == m || i == o
                })
            })
            .copied()
            .collect()
    };
    strong.sort_by_key(|m| m.count_ones());

    // Parent = first strict superset in popcount order; the family is
    // laminar, so that is the unique minimal one.
    let mut children_of: Vec<Vec<usize>> = vec![Vec::new(); strong.len()];
    for i in 0..strong.len() {
        for j in i + 1..strong.len() {
            if strong[j] != strong[i] && strong[j] & strong[i] == strong[i] {
                children_of[j].push(i);
                break;
            }
        }
    }

    let mut b = MDTreeBuilder::new();
    let mut node_of: Vec<NodeId> = vec![usize::MAX; strong.len()];
    for (i, &m) in strong.iter().enumerate() {
        if m.count_ones() == 1 {
            node_of[i] = b.leaf(m.trailing_zeros());
        } else {
            let kids: Vec<NodeId> = children_of[i].iter().map(|&c| node_of[c]).collect();
            let reps: Vec<u32> = children_of[i]
                .iter()
                .map(|&c| strong[c].trailing_zeros())
                .collect();
            node_of[i] = b.internal(quotient_kind(g, &reps), kids);
        }
    }
    b.build(node_of[strong.len() - 1])
}

/// Connected components of the complement graph restricted to `universe`,
/// ordered by smallest contained vertex.
fn co_components(g: &Graph, universe: &VertexSet) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for seed in universe.iter() {
        if seen[seed as usize] {
            continue;
        }
        seen[seed as usize] = true;
        let mut comp = vec![seed];
        let mut queue = vec![seed];
        while let Some(v) = queue.pop() {
            for w in universe.iter() {
                if !seen[w as usize] && w != v && !g.has_edge(v, w) {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push(w);
                }
            }
        }
        out.push(VertexSet::new(n, comp));
    }
    out
}

/// Smallest module of the subgraph induced by `universe` containing both `a`
/// and `b`: grow by absorbing any outside vertex that distinguishes the set.
fn module_closure(g: &Graph, universe: &VertexSet, a: u32, b: u32) -> Vec<u32> {
    let n = g.vertex_count();
    let mut in_set = vec![false; n];
    in_set[a as usize] = true;
    in_set[b as usize] = true;
    let mut members = vec![a, b];
    loop {
        let mut grew = false;
        for v in universe.iter() {
            if in_set[v as usize] {
                continue;
            }
            let mut seen_adj = false;
            let mut seen_gap = false;
            for &u in &members {
                if g.has_edge(v, u) {
                    seen_adj = true;
                } else {
                    seen_gap = true;
                }
                if seen_adj && seen_gap {
                    break;
                }
            }
            if seen_adj && seen_gap {
                in_set[v as usize] = true;
                members.push(v);
                grew = true;
            }
        }
        if !grew || members.len() == universe.len() {
            break;
        }
    }
    members
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(k: usize) -> Dsu {
        Dsu {
            parent: (0..k).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Partition of a prime `universe` into the maximal proper modules: two
/// vertices share a class iff their module closure stays proper.
fn maximal_proper_modules(g: &Graph, universe: &VertexSet) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let members: Vec<u32> = universe.iter().collect();
    let mut index_of = vec![usize::MAX; n];
    for (i, &v) in members.iter().enumerate() {
        index_of[v as usize] = i;
    }
    let mut dsu = Dsu::new(members.len());
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if dsu.find(i) == dsu.find(j) {
                continue;
            }
            let cl = module_closure(g, universe, members[i], members[j]);
            if cl.len() < universe.len() {
                for &v in &cl[1..] {
                    dsu.union(index_of[cl[0] as usize], index_of[v as usize]);
                }
            }
        }
    }
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); members.len()];
    for (i, &v) in members.iter().enumerate() {
        classes[dsu.find(i)].push(v);
    }
    let mut out: Vec<VertexSet> = classes
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| VertexSet::new(n, c))
        .collect();
    out.sort_by_key(|s| s.min());
    out
}

fn build_recursive(g: &Graph, universe: &VertexSet, b: &mut MDTreeBuilder) -> NodeId {
    if universe.len() == 1 {
        return b.leaf(universe.min().expect("nonempty universe"));
    }
    let comps = g.connected_components(universe);
    if comps.len() > 1 {
        let kids = comps.iter().map(|c| build_recursive(g, c, b)).collect();
        return b.internal(NodeKind::Parallel, kids);
    }
    let cocomps = co_components(g, universe);
    if cocomps.len() > 1 {
        let kids = cocomps.iter().map(|c| build_recursive(g, c, b)).collect();
        return b.internal(NodeKind::Series, kids);
    }
    let classes = maximal_proper_modules(g, universe);
    let kids = classes.iter().map(|c| build_recursive(g, c, b)).collect();
    b.internal(NodeKind::Prime, kids)
}

/// MD tree straight from the recursive definition: parallel over components,
/// series over co-components, otherwise prime over the maximal proper
/// modules. Independent of the enumeration path and usable past n = 16.
pub fn md_tree_recursive(g: &Graph) -> MDTree {
    let n = g.vertex_count();
    assert!(n >= 1);
    let mut b = MDTreeBuilder::new();
    let all = VertexSet::full(n);
    let root = build_recursive(g, &all, &mut b);
    b.build(root)
}

/// True iff every strong module of `g` occupies a contiguous block of `perm`.
pub fn is_factorizing_permutation(g: &Graph, perm: &[u32]) -> bool {
    let n = g.vertex_count();
    assert_eq!(perm.len(), n, "permutation length mismatch");
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in perm.iter().enumerate() {
        assert!(pos[v as usize] == usize::MAX, "vertex {v} repeated");
        pos[v as usize] = i;
    }
    let modules = if n <= 16 {
        strong_modules_bruteforce(g)
    } else {
        md_tree_recursive(g).strong_modules()
    };
    modules.iter().all(|m| {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for v in m.iter() {
            lo = lo.min(pos[v as usize]);
            hi = hi.max(pos[v as usize]);
        }
        hi - lo + 1 == m.len()
    })
}
