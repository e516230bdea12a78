//! Seeded graph generators used by tests, benchmarks and the CLI.
//!
//! Everything here is deterministic for a given seed: the RNG is ChaCha8
//! seeded directly with the `u64`, so corpora are reproducible across
//! machines and releases.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::tree::{MDTree, MDTreeBuilder, NodeKind};

/// Erdos-Renyi G(n, p) by geometric gap sampling over the C(n, 2) vertex
/// pairs in lexicographic order, so the cost is O(n + m) rather than
/// O(n^2).
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!(p.is_finite(), "edge probability must be finite");
    let mut edges: Vec<(u32, u32)> = Vec::new();
    if n >= 2 && p > 0.0 {
        if p >= 1.0 {
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    edges.push((u, v));
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let log_q = (1.0 - p).ln();
            // Row u holds pairs (u, u+1..n); `col` walks inside the row.
            let mut u = 0usize;
            let mut col = 0usize;
            loop {
                let f: f64 = rng.random();
                let gap = ((1.0 - f).ln() / log_q).floor() as usize;
                col += gap;
                while u < n - 1 && col >= n - 1 - u {
                    col -= n - 1 - u;
                    u += 1;
                }
                if u >= n - 1 {
                    break;
                }
                edges.push((u as u32, (u + 1 + col) as u32));
                col += 1;
                while u < n - 1 && col >= n - 1 - u {
                    col -= n - 1 - u;
                    u += 1;
                }
                if u >= n - 1 {
                    break;
                }
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are simple")
}

/// A random cograph together with its decomposition tree.
///
/// The cotree alternates series and parallel levels strictly, every
/// internal node has at least two children, and leaves are numbered in
/// depth-first order. Series nodes split lopsidedly, one big part plus a
/// couple of tiny ones: series levels contribute a complete join between
/// their parts, and balanced joins would bury large instances in edges.
/// Parallel nodes split uniformly, which keeps the expected depth
/// logarithmic. The returned tree is the graph's modular decomposition:
/// for cographs the strict alternation makes every cotree node a strong
/// module.
pub fn gen_random_cograph(n: usize, seed: u64) -> (Graph, MDTree) {
    assert!(n >= 1, "cograph needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Plan the cotree top-down: each slot owns a contiguous id range.
    struct Slot {
        kind: NodeKind,
        start: u32,
        size: u32,
        children: Vec<usize>,
    }
    let root_kind = if rng.random::<bool>() { NodeKind::Series } else { NodeKind::Parallel };
    let mut slots: Vec<Slot> = vec![Slot {
        kind: if n == 1 { NodeKind::Leaf(0) } else { root_kind },
        start: 0,
        size: n as u32,
        children: Vec::new(),
    }];
    let mut work: Vec<usize> = vec![0];
    while let Some(si) = work.pop() {
        let (kind, start, size) = (slots[si].kind, slots[si].start, slots[si].size);
        if matches!(kind, NodeKind::Leaf(_)) {
            continue;
        }
        let parts = split(&mut rng, kind, size);
        let child_kind = |sz: u32, at: u32| -> NodeKind {
            if sz == 1 {
                NodeKind::Leaf(at)
            } else if kind == NodeKind::Series {
                NodeKind::Parallel
            } else {
                NodeKind::Series
            }
        };
        let mut at = start;
        for sz in parts {
            let child = slots.len();
            slots.push(Slot {
                kind: child_kind(sz, at),
                start: at,
                size: sz,
                children: Vec::new(),
            });
            slots[si].children.push(child);
            work.push(child);
            at += sz;
        }
        debug_assert_eq!(at, start + size);
    }

    // Edges: every series node joins its parts completely; contiguous id
    // ranges make that a few nested loops.
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for s in &slots {
        if s.kind != NodeKind::Series {
            continue;
        }
        for (i, &a) in s.children.iter().enumerate() {
            for &b in &s.children[i + 1..] {
                let (sa, ea) = (slots[a].start, slots[a].start + slots[a].size);
                let (sb, eb) = (slots[b].start, slots[b].start + slots[b].size);
                for u in sa..ea {
                    for v in sb..eb {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let g = Graph::new(n, &edges).expect("cotree edges are simple");

    // Mirror the slots into the public tree, children before parents.
    let mut b = MDTreeBuilder::new();
    let mut node_of = vec![usize::MAX; slots.len()];
    for (i, s) in slots.iter().enumerate().rev() {
        node_of[i] = match s.kind {
            NodeKind::Leaf(v) => b.leaf(v),
            k => b.internal(k, s.children.iter().map(|&c| node_of[c]).collect()),
        };
    }
    (g, b.build(node_of[0]))
}

/// Splits `size` into parts for one cotree node. Series nodes get one
/// dominant part, parallel nodes a uniform composition; every part is
/// nonempty and there are always at least two.
fn split(rng: &mut ChaCha8Rng, kind: NodeKind, size: u32) -> Vec<u32> {
    debug_assert!(size >= 2);
    let max_parts = size.min(5);
    let parts = rng.random_range(2..=max_parts);
    let mut out: Vec<u32> = Vec::with_capacity(parts as usize);
    if kind == NodeKind::Series && size > 2 * parts {
        // Tiny minor parts, one major remainder.
        let mut used = 0;
        for _ in 1..parts {
            let sz = rng.random_range(1..=2u32);
            out.push(sz);
            used += sz;
        }
        out.push(size - used);
    } else {
        // Uniform composition: distinct cut points.
        let mut cuts: Vec<u32> = Vec::with_capacity(parts as usize - 1);
        while cuts.len() < parts as usize - 1 {
            let c = rng.random_range(1..size);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(size - prev);
    }
    let pos = rng.random_range(0..out.len());
    out.swap(0, pos);
    out
}
