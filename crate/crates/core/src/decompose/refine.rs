//! Forest refinement: splits trees along the active edges of each vertex.
//!
//! For a refiner v and a set X of its cross-layer neighbours, the maximal
//! subtrees whose leaves all lie in X are pulled to the boundary of their
//! parent: a non-prime parent's children are regrouped into the full group
//! and the rest, ordered by which side of v's own tree the refined tree
//! lies on, while a prime parent only accumulates marks. Marks record which
//! nodes promotion may later move.
//!
//! A call costs time proportional to |X| (plus log for sibling ordering):
//! the full group of each parent falls out of the upward counting walk,
//! detaching it link by link leaves the rest of the parent in place, and
//! the parent itself then serves as the group of unfilled children.

use super::forest::{Forest, Kind, Side, NO_NODE};

#[derive(Clone, Copy, Default, Debug)]
pub(super) struct RefineStats {
    /// Vertices that issued at least one refine call.
    pub vertices: usize,
    /// Per-side refine invocations.
    pub calls: usize,
    /// Mark-bit transitions.
    pub marks: usize,
}

/// Runs every refiner in forest leaf order. `leaf_order` is the snapshot
/// taken before any splitting; the pivot never refines.
#[allow(clippy::too_many_arguments)]
pub(super) fn refine_forest(
    f: &mut Forest,
    alpha: &[Vec<u32>],
    lay: &[u32],
    local_of: &[u32],
    leaf_node: &[usize],
    leaf_order: &[u32],
    x: u32,
    stats: &mut RefineStats,
) {
    let mut xbuf: Vec<u32> = Vec::new();
    for &v in leaf_order {
        if v == x {
            continue;
        }
        let a = &alpha[local_of[v as usize] as usize];
        if a.is_empty() {
            continue;
        }
        let mut used = false;

        // Neighbours in the first layer refine from the left.
        xbuf.clear();
        xbuf.extend(a.iter().copied().filter(|&w| lay[w as usize] == 0));
        if !xbuf.is_empty() {
            refine_with_set(f, &xbuf, Side::Left, leaf_node, stats);
            stats.calls += 1;
            used = true;
        }

        // Neighbours in later layers refine toward the pivot: from the left
        // when v sits in the first layer, from the right otherwise.
        xbuf.clear();
        xbuf.extend(
            a.iter()
                .copied()
                .filter(|&w| lay[w as usize] >= 1 && lay[w as usize] != u32::MAX),
        );
        if !xbuf.is_empty() {
            let side = if lay[v as usize] == 0 { Side::Left } else { Side::Right };
            refine_with_set(f, &xbuf, side, leaf_node, stats);
            stats.calls += 1;
            used = true;
        }

        if used {
            stats.vertices += 1;
        }
    }
}

/// One refine call: X is a set of leaves (never containing the pivot).
fn refine_with_set(
    f: &mut Forest,
    x_set: &[u32],
    side: Side,
    leaf_node: &[usize],
    stats: &mut RefineStats,
) {
    // Bottom-up full counts. A node is full once every child is; each node
    // bumps its parent exactly once, at the moment it fills up.
    let mut touched: Vec<usize> = Vec::with_capacity(x_set.len());
    for &v in x_set {
        let leaf = leaf_node[v as usize];
        f.full[leaf] = 1;
        touched.push(leaf);
        let mut cur = leaf;
        loop {
            let p = f.parent[cur];
            if p == NO_NODE {
                break;
            }
            if f.full[p] == 0 {
                touched.push(p);
            }
            f.full[p] += 1;
            if f.full[p] < f.child_count[p] {
                break;
            }
            cur = p;
        }
    }

    // Group the maximal full subtrees by parent. A full root spans a tree
    // entirely inside X and needs nothing; every other maximal full node is
    // one of the full children its parent will split off.
    let mut parents: Vec<usize> = Vec::new();
    let mut full_kids: Vec<Vec<usize>> = Vec::new();
    for &n in &touched {
        if !is_full(f, n) {
            continue;
        }
        let p = f.parent[n];
        if p == NO_NODE || is_full(f, p) {
            continue;
        }
        if !f.seen[p] {
            f.seen[p] = true;
            f.slot[p] = parents.len() as u32;
            parents.push(p);
            full_kids.push(Vec::new());
        }
        full_kids[f.slot[p] as usize].push(n);
    }

    // Drop the dedup flags before splitting: a parent can sit among another
    // parent's children, and the splits must not see stale flags.
    for &p in &parents {
        f.seen[p] = false;
    }

    // Degenerate parents first, prime parents after.
    for (&p, a) in parents.iter().zip(&mut full_kids) {
        if f.kind[p] != Kind::Prime {
            split_parent(f, p, a, side, stats);
        }
    }
    for &p in &parents {
        if f.kind[p] == Kind::Prime {
            mark_prime_parent(f, p, side, stats);
        }
    }

    for n in touched {
        f.full[n] = 0;
    }
}

fn is_full(f: &Forest, n: usize) -> bool {
    if f.is_leaf(n) {
        f.full[n] == 1
    } else {
        f.full[n] == f.child_count[n]
    }
}

/// Splits a series or parallel parent into its full children A and the rest
/// B. Both groups are nonempty because the parent itself is not full. The
/// parent keeps the B side in place; only A is detached and regrouped.
fn split_parent(
    f: &mut Forest,
    p: usize,
    a: &mut [usize],
    side: Side,
    stats: &mut RefineStats,
) {
    debug_assert!(!a.is_empty() && (a.len() as u32) < f.child_count[p]);
    a.sort_unstable_by_key(|&c| f.rank[c]);
    for &c in a.iter() {
        f.detach_child(c);
    }
    let kind = f.kind[p];
    let ta = group(f, kind, a);

    if f.child_count[p] == 1 {
        // A single unfilled child is its own group; the parent dissolves.
        let tb = f.first_child[p];
        f.detach_child(tb);
        if f.is_root(p) {
            match side {
                Side::Left => f.replace_root_with_pair(p, ta, tb),
                Side::Right => f.replace_root_with_pair(p, tb, ta),
            }
            mark_once(f, ta, side, stats);
            mark_once(f, tb, side, stats);
        } else {
            let pn = f.replace_with_fresh(p, kind);
            f.marks[pn] = f.marks[p];
            match side {
                Side::Left => {
                    f.append_child(pn, ta);
                    f.append_child(pn, tb);
                }
                Side::Right => {
                    f.append_child(pn, tb);
                    f.append_child(pn, ta);
                }
            }
            mark_once(f, ta, side, stats);
            mark_once(f, tb, side, stats);
            mark_ancestors(f, pn, side, stats);
        }
    } else if f.is_root(p) {
        // The refined group goes on the side facing the refiner; the parent
        // stays behind as the group of the rest.
        match side {
            Side::Left => f.insert_root_before(p, ta),
            Side::Right => f.insert_root_after(p, ta),
        }
        mark_once(f, ta, side, stats);
        mark_once(f, p, side, stats);
    } else {
        let pn = f.replace_with_fresh(p, kind);
        f.marks[pn] = f.marks[p];
        match side {
            Side::Left => {
                f.append_child(pn, ta);
                f.append_child(pn, p);
            }
            Side::Right => {
                f.append_child(pn, p);
                f.append_child(pn, ta);
            }
        }
        mark_once(f, ta, side, stats);
        mark_once(f, p, side, stats);
        mark_ancestors(f, pn, side, stats);
    }
}

/// Wraps the sorted group under a fresh node of the parent's kind, unless
/// it is a single tree, which is kept as-is. The fresh node takes over the
/// split marks of its members: promotion pulls a marked node out only when
/// its parent shares the mark, so the marks must keep climbing with the
/// node.
fn group(f: &mut Forest, kind: Kind, members: &[usize]) -> usize {
    if let [lone] = *members {
        lone
    } else {
        let inherited = members.iter().fold(0u8, |m, &c| m | f.marks[c]) & 3;
        let node = f.new_internal(kind, members);
        f.marks[node] = inherited;
        node
    }
}

/// Prime parents are never restructured; the parent, all of its children
/// and all of its ancestors are marked instead.
fn mark_prime_parent(f: &mut Forest, p: usize, side: Side, stats: &mut RefineStats) {
    mark_once(f, p, side, stats);
    if !f.prime_children_done(p, side) {
        let mut c = f.first_child[p];
        while c != NO_NODE {
            mark_once(f, c, side, stats);
            c = f.next_sib[c];
        }
    }
    mark_ancestors(f, f.parent[p], side, stats);
}

fn mark_once(f: &mut Forest, n: usize, side: Side, stats: &mut RefineStats) {
    if f.mark(n, side) {
        stats.marks += 1;
    }
}

/// Climbs parent pointers, stopping at the first node already marked on
/// this side: marks only ever spread upward, so everything above it is done.
fn mark_ancestors(f: &mut Forest, from: usize, side: Side, stats: &mut RefineStats) {
    let mut cur = from;
    while cur != NO_NODE && f.mark(cur, side) {
        stats.marks += 1;
        cur = f.parent[cur];
    }
}
