//! Co-component/component sequence around the pivot, with the attachment
//! values that drive delineation.
//!
//! Components are tagged on the recursively computed layer trees before
//! refinement: co-components of the first layer are the children of a
//! series root (otherwise the whole layer), components of later layers the
//! children of a parallel root. After promotion the leaf order groups each
//! component into one consecutive run; runs left of the pivot take
//! positions -1, -2, ... outward and runs right of it +1, +2, ...

use super::forest::{Forest, Kind};

pub(super) const NO_COMP: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(super) struct Comp {
    pub layer: u32,
    pub size: u32,
}

/// Tags `comp_of` for every vertex under the layer roots; the pivot keeps
/// `NO_COMP`. Returns component metadata in tagging order.
pub(super) fn tag_components(
    f: &Forest,
    layer_roots: &[usize],
    comp_of: &mut [u32],
    stack: &mut Vec<usize>,
) -> Vec<Comp> {
    let mut comps: Vec<Comp> = Vec::new();
    let mut leaves: Vec<u32> = Vec::new();
    for (i, &root) in layer_roots.iter().enumerate() {
        let split = match (i, f.kind[root]) {
            (0, Kind::Series) => true,
            (0, _) => false,
            (_, Kind::Parallel) => true,
            _ => false,
        };
        let branches: Vec<usize> = if split {
            f.children_vec(root)
        } else {
            vec![root]
        };
        for b in branches {
            let id = comps.len() as u32;
            leaves.clear();
            f.collect_leaves(b, &mut leaves, stack);
            for &v in &leaves {
                comp_of[v as usize] = id;
            }
            comps.push(Comp {
                layer: i as u32,
                size: leaves.len() as u32,
            });
        }
    }
    comps
}

/// One tree of the promoted forest with the positions it covers.
#[derive(Clone, Copy, Debug)]
pub(super) struct RootSpan {
    pub node: usize,
    pub lo: i32,
    pub hi: i32,
}

pub(super) struct Sequence {
    /// Left components by distance from the pivot: `left[i]` is C_{i+1}.
    pub left: Vec<u32>,
    /// Right components: `right[j]` is C'_{j+1}.
    pub right: Vec<u32>,
    /// Signed position of each component id.
    pub pos_of: Vec<i32>,
    /// Run of each component id in `leaf_order` (start, end).
    pub run_of: Vec<(u32, u32)>,
    pub leaf_order: Vec<u32>,
    pub roots: Vec<RootSpan>,
}

/// Reads the promoted forest into the position sequence. Panics if some
/// component fails to form one consecutive run, which signals a pipeline
/// bug upstream.
pub(super) fn extract_sequence(
    f: &Forest,
    promoted: &[usize],
    x: u32,
    comp_of: &[u32],
    comps: &[Comp],
    stack: &mut Vec<usize>,
) -> Sequence {
    let mut leaf_order: Vec<u32> = Vec::new();
    let mut root_ranges: Vec<(usize, u32, u32)> = Vec::with_capacity(promoted.len());
    for &r in promoted {
        let start = leaf_order.len() as u32;
        f.collect_leaves(r, &mut leaf_order, stack);
        root_ranges.push((r, start, leaf_order.len() as u32));
    }

    // Group into runs; the pivot is its own run.
    let mut runs: Vec<(u32, u32, u32)> = Vec::new();
    for (i, &v) in leaf_order.iter().enumerate() {
        let c = comp_of[v as usize];
        match runs.last_mut() {
            Some(&mut (rc, _, ref mut end)) if rc == c && c != NO_COMP => *end += 1,
            _ => runs.push((c, i as u32, i as u32 + 1)),
        }
    }

    let x_run = runs
        .iter()
        .position(|&(c, s, _)| c == NO_COMP && leaf_order[s as usize] == x)
        .expect("pivot missing from promoted forest");

    let mut pos_of = vec![0i32; comps.len()];
    let mut run_of = vec![(0u32, 0u32); comps.len()];
    let mut seen = vec![false; comps.len()];
    let mut left: Vec<u32> = Vec::new();
    let mut right: Vec<u32> = Vec::new();
    for (k, &(c, s, e)) in runs.iter().enumerate() {
        if k == x_run {
            continue;
        }
        assert!(
            c != NO_COMP && !seen[c as usize] && e - s == comps[c as usize].size,
            "component split across the promoted forest"
        );
        seen[c as usize] = true;
        run_of[c as usize] = (s, e);
        if k < x_run {
            pos_of[c as usize] = -((x_run - k) as i32);
        } else {
            pos_of[c as usize] = (k - x_run) as i32;
        }
    }
    for (k, &(c, ..)) in runs.iter().enumerate() {
        if k < x_run {
            left.push(runs[x_run - 1 - k].0);
        }
        if k > x_run {
            right.push(c);
        }
    }

    // Position span of each promoted tree, the pivot leaf spanning 0.
    let pos_at = |i: u32| -> i32 {
        let v = leaf_order[i as usize];
        let c = comp_of[v as usize];
        if c == NO_COMP { 0 } else { pos_of[c as usize] }
    };
    let roots = root_ranges
        .into_iter()
        .map(|(node, s, e)| RootSpan {
            node,
            lo: pos_at(s),
            hi: pos_at(e - 1),
        })
        .collect();

    Sequence {
        left,
        right,
        pos_of,
        run_of,
        leaf_order,
        roots,
    }
}

pub(super) struct RightInfo {
    /// Attachment position of each C'_j (0 when the first layer sees all
    /// of it as one block from every co-component).
    pub mu: Vec<i32>,
    pub layer: Vec<u32>,
    /// Whether the component has an active edge into a strictly later layer.
    pub right_edge: Vec<bool>,
}

/// mu of each left co-component C_i: the rightmost position it sends an
/// active edge to.
pub(super) fn mu_left(
    seq: &Sequence,
    alpha: &[Vec<u32>],
    local_of: &[u32],
    lay: &[u32],
    comp_of: &[u32],
) -> Vec<i32> {
    let mut mu = vec![0i32; seq.left.len()];
    for (i, &c) in seq.left.iter().enumerate() {
        let (s, e) = seq.run_of[c as usize];
        let mut best = 0i32;
        for &v in &seq.leaf_order[s as usize..e as usize] {
            for &w in &alpha[local_of[v as usize] as usize] {
                if lay[w as usize] != u32::MAX && lay[w as usize] >= 1 {
                    best = best.max(seq.pos_of[comp_of[w as usize] as usize]);
                }
            }
        }
        mu[i] = best;
    }
    mu
}

/// Attachment data for each right component C'_j. mu is found by scanning
/// co-components from the outermost inward and stopping at the first that
/// is not joined to all of C'_j; the edge counts make each probe cost no
/// more than the active edges it is charged against.
#[allow(clippy::too_many_arguments)]
pub(super) fn right_info(
    seq: &Sequence,
    comps: &[Comp],
    alpha: &[Vec<u32>],
    local_of: &[u32],
    lay: &[u32],
    comp_of: &[u32],
    cnt: &mut [u64],
) -> RightInfo {
    let kappa = seq.left.len();
    let mut mu = vec![0i32; seq.right.len()];
    let mut layer = vec![0u32; seq.right.len()];
    let mut right_edge = vec![false; seq.right.len()];

    for (j, &c) in seq.right.iter().enumerate() {
        let meta = &comps[c as usize];
        layer[j] = meta.layer;
        let (s, e) = seq.run_of[c as usize];
        let members = &seq.leaf_order[s as usize..e as usize];

        let mut touched: Vec<u32> = Vec::new();
        for &v in members {
            let lv = lay[v as usize];
            for &w in &alpha[local_of[v as usize] as usize] {
                let lw = lay[w as usize];
                if lw == 0 {
                    let cw = comp_of[w as usize];
                    if cnt[cw as usize] == 0 {
                        touched.push(cw);
                    }
                    cnt[cw as usize] += 1;
                } else if lw != u32::MAX && lw > lv {
                    right_edge[j] = true;
                }
            }
        }

        let mut m = 0i32;
        for i in (1..=kappa).rev() {
            let ci = seq.left[i - 1];
            let want = comps[ci as usize].size as u64 * meta.size as u64;
            if cnt[ci as usize] != want {
                m = -(i as i32);
                break;
            }
        }
        mu[j] = m;

        for t in touched {
            cnt[t as usize] = 0;
        }
    }

    RightInfo {
        mu,
        layer,
        right_edge,
    }
}
