//! Promotion: hoists marked subtrees out of their parents.
//!
//! Every tree in the root list is expanded in order. A left-marked child of
//! a left-marked node is detached and emitted before its old parent, a
//! right-marked child of a right-marked node after it; detachment repeats
//! inside the detached parts.
//!
//! A node that lost a marked child is no longer the module it was. What
//! happens to the remainder depends on its label. Unmarked children of a
//! series or parallel node were never told apart by any refiner, so their
//! union is still a module: the node survives to group them (or collapses
//! into a lone survivor). No union of a prime node's children is a module,
//! so a broken prime node dissolves and its remaining children take its
//! place one by one. Leaves always survive. All marks are cleared.

use super::forest::{Forest, Kind, Side, NO_NODE};

enum Item {
    Expand(usize),
    Emit(usize),
}

/// Consumes the root list at `anchor` and returns the promoted root order.
pub(super) fn promote(f: &mut Forest, anchor: usize) -> Vec<usize> {
    let old_roots = f.roots(anchor);
    let mut out: Vec<usize> = Vec::with_capacity(old_roots.len());
    let mut stack: Vec<Item> = Vec::new();
    let mut lefts: Vec<usize> = Vec::new();
    let mut rights: Vec<usize> = Vec::new();

    for &r in &old_roots {
        stack.push(Item::Expand(r));
        while let Some(item) = stack.pop() {
            match item {
                Item::Expand(t) => {
                    let pull_left = f.marked(t, Side::Left);
                    let pull_right = f.marked(t, Side::Right);
                    if !pull_left && !pull_right {
                        stack.push(Item::Emit(t));
                        continue;
                    }
                    lefts.clear();
                    rights.clear();
                    let mut c = f.first_child[t];
                    while c != NO_NODE {
                        let next = f.next_sib[c];
                        if pull_left && f.marked(c, Side::Left) {
                            f.detach_child(c);
                            lefts.push(c);
                        } else if pull_right && f.marked(c, Side::Right) {
                            f.detach_child(c);
                            rights.push(c);
                        }
                        c = next;
                    }
                    // Reverse-push so pops run lefts, then the middle, then
                    // rights.
                    for &c in rights.iter().rev() {
                        stack.push(Item::Expand(c));
                    }
                    if lefts.is_empty() && rights.is_empty() {
                        stack.push(Item::Emit(t));
                    } else if f.kind[t] == Kind::Prime || f.child_count[t] == 1 {
                        // A broken prime node groups nothing anymore; a
                        // degenerate one down to a single child is that
                        // child.
                        let mut c = f.last_child[t];
                        while c != NO_NODE {
                            let prev = f.prev_sib[c];
                            f.detach_child(c);
                            stack.push(Item::Expand(c));
                            c = prev;
                        }
                    } else if f.child_count[t] > 0 {
                        stack.push(Item::Emit(t));
                    }
                    for &c in lefts.iter().rev() {
                        stack.push(Item::Expand(c));
                    }
                }
                Item::Emit(t) => {
                    out.push(t);
                }
            }
        }
    }

    let mut scratch = Vec::new();
    for &r in &out {
        f.clear_marks(r, &mut scratch);
    }
    out
}
