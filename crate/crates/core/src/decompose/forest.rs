//! Arena-backed ordered forest mutated by refinement and promotion.
//!
//! Nodes are integer handles into parallel vectors. Children form an
//! intrusive doubly-linked sibling list per node, so detaching one child,
//! appending one, or swapping a node for a fresh one in its parent's list
//! is O(1) and never shifts the siblings around it. Roots form the same
//! kind of list anchored at a sentinel node.
//!
//! Every child enters a list through `append_child`, which hands out
//! strictly increasing `rank` values along the chain; refinement sorts by
//! rank to recover sibling order for nodes it discovered in another order.

pub(super) const NO_NODE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Kind {
    Leaf(u32),
    Series,
    Parallel,
    Prime,
    /// Root-list anchor; never part of a tree.
    Anchor,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Side {
    Left,
    Right,
}

impl Side {
    fn mark_bit(self) -> u8 {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }

    fn prime_done_bit(self) -> u8 {
        match self {
            Side::Left => 4,
            Side::Right => 8,
        }
    }
}

pub(super) struct Forest {
    pub kind: Vec<Kind>,
    pub parent: Vec<usize>,
    /// Bits: 1 left mark, 2 right mark, 4/8 prime-children already marked.
    pub marks: Vec<u8>,
    /// Transient full-subtree counters; zero outside refine_with_set.
    pub full: Vec<u32>,
    /// Transient parent-dedup flags; false outside refine_with_set.
    pub seen: Vec<bool>,
    /// Scratch parent index, meaningful only while `seen` is set.
    pub slot: Vec<u32>,
    pub first_child: Vec<usize>,
    pub last_child: Vec<usize>,
    pub next_sib: Vec<usize>,
    pub prev_sib: Vec<usize>,
    pub child_count: Vec<u32>,
    /// Sibling order key, strictly increasing along every child list.
    pub rank: Vec<u32>,
    next_root: Vec<usize>,
    prev_root: Vec<usize>,
}

impl Forest {
    pub fn new() -> Forest {
        Forest {
            kind: Vec::new(),
            parent: Vec::new(),
            marks: Vec::new(),
            full: Vec::new(),
            seen: Vec::new(),
            slot: Vec::new(),
            first_child: Vec::new(),
            last_child: Vec::new(),
            next_sib: Vec::new(),
            prev_sib: Vec::new(),
            child_count: Vec::new(),
            rank: Vec::new(),
            next_root: Vec::new(),
            prev_root: Vec::new(),
        }
    }

    pub fn new_node(&mut self, kind: Kind) -> usize {
        self.kind.push(kind);
        self.parent.push(NO_NODE);
        self.marks.push(0);
        self.full.push(0);
        self.seen.push(false);
        self.slot.push(0);
        self.first_child.push(NO_NODE);
        self.last_child.push(NO_NODE);
        self.next_sib.push(NO_NODE);
        self.prev_sib.push(NO_NODE);
        self.child_count.push(0);
        self.rank.push(0);
        self.next_root.push(NO_NODE);
        self.prev_root.push(NO_NODE);
        self.kind.len() - 1
    }

    pub fn new_internal(&mut self, kind: Kind, children: &[usize]) -> usize {
        let id = self.new_node(kind);
        for &c in children {
            self.append_child(id, c);
        }
        id
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        matches!(self.kind[id], Kind::Leaf(_))
    }

    pub fn is_root(&self, id: usize) -> bool {
        self.parent[id] == NO_NODE
    }

    pub fn marked(&self, id: usize, side: Side) -> bool {
        self.marks[id] & side.mark_bit() != 0
    }

    /// Sets the mark; returns true if it was not already present.
    pub fn mark(&mut self, id: usize, side: Side) -> bool {
        let bit = side.mark_bit();
        if self.marks[id] & bit != 0 {
            return false;
        }
        self.marks[id] |= bit;
        true
    }

    pub fn prime_children_done(&mut self, id: usize, side: Side) -> bool {
        let bit = side.prime_done_bit();
        if self.marks[id] & bit != 0 {
            return true;
        }
        self.marks[id] |= bit;
        false
    }

    // Child list management.

    pub fn append_child(&mut self, p: usize, c: usize) {
        let last = self.last_child[p];
        self.rank[c] = if last == NO_NODE { 0 } else { self.rank[last] + 1 };
        self.prev_sib[c] = last;
        self.next_sib[c] = NO_NODE;
        if last == NO_NODE {
            self.first_child[p] = c;
        } else {
            self.next_sib[last] = c;
        }
        self.last_child[p] = c;
        self.parent[c] = p;
        self.child_count[p] += 1;
    }

    /// Unlinks `c` from its parent's child list.
    pub fn detach_child(&mut self, c: usize) {
        let p = self.parent[c];
        debug_assert!(p != NO_NODE);
        let prev = self.prev_sib[c];
        let next = self.next_sib[c];
        if prev == NO_NODE {
            self.first_child[p] = next;
        } else {
            self.next_sib[prev] = next;
        }
        if next == NO_NODE {
            self.last_child[p] = prev;
        } else {
            self.prev_sib[next] = prev;
        }
        self.child_count[p] -= 1;
        self.parent[c] = NO_NODE;
        self.prev_sib[c] = NO_NODE;
        self.next_sib[c] = NO_NODE;
    }

    /// Puts a fresh node of `kind` exactly where `old` sits in its parent's
    /// child list and returns it; `old` comes out unlinked.
    pub fn replace_with_fresh(&mut self, old: usize, kind: Kind) -> usize {
        let id = self.new_node(kind);
        let p = self.parent[old];
        debug_assert!(p != NO_NODE);
        let prev = self.prev_sib[old];
        let next = self.next_sib[old];
        self.rank[id] = self.rank[old];
        self.parent[id] = p;
        self.prev_sib[id] = prev;
        self.next_sib[id] = next;
        if prev == NO_NODE {
            self.first_child[p] = id;
        } else {
            self.next_sib[prev] = id;
        }
        if next == NO_NODE {
            self.last_child[p] = id;
        } else {
            self.prev_sib[next] = id;
        }
        self.parent[old] = NO_NODE;
        self.prev_sib[old] = NO_NODE;
        self.next_sib[old] = NO_NODE;
        id
    }

    pub fn children_vec(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.child_count[id] as usize);
        let mut c = self.first_child[id];
        while c != NO_NODE {
            out.push(c);
            c = self.next_sib[c];
        }
        out
    }

    // Root list management.

    pub fn new_anchor(&mut self) -> usize {
        let a = self.new_node(Kind::Anchor);
        self.next_root[a] = a;
        self.prev_root[a] = a;
        a
    }

    pub fn push_root(&mut self, anchor: usize, id: usize) {
        let last = self.prev_root[anchor];
        self.next_root[last] = id;
        self.prev_root[id] = last;
        self.next_root[id] = anchor;
        self.prev_root[anchor] = id;
    }

    pub fn roots(&self, anchor: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.next_root[anchor];
        while cur != anchor {
            out.push(cur);
            cur = self.next_root[cur];
        }
        out
    }

    pub fn insert_root_before(&mut self, at: usize, id: usize) {
        let before = self.prev_root[at];
        self.next_root[before] = id;
        self.prev_root[id] = before;
        self.next_root[id] = at;
        self.prev_root[at] = id;
    }

    pub fn insert_root_after(&mut self, at: usize, id: usize) {
        let after = self.next_root[at];
        self.next_root[id] = after;
        self.prev_root[after] = id;
        self.next_root[at] = id;
        self.prev_root[id] = at;
    }

    /// Replaces root `p` in the list by `a` then `b`, in that order.
    pub fn replace_root_with_pair(&mut self, p: usize, a: usize, b: usize) {
        let before = self.prev_root[p];
        let after = self.next_root[p];
        self.next_root[before] = a;
        self.prev_root[a] = before;
        self.next_root[a] = b;
        self.prev_root[b] = a;
        self.next_root[b] = after;
        self.prev_root[after] = b;
        self.next_root[p] = NO_NODE;
        self.prev_root[p] = NO_NODE;
    }

    /// Depth-first leaves of the subtree at `id`, in child order.
    pub fn collect_leaves(&self, id: usize, out: &mut Vec<u32>, stack: &mut Vec<usize>) {
        stack.push(id);
        while let Some(n) = stack.pop() {
            if let Kind::Leaf(v) = self.kind[n] {
                out.push(v);
            } else {
                let mut c = self.last_child[n];
                while c != NO_NODE {
                    stack.push(c);
                    c = self.prev_sib[c];
                }
            }
        }
    }

    /// Number of nodes in the subtree at `id`.
    pub fn subtree_size(&self, id: usize, stack: &mut Vec<usize>) -> usize {
        let mut count = 0;
        stack.push(id);
        while let Some(n) = stack.pop() {
            count += 1;
            let mut c = self.first_child[n];
            while c != NO_NODE {
                stack.push(c);
                c = self.next_sib[c];
            }
        }
        count
    }

    /// Clears mark bits in the subtree at `id`.
    pub fn clear_marks(&mut self, id: usize, stack: &mut Vec<usize>) {
        stack.push(id);
        while let Some(n) = stack.pop() {
            self.marks[n] = 0;
            let mut c = self.first_child[n];
            while c != NO_NODE {
                stack.push(c);
                c = self.next_sib[c];
            }
        }
    }
}
