//! Assembly: folds the promoted forest into the decomposition tree of the
//! stage universe, one bracket at a time.
//!
//! Each bracket swallows the trees whose position spans fall inside the
//! newly covered stretch, keeping them whole and in order, with the inner
//! spine node sitting where the previous extent was. Series under series
//! and parallel under parallel collapse immediately so the result never
//! carries degenerate nesting.

use super::delineate::Bracket;
use super::forest::{Forest, Kind, NO_NODE};
use super::sequence::RootSpan;

/// Builds the stage tree from the promoted roots. `x_index` locates the
/// pivot leaf in `roots`.
pub(super) fn assemble(f: &mut Forest, roots: &[RootSpan], x_index: usize, brackets: &[Bracket]) -> usize {
    let mut cl = x_index;
    let mut cr = x_index;
    let mut spine = roots[x_index].node;
    let mut kids: Vec<usize> = Vec::new();

    for b in brackets {
        kids.clear();
        let mut take_l = 0;
        while cl > 0 && roots[cl - 1].lo >= b.lo {
            cl -= 1;
            take_l += 1;
        }
        assert!(cl == 0 || roots[cl - 1].hi < b.lo, "tree straddles a module boundary");
        kids.extend(roots[cl..cl + take_l].iter().map(|r| r.node));
        kids.push(spine);
        while cr + 1 < roots.len() && roots[cr + 1].hi <= b.hi {
            cr += 1;
            kids.push(roots[cr].node);
        }
        assert!(cr + 1 == roots.len() || roots[cr + 1].lo > b.hi, "tree straddles a module boundary");
        spine = merge_node(f, b.kind, &kids);
    }

    assert!(cl == 0 && cr + 1 == roots.len(), "brackets did not cover the sequence");
    spine
}

/// New internal node that splices in any child of the same degenerate kind.
pub(super) fn merge_node(f: &mut Forest, kind: Kind, kids: &[usize]) -> usize {
    debug_assert!(kids.len() >= 2);
    let id = f.new_node(kind);
    let splice = matches!(kind, Kind::Series | Kind::Parallel);
    for &k in kids.iter() {
        if splice && f.kind[k] == kind {
            let mut c = f.first_child[k];
            while c != NO_NODE {
                let next = f.next_sib[c];
                f.detach_child(c);
                f.append_child(id, c);
                c = next;
            }
        } else {
            f.append_child(id, k);
        }
    }
    id
}
