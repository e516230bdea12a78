//! Delineation: grows nested brackets around the pivot until the whole
//! sequence is covered. Each round tries to close a series module, then a
//! parallel module, and otherwise computes the smallest prime module
//! straddling the current extent.

use super::forest::Kind;
use super::sequence::RightInfo;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) struct Bracket {
    pub lo: i32,
    pub hi: i32,
    pub kind: Kind,
}

/// Positions run from -kappa through lambda; the pivot sits at 0 and the
/// innermost bracket always contains it. `mu_left[i]` belongs to C_{i+1},
/// the right-side arrays to C'_{j+1}.
pub(super) fn delineate(kappa: usize, lambda: usize, mu_left: &[i32], right: &RightInfo) -> Vec<Bracket> {
    let k = kappa as i32;
    let l = lambda as i32;
    let (mut lo, mut hi) = (0i32, 0i32);
    let mut out: Vec<Bracket> = Vec::new();

    while lo > -k || hi < l {
        // Series: take co-components whose edges all land inside the extent.
        let mut nlo = lo;
        while nlo > -k && mu_left[(-nlo) as usize] <= hi {
            nlo -= 1;
        }
        if nlo < lo {
            lo = nlo;
            out.push(Bracket { lo, hi, kind: Kind::Series });
            continue;
        }

        // Parallel: take first-layer components with no deeper edges whose
        // co-component attachments all cover the extent.
        let mut nhi = hi;
        while nhi < l {
            let j = nhi as usize;
            if right.mu[j] >= lo && right.layer[j] == 1 && !right.right_edge[j] {
                nhi += 1;
            } else {
                break;
            }
        }
        if nhi > hi {
            hi = nhi;
            out.push(Bracket { lo, hi, kind: Kind::Parallel });
            continue;
        }

        // Prime: close over attachments in both directions. A component in
        // layer two or beyond, or one with an edge into a later layer,
        // forces the module out to the whole universe.
        let mut tlo = lo;
        let mut thi = hi;
        if tlo > -k {
            tlo -= 1;
        }
        if thi < l {
            thi += 1;
        }
        let (mut plo, mut phi) = (lo, hi);
        loop {
            if phi < thi {
                phi += 1;
                let j = (phi - 1) as usize;
                if right.layer[j] >= 2 || right.right_edge[j] {
                    tlo = -k;
                    thi = l;
                } else if right.mu[j] < tlo {
                    tlo = right.mu[j];
                }
            } else if plo > tlo {
                plo -= 1;
                let i = -plo; // this is C_i
                if mu_left[(i - 1) as usize] > thi {
                    thi = mu_left[(i - 1) as usize];
                }
            } else {
                break;
            }
        }
        lo = tlo;
        hi = thi;
        out.push(Bracket { lo, hi, kind: Kind::Prime });
    }

    out
}
