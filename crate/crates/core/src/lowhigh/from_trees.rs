use std::collections::VecDeque;

use super::{check_size, ChildListBuilder, LowHighError, LowHighOrder, RelTest};
use crate::derived::derived_tails;
use crate::graph::{FlowGraph, RootedTree, NIL};
use crate::trees::TreePair;

/// Low-high order from two independent spanning trees.
///
/// Both trees are first re-tailed onto the derived graph. Then vertices are
/// removed one at a time, each time choosing one whose in-degree exceeds its
/// number of children in the two trees; a removed vertex's single child is
/// re-hung on the removed vertex's own parent. Vertices are placed into
/// child lists in the reverse of removal order.
pub fn lowhigh_from_trees(
    g: &FlowGraph,
    d: &RootedTree,
    pair: &TreePair,
) -> Result<LowHighOrder, LowHighError> {
    check_size(g, d)?;
    let n = g.n();
    let s = g.start();
    if pair.len() != n {
        return Err(LowHighError::SizeMismatch {
            got: pair.len(),
            expected: n,
        });
    }

    let mut arcs = Vec::with_capacity(2 * n);
    for v in 0..n {
        if v == s {
            arcs.push((s, s));
            arcs.push((s, s));
            continue;
        }
        let dv = d.parent(v).expect("non-root has a parent");
        let missing = LowHighError::NotIndependent(v);
        let (b, r) = if g.has_arc(dv, v) {
            (dv, dv)
        } else {
            (pair.b(v).ok_or(missing.clone())?, pair.r(v).ok_or(missing)?)
        };
        arcs.push((b, v));
        arcs.push((r, v));
    }
    let tails = derived_tails(d, &arcs).map_err(|i| LowHighError::NotIndependent(i / 2))?;
    let mut bp = vec![NIL; n];
    let mut rp = vec![NIL; n];
    for v in (0..n).filter(|&v| v != s) {
        bp[v] = tails[2 * v];
        rp[v] = tails[2 * v + 1];
        if bp[v] == NIL || rp[v] == NIL {
            return Err(LowHighError::NotIndependent(v));
        }
    }

    // child counts and child-id sums; a lone child is its sum
    let mut cb = vec![0usize; n];
    let mut cr = vec![0usize; n];
    let mut sb = vec![0usize; n];
    let mut sr = vec![0usize; n];
    for v in (0..n).filter(|&v| v != s) {
        cb[bp[v]] += 1;
        sb[bp[v]] += v;
        cr[rp[v]] += 1;
        sr[rp[v]] += v;
    }
    let indeg = |v: usize, bp: &[usize], rp: &[usize]| if bp[v] == rp[v] { 1 } else { 2 };

    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| v != s).collect();
    let mut peeled = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        if v == s || removed[v] || indeg(v, &bp, &rp) <= cb[v] + cr[v] {
            continue;
        }
        removed[v] = true;
        let (b, r) = (bp[v], rp[v]);
        let anchor_b = cr[v] == 0;
        if anchor_b && cb[v] == 1 {
            let w = sb[v];
            cb[v] = 0;
            sb[v] = 0;
            bp[w] = b;
            cb[b] += 1;
            sb[b] += w;
        } else if !anchor_b {
            let w = sr[v];
            cr[v] = 0;
            sr[v] = 0;
            rp[w] = r;
            cr[r] += 1;
            sr[r] += w;
        }
        cb[b] -= 1;
        sb[b] -= v;
        cr[r] -= 1;
        sr[r] -= v;
        peeled.push(if anchor_b { (v, b, r) } else { (v, r, b) });
        queue.push_back(b);
        queue.push_back(r);
    }
    if peeled.len() + 1 != n {
        return Err(LowHighError::NoPeelableVertex);
    }

    let mut lists = ChildListBuilder::new(d);
    for &(v, anchor, other) in peeled.iter().rev() {
        if Some(anchor) == d.parent(v) {
            lists.insert_first(v);
        } else {
            lists
                .insert_rel(v, anchor, RelTest::After(other, anchor))
                .map_err(|_| LowHighError::NotIndependent(v))?;
        }
    }
    lists.finish().map_err(|_| LowHighError::NoPeelableVertex)
}
