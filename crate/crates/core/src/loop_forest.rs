//! Loop nesting forest of a flow graph relative to a depth-first tree.
//!
//! `h(v)` is the deepest proper ancestor `u` of `v` such that `v` reaches `u`
//! through descendants of `u` only. Built by processing vertices in
//! decreasing reverse postorder and collapsing each loop body with a
//! disjoint-set structure.

use crate::graph::{offline_nca, Csr, DfsInfo, FlowGraph, UnionFind, NIL};

/// Loop nesting forest with, for each non-root vertex, one outgoing arc of
/// its interval and the original arc behind it.
#[derive(Clone, Debug)]
pub struct LoopForest {
    dfs: DfsInfo,
    header: Vec<usize>,
    out_target: Vec<usize>,
    out_origin: Vec<usize>,
}

impl LoopForest {
    pub fn dfs(&self) -> &DfsInfo {
        &self.dfs
    }

    pub fn len(&self) -> usize {
        self.header.len()
    }

    pub fn is_empty(&self) -> bool {
        self.header.is_empty()
    }

    /// Loop header of `v`, i.e. its parent in the forest.
    pub fn h(&self, v: usize) -> Option<usize> {
        Some(self.header[v]).filter(|&x| x != NIL)
    }

    /// Outgoing arc of `v` inside the interval of `h(v)`, as
    /// `(v, target)` in the contracted graph.
    pub fn out_arc(&self, v: usize) -> Option<(usize, usize)> {
        Some(self.out_target[v])
            .filter(|&x| x != NIL)
            .map(|x| (v, x))
    }

    /// Original arc behind [`LoopForest::out_arc`].
    pub fn out_origin(&self, v: usize) -> Option<usize> {
        Some(self.out_origin[v]).filter(|&x| x != NIL)
    }

    /// Vertices with at least one child, i.e. loop headers.
    pub fn headers(&self) -> Vec<usize> {
        let mut is_head = vec![false; self.len()];
        for &h in &self.header {
            if h != NIL {
                is_head[h] = true;
            }
        }
        (0..self.len()).filter(|&v| is_head[v]).collect()
    }

    pub(crate) fn header_slice(&self) -> &[usize] {
        &self.header
    }

    pub(crate) fn out_target_slice(&self) -> &[usize] {
        &self.out_target
    }

    /// Whether `u` is an ancestor of `v` in the forest (reflexive).
    pub fn is_forest_ancestor(&self, u: usize, mut v: usize) -> bool {
        loop {
            if v == u {
                return true;
            }
            match self.h(v) {
                Some(p) => v = p,
                None => return false,
            }
        }
    }
}

/// Intervals of the contraction sequence: each header, in decreasing
/// reverse postorder, with its forest children in increasing reverse
/// postorder.
pub fn intervals(lf: &LoopForest) -> Vec<(usize, Vec<usize>)> {
    let f = &lf.dfs;
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); lf.len()];
    for &v in f.reverse_postorder() {
        if let Some(h) = lf.h(v) {
            kids[h].push(v);
        }
    }
    f.reverse_postorder()
        .iter()
        .rev()
        .filter_map(|&u| {
            Some(std::mem::take(&mut kids[u]))
                .filter(|k| !k.is_empty())
                .map(|k| (u, k))
        })
        .collect()
}

/// Loop nesting forest in O(m α(m, n)) time.
pub fn compute_loop_forest(g: &FlowGraph, dfs: &DfsInfo) -> LoopForest {
    assert_eq!(
        dfs.graph_id(),
        g.id(),
        "search tree belongs to another graph"
    );
    let n = g.n();

    // A non-back arc (y, m) can first lie inside a loop headed at nca(y, m).
    let mut cross = Vec::new();
    let mut cross_arc = Vec::new();
    let mut defer_at = vec![NIL; g.arc_count()];
    for (a, &(y, m)) in g.arcs().iter().enumerate() {
        if dfs.is_ancestor(m, y) {
            continue;
        }
        if dfs.is_ancestor(y, m) {
            defer_at[a] = y;
        } else {
            cross.push((y, m));
            cross_arc.push(a);
        }
    }
    for (i, nca) in offline_nca(dfs, &cross).into_iter().enumerate() {
        defer_at[cross_arc[i]] = nca;
    }
    let deferred = Csr::group(
        n + 1,
        defer_at.iter().map(|&x| if x == NIL { n } else { x }),
    );

    let mut uf = UnionFind::new(n);
    let mut header = vec![NIL; n];
    let mut out_target = vec![NIL; n];
    let mut out_origin = vec![NIL; n];
    // pending entering arcs per representative, as a linked list of arc ids
    let mut pend_head = vec![NIL; n];
    let mut pend_next = vec![NIL; g.arc_count()];
    let mut in_body = vec![false; n];
    let mut body = Vec::new();
    let mut work = Vec::new();

    for &u in dfs.reverse_postorder().iter().rev() {
        for &a in deferred.row(u) {
            let r = uf.find(g.arc(a).1);
            pend_next[a] = pend_head[r];
            pend_head[r] = a;
        }
        for (&a, &y) in g.in_arcs(u).iter().zip(g.pred_slice(u)) {
            if y == u || !dfs.is_ancestor(u, y) {
                continue;
            }
            let x = uf.find(y);
            if x != u && !in_body[x] {
                in_body[x] = true;
                out_target[x] = u;
                out_origin[x] = a;
                body.push(x);
                work.push(x);
            }
        }
        while let Some(z) = work.pop() {
            let mut a = std::mem::replace(&mut pend_head[z], NIL);
            while a != NIL {
                let x = uf.find(g.arc(a).0);
                if x != u && !in_body[x] {
                    in_body[x] = true;
                    out_target[x] = z;
                    out_origin[x] = a;
                    body.push(x);
                    work.push(x);
                }
                a = pend_next[a];
            }
        }
        for x in body.drain(..) {
            in_body[x] = false;
            header[x] = u;
            uf.union(x, u, u);
        }
    }

    LoopForest {
        dfs: dfs.clone(),
        header,
        out_target,
        out_origin,
    }
}
