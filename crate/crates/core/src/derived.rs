//! The derived graph: every arc `(v, w)` not entering an ancestor of `v` is
//! re-tailed to the sibling of `w` (or the parent of `w`) that is an
//! ancestor of `v`. Computed in linear time by walking the tree in preorder
//! with the current root path at hand.

use thiserror::Error;

use crate::graph::{Csr, FlowGraph, RootedTree, NIL};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error("arc {arc} = ({tail}, {head}) breaks the parent property")]
    ParentPropertyViolation {
        arc: usize,
        tail: usize,
        head: usize,
    },
}

/// Derived arcs of a flow graph with respect to a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedGraph {
    arcs: Vec<(usize, usize)>,
    origin: Vec<usize>,
    inverse: Vec<usize>,
    /// Derived tail per original arc.
    tails: Vec<usize>,
}

impl DerivedGraph {
    /// Derived arcs `(v', w)`, in the order of their original arcs.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Original arc index of a derived arc.
    pub fn origin(&self, derived: usize) -> usize {
        self.origin[derived]
    }

    /// Derived arc index of an original arc, `None` if the arc enters an
    /// ancestor of its tail.
    pub fn inverse(&self, original: usize) -> Option<usize> {
        Some(self.inverse[original]).filter(|&x| x != NIL)
    }

    /// Derived tail of an original arc.
    pub fn tail_of(&self, original: usize) -> Option<usize> {
        Some(self.tails[original]).filter(|&x| x != NIL)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Derived tails for arbitrary `(tail, head)` pairs; [`NIL`] where the head
/// is an ancestor of the tail. On a parent-property violation returns the
/// index of the first offending pair.
pub(crate) fn derived_tails(t: &RootedTree, pairs: &[(usize, usize)]) -> Result<Vec<usize>, usize> {
    let n = t.len();
    let mut tails = vec![NIL; pairs.len()];
    // pairs still to be lifted are keyed by their tail, the rest by `n`
    let mut key = vec![n; pairs.len()];
    for (i, &(v, w)) in pairs.iter().enumerate() {
        if t.is_ancestor(w, v) {
            continue;
        }
        let tw = t.parent(w).expect("only the root lacks a parent");
        if !t.is_ancestor(tw, v) {
            return Err(i);
        }
        if v == tw {
            tails[i] = v;
        } else {
            key[i] = v;
        }
    }
    let by_tail = Csr::group(n, key.iter().copied());
    let mut depth = vec![0usize; n];
    // ancestors of the current vertex, indexed by depth
    let mut path = Vec::new();
    for &v in t.preorder() {
        if let Some(p) = t.parent(v) {
            depth[v] = depth[p] + 1;
        }
        path.truncate(depth[v]);
        path.push(v);
        for &i in by_tail.row(v) {
            let tw = t.parent(pairs[i].1).expect("head is not the root");
            tails[i] = path[depth[tw] + 1];
        }
    }
    Ok(tails)
}

/// Derived tail of every arc of `g`; [`NIL`] for arcs entering an ancestor
/// of their tail.
pub(crate) fn arc_tails(g: &FlowGraph, t: &RootedTree) -> Result<Vec<usize>, DerivedError> {
    derived_tails(t, g.arcs()).map_err(|a| {
        let (tail, head) = g.arc(a);
        DerivedError::ParentPropertyViolation { arc: a, tail, head }
    })
}

/// Derived graph of `g` with respect to `t`, which must have the parent
/// property.
pub fn compute_derived(g: &FlowGraph, t: &RootedTree) -> Result<DerivedGraph, DerivedError> {
    assert_eq!(g.n(), t.len(), "tree and graph sizes differ");
    let tails = arc_tails(g, t)?;
    let mut arcs = Vec::new();
    let mut origin = Vec::new();
    let mut inverse = vec![NIL; g.arc_count()];
    for (a, &x) in tails.iter().enumerate() {
        if x != NIL {
            inverse[a] = arcs.len();
            arcs.push((x, g.arc(a).1));
            origin.push(a);
        }
    }
    Ok(DerivedGraph {
        arcs,
        origin,
        inverse,
        tails,
    })
}
