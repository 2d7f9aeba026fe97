//! Two-vertex-disjoint-paths queries from two start vertices.
//!
//! A new root `s` with arcs to `s1` and `s2` is added. For each vertex `v`,
//! `c(v)` is the child of `s` in the dominator tree that dominates `v`.
//! Paths from `s1` and `s2` ending at `u` and `v` (in some assignment) exist
//! iff `c(u) != c(v)`, or, when `u = v`, iff `c(u) = u`. Paths are read off
//! a pair of strongly independent spanning trees.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{FlowGraph, GraphError, RootedTree, VertexMap, NIL};
use crate::lowhigh::{compute_lowhigh, LowHighError, LowHighOrder};
use crate::semidom::compute_dominator_tree;
use crate::trees::{build_strongly_independent, TreePair, TreesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    LowHigh(#[from] LowHighError),
    #[error(transparent)]
    Trees(#[from] TreesError),
    #[error("vertex {0} is not reachable from either start vertex")]
    UnknownVertex(usize),
    #[error("no disjoint paths reach {0} and {1}")]
    NoSuchPaths(usize, usize),
}

/// Preprocessed structure answering existence queries in O(1) and path
/// queries in time linear in the output.
#[derive(Clone, Debug)]
pub struct DisjointPathIndex {
    g: FlowGraph,
    map: VertexMap,
    s1: usize,
    s2: usize,
    d: RootedTree,
    lh: LowHighOrder,
    pair: TreePair,
    c: Vec<usize>,
    /// Search trees from each start vertex that stop at the other one.
    from_s1: Vec<usize>,
    from_s2: Vec<usize>,
}

/// Builds the index over a base graph on `0..n`. Vertices unreachable from
/// both starts are left out.
pub fn build_index(
    n: usize,
    arcs: &[(usize, usize)],
    s1: usize,
    s2: usize,
) -> Result<DisjointPathIndex, PathsError> {
    for x in [s1, s2] {
        if x >= n {
            return Err(GraphError::InvalidStart { start: x, n }.into());
        }
    }
    let root = n;
    let all = arcs.iter().copied().chain([(root, s1), (root, s2)]);
    let (g, map) = FlowGraph::new_pruned(n + 1, root, all)?;
    let (d, _) = compute_dominator_tree(&g);
    let lh = compute_lowhigh(&g, &d)?;
    let pair = build_strongly_independent(&g, &d, &lh)?;
    let s = g.start();
    let mut c = vec![NIL; g.n()];
    for &v in &d.preorder()[1..] {
        let p = d.parent(v).expect("non-root has a parent");
        c[v] = if p == s { v } else { c[p] };
    }
    let ns1 = map.new_id(s1).expect("start vertex is reachable");
    let ns2 = map.new_id(s2).expect("start vertex is reachable");
    let from_s1 = search_until(&g, ns1, ns2);
    let from_s2 = search_until(&g, ns2, ns1);
    Ok(DisjointPathIndex {
        g,
        map,
        s1: ns1,
        s2: ns2,
        d,
        lh,
        pair,
        c,
        from_s1,
        from_s2,
    })
}

/// Breadth-first parents from `a`, never leaving `b`. Unvisited vertices
/// map to [`NIL`], `a` maps to itself.
fn search_until(g: &FlowGraph, a: usize, b: usize) -> Vec<usize> {
    let mut parent = vec![NIL; g.n()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b && x != a {
            continue;
        }
        for y in g.successors(x) {
            if parent[y] == NIL {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent
}

impl DisjointPathIndex {
    pub fn dominator_tree(&self) -> &RootedTree {
        &self.d
    }

    pub fn lowhigh(&self) -> &LowHighOrder {
        &self.lh
    }

    pub fn trees(&self) -> &TreePair {
        &self.pair
    }

    /// The augmented graph; the added root is its start vertex.
    pub fn graph(&self) -> &FlowGraph {
        &self.g
    }

    fn id(&self, v: usize) -> Result<usize, PathsError> {
        match self.map.new_id(v) {
            Some(x) if x != self.g.start() => Ok(x),
            _ => Err(PathsError::UnknownVertex(v)),
        }
    }

    /// Child of the added root that dominates `v`, as a base-graph id.
    pub fn c(&self, v: usize) -> Result<usize, PathsError> {
        Ok(self.map.old_id(self.c[self.id(v)?]))
    }

    /// The start vertex other than `u`, when `u` is exactly one of them.
    fn other_start(&self, u: usize) -> Option<usize> {
        match (u == self.s1, u == self.s2) {
            (true, false) => Some(self.s2),
            (false, true) => Some(self.s1),
            _ => None,
        }
    }

    fn exists(&self, u: usize, v: usize) -> bool {
        if u != v {
            return self.c[u] != self.c[v];
        }
        // A start vertex is a child of the root through its own arc, so
        // the literal rule holds trivially there; the other start must
        // actually reach it.
        match self.other_start(u) {
            Some(o) => self.search(o)[u] != NIL,
            None => self.c[u] == u,
        }
    }

    fn search(&self, from: usize) -> &[usize] {
        if from == self.s1 {
            &self.from_s1
        } else {
            &self.from_s2
        }
    }

    pub fn query_exists(&self, u: usize, v: usize) -> Result<bool, PathsError> {
        Ok(self.exists(self.id(u)?, self.id(v)?))
    }

    /// Paths `(from s1, from s2)` ending at `u` and `v` in some assignment,
    /// disjoint except for a shared end when `u = v`.
    pub fn query_paths(&self, u: usize, v: usize) -> Result<(Vec<usize>, Vec<usize>), PathsError> {
        let (iu, iv) = (self.id(u)?, self.id(v)?);
        if !self.exists(iu, iv) {
            return Err(PathsError::NoSuchPaths(u, v));
        }
        let (p, q) = if iu == iv && self.s1 == self.s2 {
            (vec![iu], vec![iu])
        } else if let (true, Some(o)) = (iu == iv, self.other_start(iu)) {
            let parent = self.search(o);
            let mut path = vec![iu];
            let mut x = iu;
            while x != o {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            (vec![iu], path)
        } else {
            let (lo, hi) = if self.lh.rank(iu) <= self.lh.rank(iv) {
                (iu, iv)
            } else {
                (iv, iu)
            };
            let mut p = self.pair.b_path(lo);
            let mut q = self.pair.r_path(hi);
            p.remove(0);
            q.remove(0);
            (p, q)
        };
        let (p, q) = if p[0] == self.s1 && (q[0] == self.s2 || self.s1 == self.s2) {
            (p, q)
        } else {
            (q, p)
        };
        let old = |path: Vec<usize>| path.into_iter().map(|x| self.map.old_id(x)).collect();
        Ok((old(p), old(q)))
    }

    /// Whether `(p, q)` is a valid answer for `(u, v)`: arc paths from `s1`
    /// and `s2` ending at `u` and `v` in some assignment, simple, and sharing
    /// no vertex except a common end.
    pub fn check_paths(&self, u: usize, v: usize, p: &[usize], q: &[usize]) -> bool {
        let ids = |path: &[usize]| -> Option<Vec<usize>> {
            path.iter().map(|&x| self.id(x).ok()).collect()
        };
        let (Some(p), Some(q), Ok(u), Ok(v)) = (ids(p), ids(q), self.id(u), self.id(v)) else {
            return false;
        };
        let valid = |path: &[usize], start: usize| {
            let mut seen = vec![false; self.g.n()];
            path.first() == Some(&start)
                && path.windows(2).all(|w| self.g.has_arc(w[0], w[1]))
                && path.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        if !valid(&p, self.s1) || !valid(&q, self.s2) {
            return false;
        }
        let (pe, qe) = (*p.last().unwrap(), *q.last().unwrap());
        if !((pe, qe) == (u, v) || (pe, qe) == (v, u)) {
            return false;
        }
        let mut on_p = vec![false; self.g.n()];
        p.iter().for_each(|&x| on_p[x] = true);
        q.iter().all(|&x| !on_p[x] || (u == v && x == u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_two_disjoint_paths;

    // s1 = 0, s2 = 1, x = 2, y = 3
    fn two_arm() -> DisjointPathIndex {
        build_index(4, &[(0, 2), (1, 3)], 0, 1).unwrap()
    }

    #[test]
    fn two_arm_children() {
        let idx = two_arm();
        assert_eq!(idx.c(0), Ok(0));
        assert_eq!(idx.c(2), Ok(0));
        assert_eq!(idx.c(3), Ok(1));
    }

    #[test]
    fn two_arm_queries() {
        let idx = two_arm();
        assert_eq!(idx.query_exists(2, 3), Ok(true));
        assert_eq!(idx.query_exists(2, 0), Ok(false));
        assert_eq!(idx.query_paths(2, 3), Ok((vec![0, 2], vec![1, 3])));
        assert_eq!(idx.query_paths(3, 2), Ok((vec![0, 2], vec![1, 3])));
        assert_eq!(idx.query_paths(2, 0), Err(PathsError::NoSuchPaths(2, 0)));
        // s1 alone: s2 cannot reach it
        assert_eq!(idx.query_exists(0, 0), Ok(false));
        assert!(!oracle_two_disjoint_paths(4, &[(0, 2), (1, 3)], 0, 1, 0, 0));
    }

    #[test]
    fn start_vertex_reached_from_the_other() {
        let arcs = [(0, 2), (1, 2), (2, 0)];
        let idx = build_index(3, &arcs, 0, 1).unwrap();
        assert_eq!(idx.query_exists(0, 0), Ok(true));
        let (p, q) = idx.query_paths(0, 0).unwrap();
        assert_eq!((p.clone(), q.clone()), (vec![0], vec![1, 2, 0]));
        assert!(idx.check_paths(0, 0, &p, &q));
        assert_eq!(idx.query_exists(2, 2), Ok(true));
        let (p, q) = idx.query_paths(2, 2).unwrap();
        assert!(idx.check_paths(2, 2, &p, &q));
    }

    #[test]
    fn same_start_twice() {
        let idx = build_index(3, &[(0, 1), (0, 2)], 0, 0).unwrap();
        for v in 0..3 {
            assert_eq!(idx.c(v), Ok(0));
        }
        assert_eq!(idx.query_exists(1, 2), Ok(false));
        assert_eq!(idx.query_exists(0, 0), Ok(true));
        assert_eq!(idx.query_paths(0, 0), Ok((vec![0], vec![0])));
    }

    #[test]
    fn unknown_vertices() {
        let idx = build_index(4, &[(0, 2)], 0, 1).unwrap();
        assert_eq!(idx.query_exists(3, 2), Err(PathsError::UnknownVertex(3)));
        assert_eq!(idx.query_exists(9, 2), Err(PathsError::UnknownVertex(9)));
    }
}
