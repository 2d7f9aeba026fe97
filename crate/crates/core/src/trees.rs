//! Pairs of spanning trees rooted at the start vertex whose root paths meet
//! only at dominators.

use thiserror::Error;

use crate::graph::{FlowGraph, RootedTree, NIL};
use crate::lowhigh::LowHighOrder;
use crate::semidom::SemiDomInfo;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreesError {
    #[error("no construction case applies at vertex {0}; the order is not low-high")]
    InvalidLowHigh(usize),
    #[error("({tail}, {head}) is not an arc")]
    MissingArc { tail: usize, head: usize },
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { got: usize, expected: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Blue,
    Red,
}

/// Two spanning trees `B` and `R` given by parent maps, together with the
/// arc each parent link uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePair {
    b: Vec<usize>,
    r: Vec<usize>,
    b_arc: Vec<usize>,
    r_arc: Vec<usize>,
    color: Option<Vec<Option<Color>>>,
}

impl TreePair {
    /// Builds a pair from parent maps, using the first arc from each parent.
    /// Only arc existence is checked, not that the maps are trees.
    pub fn from_parents(
        g: &FlowGraph,
        b: &[Option<usize>],
        r: &[Option<usize>],
    ) -> Result<Self, TreesError> {
        let n = g.n();
        for len in [b.len(), r.len()] {
            if len != n {
                return Err(TreesError::SizeMismatch {
                    got: len,
                    expected: n,
                });
            }
        }
        let link = |parents: &[Option<usize>]| -> Result<(Vec<usize>, Vec<usize>), TreesError> {
            let mut p = vec![NIL; n];
            let mut arcs = vec![NIL; n];
            for (v, &x) in parents.iter().enumerate() {
                if let Some(x) = x {
                    let a = (x < n)
                        .then(|| g.find_arc(x, v))
                        .flatten()
                        .ok_or(TreesError::MissingArc { tail: x, head: v })?;
                    p[v] = x;
                    arcs[v] = a;
                }
            }
            Ok((p, arcs))
        };
        let (b, b_arc) = link(b)?;
        let (r, r_arc) = link(r)?;
        Ok(TreePair {
            b,
            r,
            b_arc,
            r_arc,
            color: None,
        })
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn b(&self, v: usize) -> Option<usize> {
        Some(self.b[v]).filter(|&x| x != NIL)
    }

    pub fn r(&self, v: usize) -> Option<usize> {
        Some(self.r[v]).filter(|&x| x != NIL)
    }

    /// Arc index of `(b(v), v)`.
    pub fn b_arc(&self, v: usize) -> Option<usize> {
        Some(self.b_arc[v]).filter(|&x| x != NIL)
    }

    /// Arc index of `(r(v), v)`.
    pub fn r_arc(&self, v: usize) -> Option<usize> {
        Some(self.r_arc[v]).filter(|&x| x != NIL)
    }

    /// Color assigned by the semi-dominator construction, if it made this
    /// pair.
    pub fn color(&self, v: usize) -> Option<Color> {
        self.color.as_ref().and_then(|c| c[v])
    }

    pub fn b_parents(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(|v| self.b(v)).collect()
    }

    pub fn r_parents(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(|v| self.r(v)).collect()
    }

    fn path(parent: &[usize], v: usize) -> Vec<usize> {
        let mut p = vec![v];
        let mut x = v;
        while parent[x] != NIL && p.len() <= parent.len() {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        p
    }

    /// Root path to `v` in `B`, start vertex first.
    pub fn b_path(&self, v: usize) -> Vec<usize> {
        Self::path(&self.b, v)
    }

    /// Root path to `v` in `R`, start vertex first.
    pub fn r_path(&self, v: usize) -> Vec<usize> {
        Self::path(&self.r, v)
    }
}

/// Strongly independent spanning trees from a low-high order of `d`.
///
/// For each vertex, in order of preference: an arc from a lower vertex and
/// one from a higher non-descendant; the parent arc and another lower arc;
/// or the parent arc alone when nothing else enters from outside the
/// subtree.
pub fn build_strongly_independent(
    g: &FlowGraph,
    d: &RootedTree,
    lh: &LowHighOrder,
) -> Result<TreePair, TreesError> {
    let n = g.n();
    for len in [d.len(), lh.len()] {
        if len != n {
            return Err(TreesError::SizeMismatch {
                got: len,
                expected: n,
            });
        }
    }
    let rank = lh.ranks();
    let below = |v: usize, w: usize| rank[v] <= rank[w] && rank[w] < rank[v] + d.size(v);
    let mut b = vec![NIL; n];
    let mut r = vec![NIL; n];
    let mut b_arc = vec![NIL; n];
    let mut r_arc = vec![NIL; n];
    for v in 0..n {
        let Some(t) = d.parent(v) else { continue };
        let mut low = NIL;
        let mut high = NIL;
        let mut tree = NIL;
        let mut low_other = NIL;
        let mut outside = 0;
        for &a in g.in_arcs(v) {
            let u = g.arc(a).0;
            if u == t && tree == NIL {
                tree = a;
            }
            if rank[u] < rank[v] {
                if low == NIL {
                    low = a;
                }
                if low_other == NIL && a != tree {
                    low_other = a;
                }
            } else if !below(v, u) && high == NIL {
                high = a;
            }
            if !below(v, u) {
                outside += 1;
            }
        }
        let (ba, ra) = if low != NIL && high != NIL {
            (low, high)
        } else if tree != NIL && low_other != NIL {
            (low_other, tree)
        } else if tree != NIL && outside == 1 {
            (tree, tree)
        } else {
            return Err(TreesError::InvalidLowHigh(v));
        };
        b[v] = g.arc(ba).0;
        r[v] = g.arc(ra).0;
        b_arc[v] = ba;
        r_arc[v] = ra;
    }
    Ok(TreePair {
        b,
        r,
        b_arc,
        r_arc,
        color: None,
    })
}

/// Independent spanning trees from semi-dominators: each vertex takes its
/// depth-first parent in one tree and its last-arc tail `g(v)` in the other,
/// by the blue/red rule.
pub fn build_from_semidominators(g: &FlowGraph, info: &SemiDomInfo) -> TreePair {
    color_pair(g, info, info.rd_slice())
}

/// The same coloring rule driven by an arbitrary relative-dominator map.
/// With anything other than true relative dominators the result may fail to
/// be independent.
pub fn build_with_relative_dominators(
    g: &FlowGraph,
    info: &SemiDomInfo,
    rd: &[Option<usize>],
) -> TreePair {
    let rd: Vec<usize> = rd.iter().map(|x| x.unwrap_or(NIL)).collect();
    color_pair(g, info, &rd)
}

fn color_pair(g: &FlowGraph, info: &SemiDomInfo, rd: &[usize]) -> TreePair {
    let f = info.dfs();
    let n = g.n();
    let sd = info.sd_slice();
    let mut color = vec![None; n];
    let mut b = vec![NIL; n];
    let mut r = vec![NIL; n];
    let mut b_arc = vec![NIL; n];
    let mut r_arc = vec![NIL; n];
    for &v in &f.preorder()[1..] {
        let x = rd[v];
        let blue = sd[v] == sd[x] || color[x] == Some(Color::Red);
        let (gp, ga) = (info.g(v).unwrap(), info.g_arc(v).unwrap());
        let (fp, fa) = (f.parent(v).unwrap(), f.parent_arc(v).unwrap());
        if blue {
            color[v] = Some(Color::Blue);
            (b[v], b_arc[v], r[v], r_arc[v]) = (gp, ga, fp, fa);
        } else {
            color[v] = Some(Color::Red);
            (b[v], b_arc[v], r[v], r_arc[v]) = (fp, fa, gp, ga);
        }
    }
    TreePair {
        b,
        r,
        b_arc,
        r_arc,
        color: Some(color),
    }
}

/// Arcs lying on every path from the start to their head: those that are
/// the only arc entering their head from outside its dominator subtree.
pub fn bridges(g: &FlowGraph, d: &RootedTree) -> Vec<usize> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let mut outside = g
            .in_arcs(v)
            .iter()
            .filter(|&&a| !d.is_ancestor(v, g.arc(a).0));
        if let (Some(&a), None) = (outside.next(), outside.next()) {
            out.push(a);
        }
    }
    out.sort_unstable();
    out
}

/// Whether every arc used by both trees for the same vertex is a bridge.
pub fn check_arc_disjoint_except_bridges(g: &FlowGraph, d: &RootedTree, pair: &TreePair) -> bool {
    let bridge = {
        let mut is = vec![false; g.arc_count()];
        for a in bridges(g, d) {
            is[a] = true;
        }
        is
    };
    (0..pair.len()).all(|v| match (pair.b_arc(v), pair.r_arc(v)) {
        (Some(x), Some(y)) if x == y => bridge[x],
        _ => true,
    })
}

/// First vertex `v` whose path in `R` from `d(v)` passes through a vertex
/// ranked below `v`, or never reaches `d(v)`.
pub fn find_r_high_path_violation(
    d: &RootedTree,
    lh: &LowHighOrder,
    pair: &TreePair,
) -> Option<usize> {
    let rank = lh.ranks();
    (0..d.len()).find(|&v| {
        let Some(t) = d.parent(v) else { return false };
        let mut x = v;
        let mut steps = 0;
        loop {
            match pair.r(x) {
                Some(p) if p == t => return false,
                Some(p) if rank[p] >= rank[v] && steps < d.len() => {
                    x = p;
                    steps += 1;
                }
                _ => return true,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowhigh::compute_lowhigh;
    use crate::oracle::{oracle_bridges, oracle_independent, oracle_strongly_independent};
    use crate::semidom::compute_dominator_tree;

    #[test]
    fn chain_uses_case_three() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        let (d, _) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        let p = build_strongly_independent(&g, &d, &lh).unwrap();
        assert_eq!(p.b_parents(), vec![None, Some(0), Some(1)]);
        assert_eq!(p.r_parents(), p.b_parents());
        assert!(check_arc_disjoint_except_bridges(&g, &d, &p));
    }

    #[test]
    fn diamond_is_arc_disjoint() {
        let g = FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (d, _) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        let p = build_strongly_independent(&g, &d, &lh).unwrap();
        assert_ne!(p.b_arc(3), p.r_arc(3));
        assert!(check_arc_disjoint_except_bridges(&g, &d, &p));
        assert!(oracle_strongly_independent(&g, &d, &p));
        assert_eq!(find_r_high_path_violation(&d, &lh, &p), None);
    }

    #[test]
    fn semidominator_pair_on_shortcut() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (d, info) = compute_dominator_tree(&g);
        let p = build_from_semidominators(&g, &info);
        assert_eq!(p.color(2), Some(Color::Blue));
        assert_eq!(p.b_parents(), vec![None, Some(0), Some(0)]);
        assert_eq!(p.r_parents(), vec![None, Some(0), Some(1)]);
        assert!(oracle_independent(&g, &d, &p));
    }

    #[test]
    fn chain_is_all_blue() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        let (_, info) = compute_dominator_tree(&g);
        let p = build_from_semidominators(&g, &info);
        for v in 1..3 {
            assert_eq!(p.color(v), Some(Color::Blue));
            assert_eq!(p.b(v), p.r(v));
        }
    }

    #[test]
    fn bridges_match_deletion_test() {
        let g = FlowGraph::new(
            5,
            0,
            [(0, 1), (1, 2), (2, 3), (0, 2), (3, 4), (3, 4), (4, 1)],
        )
        .unwrap();
        let (d, _) = compute_dominator_tree(&g);
        assert_eq!(bridges(&g, &d), oracle_bridges(&g));
    }

    #[test]
    fn not_low_high_is_detected() {
        let g = FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (d, _) = compute_dominator_tree(&g);
        let lh = LowHighOrder::from_children(&d, vec![vec![1, 2, 3], vec![], vec![], vec![]]);
        assert_eq!(
            build_strongly_independent(&g, &d, &lh),
            Err(TreesError::InvalidLowHigh(3))
        );
    }
}
