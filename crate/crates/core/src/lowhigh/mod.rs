//! Low-high orders: preorders of the dominator tree in which every vertex
//! other than the start either is entered by an arc from its parent, or is
//! entered by one arc from an earlier vertex and one from a later
//! non-descendant.
//!
//! Three constructions are provided: for reducible graphs
//! ([`lowhigh_reducible`]), from a loop nesting forest
//! ([`lowhigh_from_loops`]), and from two independent spanning trees
//! ([`lowhigh_from_trees`]).

mod from_trees;
mod loops;
mod order_list;
mod reducible;

pub use from_trees::lowhigh_from_trees;
pub use loops::{lowhigh_from_loops, lowhigh_from_loops_traced, LoopStep};
pub(crate) use loops::{Cand, TwoBest};
pub use reducible::lowhigh_reducible;

use thiserror::Error;

use crate::derived::DerivedError;
use crate::graph::{traverse, FlowGraph, RootedTree, NIL};
use crate::offline_list::{run_script, ListError, ListScript, Test};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LowHighError {
    #[error("graph is not reducible with respect to the given tree")]
    NotReducible,
    #[error("vertex {0} has neither a parent arc nor two distinct derived entering arcs")]
    MissingWitnessArcs(usize),
    #[error("no test arc exists for vertex {0}")]
    MissingTestArc(usize),
    #[error("loop forest was built for a different graph")]
    ForestMismatch,
    #[error("no vertex can be removed; the trees are not independent")]
    NoPeelableVertex,
    #[error("tree pair is not independent at vertex {0}")]
    NotIndependent(usize),
    #[error("tree has {got} vertices, graph has {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error("child list construction failed: {0}")]
    List(#[from] ListError),
}

/// A low-high order: 1-based ranks plus the ordered child lists of the
/// dominator tree that produce them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowHighOrder {
    rank: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl LowHighOrder {
    /// Numbers `d` in preorder, visiting children in the given order.
    pub fn from_children(d: &RootedTree, children: Vec<Vec<usize>>) -> Self {
        let t = RootedTree::from_ordered_children(d.root(), d.parent_slice().to_vec(), &children)
            .expect("child lists match the tree");
        let rank = (0..d.len()).map(|v| t.pre(v)).collect();
        LowHighOrder { rank, children }
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Vertices in rank order.
    pub fn order(&self) -> Vec<usize> {
        let mut by_rank = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            by_rank[r - 1] = v;
        }
        by_rank
    }
}

/// A relative-insertion test between two siblings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RelTest {
    Const(bool),
    /// Insert after the anchor iff the first vertex follows the second.
    After(usize, usize),
}

/// Collects insertions into the child list of every tree vertex as one
/// off-line list script per parent, using each child's index as item id.
pub(crate) struct ChildListBuilder<'a> {
    d: &'a RootedTree,
    local: Vec<usize>,
    scripts: Vec<ListScript>,
    members: Vec<Vec<usize>>,
}

impl<'a> ChildListBuilder<'a> {
    pub(crate) fn new(d: &'a RootedTree) -> Self {
        let n = d.len();
        let mut local = vec![NIL; n];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = d.parent(v) {
                local[v] = members[p].len();
                members[p].push(v);
            }
        }
        let scripts = members.iter().map(|m| ListScript::new(m.len())).collect();
        ChildListBuilder {
            d,
            local,
            scripts,
            members,
        }
    }

    fn parent(&self, v: usize) -> usize {
        self.d.parent(v).expect("root is never inserted")
    }

    pub(crate) fn insert_first(&mut self, v: usize) {
        let p = self.parent(v);
        self.scripts[p].insert(self.local[v]);
    }

    /// Inserts `v` next to its sibling `anchor`: after it iff `test` holds.
    pub(crate) fn insert_rel(
        &mut self,
        v: usize,
        anchor: usize,
        test: RelTest,
    ) -> Result<(), ListError> {
        let p = self.parent(v);
        let sibling = |x: usize| {
            if self.d.parent(x) == Some(p) {
                Ok(self.local[x])
            } else {
                Err(ListError::MalformedScript {
                    op: self.scripts[p].ops().len(),
                    reason: "relative insertion across different parents",
                })
            }
        };
        let test = match test {
            RelTest::Const(b) => Test::Const(b),
            RelTest::After(x, y) => Test::After(sibling(x)?, sibling(y)?),
        };
        let (item, anchor) = (self.local[v], sibling(anchor)?);
        self.scripts[p].insert_rel(item, anchor, test);
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<LowHighOrder, ListError> {
        let mut children = Vec::with_capacity(self.members.len());
        for (script, members) in self.scripts.iter().zip(&self.members) {
            let result = run_script(script)?;
            let mut ordered = vec![NIL; members.len()];
            for (i, &r) in result.rank.iter().enumerate() {
                ordered[r - 1] = members[i];
            }
            children.push(ordered);
        }
        Ok(LowHighOrder::from_children(self.d, children))
    }
}

/// Whether the graph becomes acyclic once every arc entering an ancestor
/// of its tail in `d` is removed.
pub fn is_reducible(g: &FlowGraph, d: &RootedTree) -> bool {
    assert_eq!(g.n(), d.len(), "tree and graph sizes differ");
    let t = traverse(g, |a| {
        let (v, w) = g.arc(a);
        !d.is_ancestor(w, v)
    });
    !t.saw_back_arc
}

/// Low-high order by the loop-forest construction, which works on any
/// flow graph when `d` is its dominator tree.
pub fn compute_lowhigh(g: &FlowGraph, d: &RootedTree) -> Result<LowHighOrder, LowHighError> {
    let f = crate::graph::dfs(g);
    let lf = crate::loop_forest::compute_loop_forest(g, &f);
    lowhigh_from_loops(g, d, &lf)
}

pub(crate) fn check_size(g: &FlowGraph, d: &RootedTree) -> Result<(), LowHighError> {
    if g.n() != d.len() || d.root() != g.start() {
        return Err(LowHighError::SizeMismatch {
            got: d.len(),
            expected: g.n(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semidom::compute_dominator_tree;

    #[test]
    fn reducibility() {
        let dag = FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (d, _) = compute_dominator_tree(&dag);
        assert!(is_reducible(&dag, &d));
        let natural = FlowGraph::new(3, 0, [(0, 1), (1, 2), (2, 1)]).unwrap();
        let (d, _) = compute_dominator_tree(&natural);
        assert!(is_reducible(&natural, &d));
        let irreducible = FlowGraph::new(3, 0, [(0, 1), (0, 2), (1, 2), (2, 1)]).unwrap();
        let (d, _) = compute_dominator_tree(&irreducible);
        assert!(!is_reducible(&irreducible, &d));
    }

    #[test]
    fn builder_orders_siblings() {
        let d = RootedTree::from_parents(0, &[None, Some(0), Some(0), Some(0)]).unwrap();
        let mut b = ChildListBuilder::new(&d);
        b.insert_first(1);
        b.insert_rel(2, 1, RelTest::Const(true)).unwrap();
        b.insert_rel(3, 1, RelTest::After(2, 1)).unwrap();
        let lh = b.finish().unwrap();
        assert_eq!(lh.children(0), &[1, 3, 2]);
        assert_eq!(lh.ranks(), &[1, 2, 4, 3]);
        assert_eq!(lh.order(), vec![0, 1, 3, 2]);
    }
}
