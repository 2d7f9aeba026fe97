//! Linear-time verification of a claimed dominator tree.
//!
//! A certificate is a parent map plus a vertex numbering. [`verify`] checks
//! that the parent map is a tree rooted at the start vertex, that the
//! numbering is a preorder of it, that every arc `(v, w)` has `t(w)` as an
//! ancestor of `v`, and that every vertex has the entering arcs a low-high
//! order requires. These checks together imply the tree is the dominator
//! tree. [`verify`] uses nothing beyond the graph module.

use std::fmt;

use crate::derived::compute_derived;
use crate::graph::{check_tree_shape, dfs, FlowGraph, RootedTree, TreeError, NIL};
use crate::lowhigh::{is_reducible, Cand, LowHighOrder, TwoBest};

/// A claimed dominator tree and a claimed low-high order. Nothing about it
/// is trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomCertificate {
    pub parent: Vec<Option<usize>>,
    /// 1-based rank of each vertex.
    pub rank: Vec<usize>,
}

impl DomCertificate {
    pub fn new(d: &RootedTree, lh: &LowHighOrder) -> Self {
        DomCertificate {
            parent: d.parents(),
            rank: lh.ranks().to_vec(),
        }
    }

    pub fn from_parts(parent: Vec<Option<usize>>, rank: Vec<usize>) -> Self {
        DomCertificate { parent, rank }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Certificate size differs from the graph.
    WrongSize {
        got: usize,
        expected: usize,
    },
    /// The parent map is not a tree rooted at the start vertex.
    NotATree(usize),
    /// The numbering is not a preorder of the claimed tree.
    NotPreorder(usize),
    /// Arc `(tail, head)` whose head's parent is not an ancestor of its tail.
    ParentPropertyViolation {
        tail: usize,
        head: usize,
    },
    /// Vertex lacking both a parent arc and a straddling pair of arcs.
    LowHighViolation(usize),
    NotReducible,
    /// Vertex some sibling may dominate.
    MissingSiblingWitness(usize),
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::WrongSize { .. } => "WrongSize",
            Violation::NotATree(_) => "NotATree",
            Violation::NotPreorder(_) => "NotPreorder",
            Violation::ParentPropertyViolation { .. } => "ParentPropertyViolation",
            Violation::LowHighViolation(_) => "LowHighViolation",
            Violation::NotReducible => "NotReducible",
            Violation::MissingSiblingWitness(_) => "MissingSiblingWitness",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match *self {
            Violation::WrongSize { got, expected } => write!(f, " {got} {expected}"),
            Violation::NotATree(v)
            | Violation::NotPreorder(v)
            | Violation::LowHighViolation(v)
            | Violation::MissingSiblingWitness(v) => write!(f, " {v}"),
            Violation::ParentPropertyViolation { tail, head } => write!(f, " {tail} {head}"),
            Violation::NotReducible => Ok(()),
        }
    }
}

/// Outcome of a check; `accepted()` iff there is no violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    violation: Option<Violation>,
}

impl Verdict {
    pub const ACCEPT: Verdict = Verdict { violation: None };

    pub fn reject(v: Violation) -> Self {
        Verdict { violation: Some(v) }
    }

    pub fn accepted(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<Violation> {
        self.violation
    }
}

impl From<Result<(), Violation>> for Verdict {
    fn from(r: Result<(), Violation>) -> Self {
        Verdict { violation: r.err() }
    }
}

fn tree_violation(e: TreeError) -> Violation {
    match e {
        TreeError::WrongLength { got, expected } => Violation::WrongSize { got, expected },
        TreeError::RootHasParent(v)
        | TreeError::MissingParent(v)
        | TreeError::ParentOutOfRange(v)
        | TreeError::Cycle(v) => Violation::NotATree(v),
        TreeError::NotPreorder(v) => Violation::NotPreorder(v),
    }
}

fn claimed_tree(g: &FlowGraph, parent: &[Option<usize>]) -> Result<Vec<usize>, Violation> {
    if parent.len() != g.n() {
        return Err(Violation::WrongSize {
            got: parent.len(),
            expected: g.n(),
        });
    }
    let p: Vec<usize> = parent.iter().map(|x| x.unwrap_or(NIL)).collect();
    check_tree_shape(g.start(), &p).map_err(tree_violation)?;
    Ok(p)
}

fn parent_property(g: &FlowGraph, t: &RootedTree) -> Result<(), Violation> {
    for &(tail, head) in g.arcs() {
        match t.parent(head) {
            Some(p) if t.is_ancestor(p, tail) => {}
            _ => return Err(Violation::ParentPropertyViolation { tail, head }),
        }
    }
    Ok(())
}

fn run_verify(g: &FlowGraph, cert: &DomCertificate) -> Result<(), Violation> {
    // Step 1: a tree rooted at s.
    let parent = claimed_tree(g, &cert.parent)?;
    // Step 2: the numbering is the preorder given by children in rank order.
    let t = RootedTree::with_preorder(g.start(), parent, &cert.rank).map_err(tree_violation)?;
    // Step 3: parent property, then the low-high witnesses.
    parent_property(g, &t)?;
    let rank = &cert.rank;
    for v in 0..g.n() {
        let Some(p) = t.parent(v) else { continue };
        let (mut low, mut high, mut from_parent) = (false, false, false);
        for u in g.predecessors(v) {
            from_parent |= u == p;
            low |= rank[u] < rank[v];
            high |= rank[u] > rank[v] && !t.is_ancestor(v, u);
        }
        if !(from_parent || low && high) {
            return Err(Violation::LowHighViolation(v));
        }
    }
    Ok(())
}

/// Accepts iff the certificate's tree is the dominator tree of `g` and its
/// order is low-high. Reports the first failed check. O(m + n).
pub fn verify(g: &FlowGraph, cert: &DomCertificate) -> Verdict {
    run_verify(g, cert).into()
}

/// Whether `t(w)` is an ancestor of `v` for every arc `(v, w)`.
pub fn check_parent_property(g: &FlowGraph, t: &RootedTree) -> Verdict {
    if t.len() != g.n() {
        return Verdict::reject(Violation::WrongSize {
            got: t.len(),
            expected: g.n(),
        });
    }
    parent_property(g, t).into()
}

/// Whether the root is the parent of every other vertex.
pub fn is_flat(t: &RootedTree) -> bool {
    t.is_flat()
}

fn tree_with_parent_property(
    g: &FlowGraph,
    parent: &[Option<usize>],
) -> Result<RootedTree, Violation> {
    let p = claimed_tree(g, parent)?;
    let t = RootedTree::from_parent_array(g.start(), p).map_err(tree_violation)?;
    parent_property(g, &t)?;
    Ok(t)
}

/// Verifies a claimed dominator tree of a reducible graph without an order:
/// each vertex needs its parent arc or two entering derived arcs with
/// distinct tails.
pub fn verify_reducible_nocert(g: &FlowGraph, parent: &[Option<usize>]) -> Verdict {
    (|| {
        let t = tree_with_parent_property(g, parent)?;
        if !is_reducible(g, &t) {
            return Err(Violation::NotReducible);
        }
        let dg = compute_derived(g, &t).map_err(|e| match e {
            crate::derived::DerivedError::ParentPropertyViolation { tail, head, .. } => {
                Violation::ParentPropertyViolation { tail, head }
            }
        })?;
        let mut first = vec![NIL; g.n()];
        let mut ok = vec![false; g.n()];
        for &(x, v) in dg.arcs() {
            if t.parent(v) == Some(x) || first[v] != NIL && first[v] != x {
                ok[v] = true;
            }
            if first[v] == NIL {
                first[v] = x;
            }
        }
        match (0..g.n()).find(|&v| v != g.start() && !ok[v]) {
            Some(v) => Err(Violation::MissingSiblingWitness(v)),
            None => Ok(()),
        }
    })()
    .into()
}

/// Verifies a claimed dominator tree of any flow graph without an order,
/// using a loop nesting forest: each `u` with depth-first parent `f(u)`
/// other than `t(u)` needs an arc `(y, w)` into its loop with `y` before `u`
/// and derived tail other than that of `(f(u), u)`.
pub fn verify_loops_nocert(g: &FlowGraph, parent: &[Option<usize>]) -> Verdict {
    (|| {
        let t = tree_with_parent_property(g, parent)?;
        let dg = compute_derived(g, &t).map_err(|e| match e {
            crate::derived::DerivedError::ParentPropertyViolation { tail, head, .. } => {
                Violation::ParentPropertyViolation { tail, head }
            }
        })?;
        let f = dfs(g);
        let lf = crate::loop_forest::compute_loop_forest(g, &f);
        let mut best = vec![TwoBest::default(); g.n()];
        for &w in f.reverse_postorder().iter().rev() {
            for &a in g.in_arcs(w) {
                if let Some(tail) = dg.tail_of(a) {
                    best[w].offer(Cand {
                        y: f.rpost(g.arc(a).0),
                        tail,
                        head: w,
                    });
                }
            }
            if let Some(h) = lf.h(w) {
                let TwoBest(b1, b2) = best[w];
                b1.into_iter().chain(b2).for_each(|c| best[h].offer(c));
            }
        }
        for &u in &f.reverse_postorder()[1..] {
            let fa = f.parent_arc(u).expect("non-root has a tree arc");
            if Some(g.arc(fa).0) == t.parent(u) {
                continue;
            }
            let fprime = dg.tail_of(fa).ok_or(Violation::MissingSiblingWitness(u))?;
            let TwoBest(b1, b2) = best[u];
            let ru = f.rpost(u);
            if !b1
                .into_iter()
                .chain(b2)
                .any(|c| c.y < ru && c.tail != fprime)
            {
                return Err(Violation::MissingSiblingWitness(u));
            }
        }
        Ok(())
    })()
    .into()
}
