//! Flow graphs, depth-first search, and rooted trees with constant-time
//! ancestry tests.
//!
//! Vertices are dense `usize` ids in `0..n`. Parent maps use [`NIL`] for the
//! root internally and `Option<usize>` at the API surface.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

/// Sentinel for "no vertex" / "no arc" in internal arrays.
pub const NIL: usize = usize::MAX;

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("start vertex {start} out of range for {n} vertices")]
    InvalidStart { start: usize, n: usize },
    #[error("arc ({tail}, {head}) has an endpoint outside 0..{n}")]
    InvalidVertex { tail: usize, head: usize, n: usize },
    #[error("vertex {0} is not reachable from the start vertex")]
    UnreachableVertex(usize),
}

/// Compressed adjacency: for each vertex, a slice of arc indices.
#[derive(Clone, Debug, Default)]
pub(crate) struct Csr {
    offsets: Vec<usize>,
    items: Vec<usize>,
}

impl Csr {
    /// Groups `0..keys.len()` by `keys[i]`, keeping input order within a row.
    /// Keys `>= n` are left out.
    pub(crate) fn group(n: usize, keys: impl Iterator<Item = usize> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for k in keys.clone().filter(|&k| k < n) {
            offsets[k + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut items = vec![0usize; offsets[n]];
        for (i, k) in keys.enumerate().filter(|&(_, k)| k < n) {
            items[fill[k]] = i;
            fill[k] += 1;
        }
        Csr { offsets, items }
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[usize] {
        self.range(v, &self.items)
    }

    /// The part of a row-aligned array belonging to row `v`.
    #[inline]
    pub(crate) fn range<'a, T>(&self, v: usize, aligned: &'a [T]) -> &'a [T] {
        &aligned[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// An immutable directed graph with a designated start vertex from which
/// every vertex is reachable. Arcs entering the start vertex are dropped.
#[derive(Clone, Debug)]
pub struct FlowGraph {
    id: u64,
    n: usize,
    start: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Csr,
    in_adj: Csr,
    /// Head of each arc in `out_adj` order, tail of each in `in_adj` order.
    out_heads: Vec<usize>,
    in_tails: Vec<usize>,
}

/// Id translation produced by [`FlowGraph::new_pruned`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    to_new: Vec<usize>,
    to_old: Vec<usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            to_new: (0..n).collect(),
            to_old: (0..n).collect(),
        }
    }

    /// New id of an original vertex, or `None` if it was pruned.
    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.to_new.get(old).copied().filter(|&v| v != NIL)
    }

    pub fn old_id(&self, new: usize) -> usize {
        self.to_old[new]
    }

    pub fn original_len(&self) -> usize {
        self.to_new.len()
    }
}

impl FlowGraph {
    /// Builds a flow graph. Arcs entering `start` are removed; self-loops and
    /// parallel arcs are kept.
    pub fn new(
        n: usize,
        start: usize,
        raw_arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let arcs = Self::checked_arcs(n, start, raw_arcs)?;
        let g = Self::assemble(n, start, arcs);
        if let Some(v) = g.reached().iter().position(|&r| !r) {
            return Err(GraphError::UnreachableVertex(v));
        }
        Ok(g)
    }

    /// Like [`FlowGraph::new`], but drops vertices unreachable from `start`
    /// (and their arcs) and compacts the remaining ids in increasing order.
    pub fn new_pruned(
        n: usize,
        start: usize,
        raw_arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, VertexMap), GraphError> {
        let arcs = Self::checked_arcs(n, start, raw_arcs)?;
        let reach = reachable(n, start, &arcs);
        let mut to_new = vec![NIL; n];
        let mut to_old = Vec::new();
        for v in 0..n {
            if reach[v] {
                to_new[v] = to_old.len();
                to_old.push(v);
            }
        }
        let kept = arcs
            .into_iter()
            .filter(|&(u, v)| reach[u] && reach[v])
            .map(|(u, v)| (to_new[u], to_new[v]))
            .collect();
        let g = Self::assemble(to_old.len(), to_new[start], kept);
        Ok((g, VertexMap { to_new, to_old }))
    }

    fn checked_arcs(
        n: usize,
        start: usize,
        raw_arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Vec<(usize, usize)>, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if start >= n {
            return Err(GraphError::InvalidStart { start, n });
        }
        let mut arcs = Vec::new();
        for (tail, head) in raw_arcs {
            if tail >= n || head >= n {
                return Err(GraphError::InvalidVertex { tail, head, n });
            }
            if head != start {
                arcs.push((tail, head));
            }
        }
        Ok(arcs)
    }

    fn assemble(n: usize, start: usize, arcs: Vec<(usize, usize)>) -> Self {
        let out_adj = Csr::group(n, arcs.iter().map(|a| a.0));
        let in_adj = Csr::group(n, arcs.iter().map(|a| a.1));
        let out_heads = out_adj.items.iter().map(|&a| arcs[a].1).collect();
        let in_tails = in_adj.items.iter().map(|&a| arcs[a].0).collect();
        FlowGraph {
            id: NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed),
            n,
            start,
            arcs,
            out_adj,
            in_adj,
            out_heads,
            in_tails,
        }
    }

    /// The same graph with every vertex `v` renamed `perm[v]`, arcs kept in
    /// the same order.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> FlowGraph {
        assert_eq!(perm.len(), self.n, "permutation has the wrong length");
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::assemble(self.n, perm[self.start], arcs)
    }

    fn reached(&self) -> Vec<bool> {
        mark_reachable(self.n, self.start, |v| self.succ_slice(v))
    }

    /// Identity stamp shared by clones; used to pair derived structures with
    /// the graph that produced them.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    /// Indices of arcs leaving `v`, in input order.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        self.out_adj.row(v)
    }

    /// Indices of arcs entering `v`, in input order.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        self.in_adj.row(v)
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ_slice(v).iter().copied()
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred_slice(v).iter().copied()
    }

    /// Heads of the arcs in [`FlowGraph::out_arcs`], position for position.
    pub fn succ_slice(&self, v: usize) -> &[usize] {
        self.out_adj.range(v, &self.out_heads)
    }

    /// Tails of the arcs in [`FlowGraph::in_arcs`], position for position.
    pub fn pred_slice(&self, v: usize) -> &[usize] {
        self.in_adj.range(v, &self.in_tails)
    }

    /// Whether some arc `(tail, head)` exists.
    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.pred_slice(head).contains(&tail)
    }

    /// First arc `(tail, head)` in input order, if any.
    pub fn find_arc(&self, tail: usize, head: usize) -> Option<usize> {
        self.in_arcs(head)
            .iter()
            .copied()
            .find(|&a| self.arcs[a].0 == tail)
    }
}

fn reachable(n: usize, start: usize, arcs: &[(usize, usize)]) -> Vec<bool> {
    let out = Csr::group(n, arcs.iter().map(|a| a.0));
    let heads: Vec<usize> = out.items.iter().map(|&a| arcs[a].1).collect();
    mark_reachable(n, start, |v| out.range(v, &heads))
}

fn mark_reachable<'a>(n: usize, start: usize, succ: impl Fn(usize) -> &'a [usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in succ(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// A depth-first spanning tree of a flow graph together with its preorder,
/// reverse postorder and subtree sizes. Numbers are 1-based.
#[derive(Clone, Debug)]
pub struct DfsInfo {
    graph_id: u64,
    parent: Vec<usize>,
    parent_arc: Vec<usize>,
    pre: Vec<usize>,
    by_pre: Vec<usize>,
    rpost: Vec<usize>,
    by_rpost: Vec<usize>,
    size: Vec<usize>,
}

impl DfsInfo {
    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn len(&self) -> usize {
        self.pre.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn root(&self) -> usize {
        self.by_pre[0]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        Some(self.parent[v]).filter(|&p| p != NIL)
    }

    /// The tree arc entering `v`.
    pub fn parent_arc(&self, v: usize) -> Option<usize> {
        Some(self.parent_arc[v]).filter(|&a| a != NIL)
    }

    pub fn pre(&self, v: usize) -> usize {
        self.pre[v]
    }

    pub fn rpost(&self, v: usize) -> usize {
        self.rpost[v]
    }

    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// Vertex with preorder number `k` (1-based).
    pub fn vertex_at_pre(&self, k: usize) -> usize {
        self.by_pre[k - 1]
    }

    /// Vertex with reverse-postorder number `k` (1-based).
    pub fn vertex_at_rpost(&self, k: usize) -> usize {
        self.by_rpost[k - 1]
    }

    /// Vertices in preorder.
    pub fn preorder(&self) -> &[usize] {
        &self.by_pre
    }

    /// Vertices in reverse postorder.
    pub fn reverse_postorder(&self) -> &[usize] {
        &self.by_rpost
    }

    /// Whether `v` is an ancestor of `w` in the search tree (reflexive).
    pub fn is_ancestor(&self, v: usize, w: usize) -> bool {
        self.pre[v] <= self.pre[w] && self.pre[w] < self.pre[v] + self.size[v]
    }
}

/// Result of a depth-first traversal restricted to a subset of arcs.
pub(crate) struct Traversal {
    pub(crate) parent: Vec<usize>,
    pub(crate) parent_arc: Vec<usize>,
    pub(crate) preorder: Vec<usize>,
    pub(crate) postorder: Vec<usize>,
    /// Some arc led to a vertex still on the stack.
    pub(crate) saw_back_arc: bool,
}

/// Iterative depth-first search from `g.start()` following only arcs for
/// which `keep` holds, exploring out-arcs in input order.
pub(crate) fn traverse(g: &FlowGraph, keep: impl Fn(usize) -> bool) -> Traversal {
    let n = g.n();
    let mut parent = vec![NIL; n];
    let mut parent_arc = vec![NIL; n];
    let mut state = vec![0u8; n]; // 0 new, 1 on stack, 2 done
    let mut cursor = vec![0usize; n];
    let mut preorder = Vec::with_capacity(n);
    let mut postorder = Vec::with_capacity(n);
    let mut saw_back_arc = false;
    let s = g.start();
    let mut stack = vec![s];
    state[s] = 1;
    preorder.push(s);
    while let Some(&v) = stack.last() {
        let out = g.out_arcs(v);
        if cursor[v] < out.len() {
            let (a, w) = (out[cursor[v]], g.succ_slice(v)[cursor[v]]);
            cursor[v] += 1;
            if !keep(a) {
                continue;
            }
            match state[w] {
                0 => {
                    state[w] = 1;
                    parent[w] = v;
                    parent_arc[w] = a;
                    preorder.push(w);
                    stack.push(w);
                }
                1 => saw_back_arc = true,
                _ => {}
            }
        } else {
            state[v] = 2;
            postorder.push(v);
            stack.pop();
        }
    }
    Traversal {
        parent,
        parent_arc,
        preorder,
        postorder,
        saw_back_arc,
    }
}

/// Depth-first search from the start vertex, children explored in out-arc
/// order.
pub fn dfs(g: &FlowGraph) -> DfsInfo {
    let n = g.n();
    let t = traverse(g, |_| true);
    debug_assert_eq!(t.preorder.len(), n);
    let mut pre = vec![0; n];
    for (i, &v) in t.preorder.iter().enumerate() {
        pre[v] = i + 1;
    }
    let by_rpost: Vec<usize> = t.postorder.iter().rev().copied().collect();
    let mut rpost = vec![0; n];
    for (i, &v) in by_rpost.iter().enumerate() {
        rpost[v] = i + 1;
    }
    let mut size = vec![1; n];
    for &v in &t.postorder {
        let p = t.parent[v];
        if p != NIL {
            size[p] += size[v];
        }
    }
    DfsInfo {
        graph_id: g.id(),
        parent: t.parent,
        parent_arc: t.parent_arc,
        pre,
        by_pre: t.preorder,
        rpost,
        by_rpost,
        size,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("parent map has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("root {0} has a parent")]
    RootHasParent(usize),
    #[error("vertex {0} has no parent")]
    MissingParent(usize),
    #[error("parent of vertex {0} is out of range")]
    ParentOutOfRange(usize),
    #[error("parent chain from vertex {0} contains a cycle")]
    Cycle(usize),
    #[error("numbering is not a preorder at vertex {0}")]
    NotPreorder(usize),
}

/// A rooted tree over `0..n` given by its parent function, numbered in a
/// preorder (1-based) with subtree sizes, so ancestry tests take O(1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    pre: Vec<usize>,
    by_pre: Vec<usize>,
    size: Vec<usize>,
}

impl RootedTree {
    /// Builds the tree, visiting children in increasing id order.
    pub fn from_parents(root: usize, parents: &[Option<usize>]) -> Result<Self, TreeError> {
        let parent: Vec<usize> = parents.iter().map(|p| p.unwrap_or(NIL)).collect();
        Self::from_parent_array(root, parent)
    }

    /// Like [`RootedTree::from_parents`] with [`NIL`] marking the root.
    pub fn from_parent_array(root: usize, parent: Vec<usize>) -> Result<Self, TreeError> {
        check_tree_shape(root, &parent)?;
        let n = parent.len();
        let kids = Csr::group(
            n,
            (0..n).map(|v| if parent[v] == NIL { n } else { parent[v] }),
        );
        Ok(Self::number(root, parent, |v| kids.row(v).iter().copied()))
    }

    /// Builds the tree visiting children in the given per-vertex order.
    /// `children[p]` must list exactly the vertices whose parent is `p`.
    pub fn from_ordered_children(
        root: usize,
        parent: Vec<usize>,
        children: &[Vec<usize>],
    ) -> Result<Self, TreeError> {
        check_tree_shape(root, &parent)?;
        for (p, kids) in children.iter().enumerate() {
            for &c in kids {
                if c >= parent.len() || parent[c] != p {
                    return Err(TreeError::NotPreorder(c));
                }
            }
        }
        let t = Self::number(root, parent, |v| children[v].iter().copied());
        if t.by_pre.len() != t.parent.len() {
            let missing = (0..t.parent.len()).find(|&v| t.pre[v] == 0).unwrap_or(root);
            return Err(TreeError::NotPreorder(missing));
        }
        Ok(t)
    }

    /// Builds the tree and checks that `rank` (1-based, indexed by vertex)
    /// is one of its preorders.
    pub fn with_preorder(
        root: usize,
        parent: Vec<usize>,
        rank: &[usize],
    ) -> Result<Self, TreeError> {
        check_tree_shape(root, &parent)?;
        let n = parent.len();
        if rank.len() != n {
            return Err(TreeError::WrongLength {
                got: rank.len(),
                expected: n,
            });
        }
        let mut by_rank = vec![NIL; n];
        for (v, &r) in rank.iter().enumerate() {
            if r == 0 || r > n || by_rank[r - 1] != NIL {
                return Err(TreeError::NotPreorder(v));
            }
            by_rank[r - 1] = v;
        }
        let mut children = vec![Vec::new(); n];
        for &v in &by_rank {
            if v != root {
                children[parent[v]].push(v);
            }
        }
        let t = Self::number(root, parent, |v| children[v].iter().copied());
        if let Some(v) = (0..n).find(|&v| t.pre[v] != rank[v]) {
            return Err(TreeError::NotPreorder(v));
        }
        Ok(t)
    }

    fn number<I: Iterator<Item = usize>>(
        root: usize,
        parent: Vec<usize>,
        kids: impl Fn(usize) -> I,
    ) -> Self {
        let n = parent.len();
        let mut pre = vec![0; n];
        let mut by_pre = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            by_pre.push(v);
            pre[v] = by_pre.len();
            let start = stack.len();
            stack.extend(kids(v));
            stack[start..].reverse();
        }
        let mut size = vec![1; n];
        for &v in by_pre.iter().rev() {
            if parent[v] != NIL {
                size[parent[v]] += size[v];
            }
        }
        RootedTree {
            root,
            parent,
            pre,
            by_pre,
            size,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        Some(self.parent[v]).filter(|&p| p != NIL)
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(|v| self.parent(v)).collect()
    }

    pub(crate) fn parent_slice(&self) -> &[usize] {
        &self.parent
    }

    /// Preorder number of `v` (1-based).
    pub fn pre(&self, v: usize) -> usize {
        self.pre[v]
    }

    /// Vertex with preorder number `k` (1-based).
    pub fn vertex_at_pre(&self, k: usize) -> usize {
        self.by_pre[k - 1]
    }

    pub fn preorder(&self) -> &[usize] {
        &self.by_pre
    }

    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// `v` is an ancestor of `w` iff `pre(v) <= pre(w) < pre(v) + size(v)`.
    #[inline]
    pub fn is_ancestor(&self, v: usize, w: usize) -> bool {
        self.pre[v] <= self.pre[w] && self.pre[w] < self.pre[v] + self.size[v]
    }

    /// Nearest common ancestor by a two-finger walk on preorder numbers.
    pub fn nca(&self, mut v: usize, mut w: usize) -> usize {
        while v != w {
            if self.pre[v] > self.pre[w] {
                v = self.parent[v];
            } else {
                w = self.parent[w];
            }
        }
        v
    }

    /// Children of every vertex, in preorder.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut kids = vec![Vec::new(); self.len()];
        for &v in &self.by_pre {
            if self.parent[v] != NIL {
                kids[self.parent[v]].push(v);
            }
        }
        kids
    }

    /// Whether the root is the parent of every other vertex.
    pub fn is_flat(&self) -> bool {
        (0..self.len()).all(|v| v == self.root || self.parent[v] == self.root)
    }
}

/// Checks the parent array describes a single tree rooted at `root`.
pub(crate) fn check_tree_shape(root: usize, parent: &[usize]) -> Result<(), TreeError> {
    let n = parent.len();
    if root >= n {
        return Err(TreeError::WrongLength {
            got: n,
            expected: root + 1,
        });
    }
    if parent[root] != NIL {
        return Err(TreeError::RootHasParent(root));
    }
    for v in 0..n {
        if v != root {
            if parent[v] == NIL {
                return Err(TreeError::MissingParent(v));
            }
            if parent[v] >= n {
                return Err(TreeError::ParentOutOfRange(v));
            }
        }
    }
    // 0 unvisited, 1 on current walk, 2 known to reach the root.
    let mut mark = vec![0u8; n];
    mark[root] = 2;
    let mut walk = Vec::new();
    for v in 0..n {
        let mut x = v;
        while mark[x] == 0 {
            mark[x] = 1;
            walk.push(x);
            x = parent[x];
        }
        if mark[x] == 1 {
            return Err(TreeError::Cycle(x));
        }
        for y in walk.drain(..) {
            mark[y] = 2;
        }
    }
    Ok(())
}

/// Disjoint-set union with path compression and union by rank. Each set
/// carries a `label` naming its current representative vertex.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    label: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            label: (0..n).collect(),
        }
    }

    fn root(&mut self, mut x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Label of the set containing `x`.
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let r = self.root(x);
        self.label[r]
    }

    /// Merges the sets of `a` and `b`; the merged set is labelled `label`.
    pub(crate) fn union(&mut self, a: usize, b: usize, label: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        let r = if ra == rb {
            ra
        } else if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
            rb
        } else {
            self.parent[rb] = ra;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
            ra
        };
        self.label[r] = label;
    }
}

/// Nearest common ancestors in a depth-first tree for a batch of vertex
/// pairs `(y, m)` where `m` is visited no later than `y` in preorder.
/// Offline, near-linear.
pub(crate) fn offline_nca(dfs: &DfsInfo, queries: &[(usize, usize)]) -> Vec<usize> {
    let n = dfs.len();
    // queries grouped by the later-visited endpoint
    let by_vertex = Csr::group(n, queries.iter().map(|q| q.0));
    let mut answer = vec![NIL; queries.len()];
    let mut uf = UnionFind::new(n);
    let mut stack: Vec<usize> = Vec::new();
    for &x in dfs.preorder() {
        let p = dfs.parent[x];
        while let Some(&top) = stack.last() {
            if top == p {
                break;
            }
            stack.pop();
            let tp = dfs.parent[top];
            uf.union(top, tp, tp);
        }
        stack.push(x);
        for &q in by_vertex.row(x) {
            let m = queries[q].1;
            answer[q] = if dfs.is_ancestor(m, x) { m } else { uf.find(m) };
        }
    }
    answer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> FlowGraph {
        FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn permuted_renames_vertices_and_keeps_arc_order() {
        let g = FlowGraph::new(3, 0, [(0, 2), (2, 1), (0, 1)]).unwrap();
        let h = g.permuted(&[1, 2, 0]);
        assert_eq!(h.start(), 1);
        assert_eq!(h.arcs(), &[(1, 0), (0, 2), (1, 2)]);
        assert_eq!(h.succ_slice(1), &[0, 2]);
        assert_eq!(h.pred_slice(2), &[0, 1]);
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn permuted_rejects_repeats() {
        chain().permuted(&[0, 1, 1]);
    }

    fn diamond() -> FlowGraph {
        FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn minimal_graph() {
        let g = FlowGraph::new(2, 0, [(0, 1)]).unwrap();
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn arcs_into_start_are_dropped() {
        let g = FlowGraph::new(2, 0, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.arcs(), &[(0, 1)]);
    }

    #[test]
    fn unreachable_vertex_is_reported() {
        assert_eq!(
            FlowGraph::new(3, 0, [(0, 1)]).unwrap_err(),
            GraphError::UnreachableVertex(2)
        );
    }

    #[test]
    fn out_of_range_endpoint() {
        assert!(matches!(
            FlowGraph::new(2, 0, [(0, 5)]),
            Err(GraphError::InvalidVertex { .. })
        ));
        assert!(matches!(
            FlowGraph::new(2, 3, [(0, 1)]),
            Err(GraphError::InvalidStart { .. })
        ));
    }

    #[test]
    fn prune_compacts_ids() {
        let (g, map) = FlowGraph::new_pruned(4, 1, [(1, 3), (0, 1), (3, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.start(), 0);
        assert_eq!(g.arcs(), &[(0, 1)]);
        assert_eq!(map.new_id(0), None);
        assert_eq!(map.new_id(3), Some(1));
        assert_eq!(map.old_id(1), 3);
    }

    #[test]
    fn self_loops_and_parallel_arcs_kept() {
        let g = FlowGraph::new(2, 0, [(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(g.arc_count(), 3);
        assert_eq!(g.in_arcs(1), &[0, 1, 2]);
    }

    #[test]
    fn dfs_chain() {
        let d = dfs(&chain());
        assert_eq!((d.pre(0), d.pre(1), d.pre(2)), (1, 2, 3));
        assert_eq!(d.parent(1), Some(0));
        assert_eq!(d.parent(2), Some(1));
        assert_eq!(d.parent(0), None);
        assert_eq!(d.size(0), 3);
    }

    #[test]
    fn dfs_diamond_follows_arc_order() {
        let d = dfs(&diamond());
        assert_eq!(d.pre(1), 2);
        assert_eq!(d.pre(3), 3);
        assert_eq!(d.pre(2), 4);
        // postorder 3,1,2,0 reversed
        assert_eq!(d.reverse_postorder(), &[0, 2, 1, 3]);
    }

    #[test]
    fn tree_ancestry() {
        let t = RootedTree::from_parents(0, &[None, Some(0), Some(1)]).unwrap();
        assert!(t.is_ancestor(2, 2));
        assert!(t.is_ancestor(0, 2));
        assert!(!t.is_ancestor(2, 1));
        assert_eq!(t.nca(1, 2), 1);
        assert_eq!(t.nca(2, 2), 2);
        let star = RootedTree::from_parents(0, &[None, Some(0), Some(0)]).unwrap();
        assert_eq!(star.nca(1, 2), 0);
        assert!(star.is_flat());
        assert!(!t.is_flat());
    }

    #[test]
    fn tree_shape_errors() {
        assert_eq!(
            RootedTree::from_parents(0, &[None, Some(2), Some(1)]).unwrap_err(),
            TreeError::Cycle(1)
        );
        assert_eq!(
            RootedTree::from_parents(0, &[None, None]).unwrap_err(),
            TreeError::MissingParent(1)
        );
        assert_eq!(
            RootedTree::from_parents(0, &[Some(1), Some(0)]).unwrap_err(),
            TreeError::RootHasParent(0)
        );
        assert_eq!(
            RootedTree::from_parents(0, &[None, Some(7)]).unwrap_err(),
            TreeError::ParentOutOfRange(1)
        );
    }

    #[test]
    fn preorder_validation() {
        let parent = vec![NIL, 0, 0, 1];
        assert!(RootedTree::with_preorder(0, parent.clone(), &[1, 2, 4, 3]).is_ok());
        assert!(RootedTree::with_preorder(0, parent.clone(), &[1, 3, 2, 4]).is_ok());
        // 3 is under 1 but 2 sits between them
        assert!(RootedTree::with_preorder(0, parent, &[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn offline_nca_matches_walk() {
        let g = FlowGraph::new(
            6,
            0,
            [
                (0, 1),
                (1, 2),
                (1, 3),
                (0, 4),
                (4, 5),
                (3, 2),
                (5, 3),
                (5, 2),
            ],
        )
        .unwrap();
        let d = dfs(&g);
        let t =
            RootedTree::from_parents(0, &(0..6).map(|v| d.parent(v)).collect::<Vec<_>>()).unwrap();
        let qs: Vec<(usize, usize)> = g
            .arcs()
            .iter()
            .copied()
            .filter(|&(y, m)| d.pre(m) <= d.pre(y))
            .collect();
        let got = offline_nca(&d, &qs);
        for (i, &(y, m)) in qs.iter().enumerate() {
            assert_eq!(got[i], t.nca(y, m));
        }
    }
}
