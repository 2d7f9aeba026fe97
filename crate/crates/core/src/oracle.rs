//! Slow reference implementations, written straight from the definitions.
//!
//! Everything here is quadratic or worse and exists to cross-check the fast
//! algorithms in tests. Nothing on a production path calls into this module.

use std::collections::VecDeque;

use crate::graph::{DfsInfo, FlowGraph, RootedTree, NIL};
use crate::offline_list::{ListOp, ListResult, ListScript, Test};
use crate::trees::TreePair;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    /// Whether `self ∩ other ⊆ within`.
    fn meet_within(&self, other: &BitSet, within: &BitSet) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .zip(&within.0)
            .all(|((a, b), c)| a & b & !c == 0)
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

/// Vertices reachable from the start, never entering `banned` and never
/// using arc `skip_arc`.
fn reach_avoiding(g: &FlowGraph, banned: usize, skip_arc: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    if g.start() == banned {
        return seen;
    }
    seen[g.start()] = true;
    let mut queue = VecDeque::from([g.start()]);
    while let Some(v) = queue.pop_front() {
        for &a in g.out_arcs(v) {
            let w = g.arc(a).1;
            if a != skip_arc && w != banned && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `dom[w]` holds every vertex that dominates `w`, including `w` and `s`.
fn dominator_sets(g: &FlowGraph) -> Vec<BitSet> {
    let n = g.n();
    let mut dom = vec![BitSet::new(n); n];
    for (w, set) in dom.iter_mut().enumerate() {
        set.insert(w);
    }
    for u in 0..n {
        let seen = reach_avoiding(g, u, NIL);
        for w in 0..n {
            if w != u && !seen[w] {
                dom[w].insert(u);
            }
        }
    }
    dom
}

/// Dominator tree from the definition: `u` dominates `w` iff deleting `u`
/// disconnects `w` from the start.
pub fn oracle_dominators(g: &FlowGraph) -> RootedTree {
    let n = g.n();
    let dom = dominator_sets(g);
    let depth: Vec<u32> = dom.iter().map(BitSet::count).collect();
    let mut parent = vec![NIL; n];
    for w in 0..n {
        if w == g.start() {
            continue;
        }
        // strict dominators form a chain; the deepest one is immediate
        parent[w] = (0..n)
            .filter(|&u| u != w && dom[w].contains(u))
            .max_by_key(|&u| depth[u])
            .expect("start dominates every vertex");
    }
    RootedTree::from_parent_array(g.start(), parent).expect("dominance is a tree")
}

/// Descendant sets of a tree by parent chasing, guarded against cycles.
fn descendants(root: usize, parent: &[usize]) -> Option<Vec<BitSet>> {
    let n = parent.len();
    let mut desc = vec![BitSet::new(n); n];
    for v in 0..n {
        let mut x = v;
        let mut steps = 0;
        loop {
            desc[x].insert(v);
            if x == root {
                break;
            }
            x = parent[x];
            steps += 1;
            if x >= n || steps > n {
                return None;
            }
        }
    }
    Some(desc)
}

/// Checks the low-high definition directly. `rank[v]` is 1-based.
pub fn oracle_is_low_high(g: &FlowGraph, d: &RootedTree, rank: &[usize]) -> bool {
    let n = g.n();
    if rank.len() != n || d.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &r in rank {
        if r == 0 || r > n || seen[r] {
            return false;
        }
        seen[r] = true;
    }
    let parent = d.parent_slice();
    let Some(desc) = descendants(d.root(), parent) else {
        return false;
    };
    // preorder: each subtree occupies a block of ranks starting at its root
    for v in 0..n {
        let size = desc[v].count() as usize;
        for w in 0..n {
            let inside = rank[v] <= rank[w] && rank[w] < rank[v] + size;
            if inside != desc[v].contains(w) {
                return false;
            }
        }
    }
    for v in 0..n {
        if v == d.root() {
            continue;
        }
        let tails: Vec<usize> = g.predecessors(v).collect();
        if tails.contains(&parent[v]) {
            continue;
        }
        let low = tails.iter().any(|&u| rank[u] < rank[v]);
        let high = tails
            .iter()
            .any(|&w| rank[w] > rank[v] && !desc[v].contains(w));
        if !(low && high) {
            return false;
        }
    }
    true
}

/// Root paths of every vertex in a parent map, or `None` if some chain does
/// not reach the start within `n` steps or uses a non-arc.
fn root_paths(g: &FlowGraph, parent: impl Fn(usize) -> Option<usize>) -> Option<Vec<BitSet>> {
    let n = g.n();
    let mut paths = vec![BitSet::new(n); n];
    for v in 0..n {
        let mut x = v;
        let mut steps = 0;
        paths[v].insert(x);
        while x != g.start() {
            let p = parent(x)?;
            if p >= n || !g.has_arc(p, x) || steps > n {
                return None;
            }
            x = p;
            steps += 1;
            paths[v].insert(x);
        }
    }
    Some(paths)
}

fn pair_paths(g: &FlowGraph, pair: &TreePair) -> Option<(Vec<BitSet>, Vec<BitSet>)> {
    if pair.len() != g.n() || pair.b(g.start()).is_some() || pair.r(g.start()).is_some() {
        return None;
    }
    let b = root_paths(g, |v| pair.b(v))?;
    let r = root_paths(g, |v| pair.r(v))?;
    Some((b, r))
}

fn tree_ancestor_sets(d: &RootedTree) -> Vec<BitSet> {
    let n = d.len();
    let mut anc = vec![BitSet::new(n); n];
    for (v, set) in anc.iter_mut().enumerate() {
        let mut x = v;
        set.insert(x);
        while let Some(p) = d.parent(x) {
            set.insert(p);
            x = p;
        }
    }
    anc
}

/// First vertex whose two root paths share a non-dominator.
pub fn oracle_independence_violation(
    g: &FlowGraph,
    d: &RootedTree,
    pair: &TreePair,
) -> Option<usize> {
    let Some((b, r)) = pair_paths(g, pair) else {
        return Some(g.start());
    };
    let dom = tree_ancestor_sets(d);
    (0..g.n()).find(|&v| !b[v].meet_within(&r[v], &dom[v]))
}

/// Whether both trees span `g` from the start and, for every `v`, the root
/// paths to `v` share only dominators of `v`.
pub fn oracle_independent(g: &FlowGraph, d: &RootedTree, pair: &TreePair) -> bool {
    oracle_independence_violation(g, d, pair).is_none()
}

/// First ordered pair `(v, w)` for which neither pairing of root paths
/// keeps to the common dominators.
pub fn oracle_strong_violation(
    g: &FlowGraph,
    d: &RootedTree,
    pair: &TreePair,
) -> Option<(usize, usize)> {
    let Some((b, r)) = pair_paths(g, pair) else {
        return Some((g.start(), g.start()));
    };
    let dom = tree_ancestor_sets(d);
    let n = g.n();
    for v in 0..n {
        for w in 0..n {
            let common = dom[v].intersect(&dom[w]);
            let one = b[v].meet_within(&r[w], &common);
            let two = r[v].meet_within(&b[w], &common);
            if !one && !two {
                return Some((v, w));
            }
        }
    }
    None
}

pub fn oracle_strongly_independent(g: &FlowGraph, d: &RootedTree, pair: &TreePair) -> bool {
    oracle_strong_violation(g, d, pair).is_none()
}

/// Indices of arcs lying on every path from the start to their head.
pub fn oracle_bridges(g: &FlowGraph) -> Vec<usize> {
    (0..g.arc_count())
        .filter(|&a| !reach_avoiding(g, NIL, a)[g.arc(a).1])
        .collect()
}

/// Vertices reachable from `u` through vertices numbered above `bound`,
/// not counting `u` itself.
fn high_region(g: &FlowGraph, dfs: &DfsInfo, u: usize, bound: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for x in g.successors(u) {
        if dfs.pre(x) > bound && !seen[x] {
            seen[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for y in g.successors(x) {
            if dfs.pre(y) > bound && !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Whether some high path from `u` to `v` ends with the arc `(x, v)`.
/// Requires `pre(u) < pre(v)`.
pub fn oracle_high_path_via(g: &FlowGraph, dfs: &DfsInfo, u: usize, x: usize, v: usize) -> bool {
    if !g.has_arc(x, v) {
        return false;
    }
    if x == u {
        return true;
    }
    dfs.pre(x) > dfs.pre(v) && high_region(g, dfs, u, dfs.pre(v))[x]
}

/// Semi-dominators by enumerating high paths: `sd(v)` is the vertex of least
/// preorder number with a high path to `v`.
pub fn oracle_semidominators(g: &FlowGraph, dfs: &DfsInfo) -> Vec<Option<usize>> {
    let n = g.n();
    let mut sd = vec![None; n];
    for v in 0..n {
        if v == g.start() {
            continue;
        }
        for k in 1..dfs.pre(v) {
            let u = dfs.vertex_at_pre(k);
            let region = high_region(g, dfs, u, dfs.pre(v));
            if g.predecessors(v).any(|x| x == u || region[x]) {
                sd[v] = Some(u);
                break;
            }
        }
    }
    sd
}

/// Derived tail of arc `(v, w)` by parent chasing: the ancestor of `v` whose
/// parent is `t(w)`, or `v` itself if `v = t(w)`. `None` when `w` is an
/// ancestor of `v` or `t(w)` is not.
pub fn naive_derived_tail(t: &RootedTree, v: usize, w: usize) -> Option<usize> {
    if t.is_ancestor(w, v) {
        return None;
    }
    let tw = t.parent(w)?;
    let mut x = v;
    loop {
        if x == tw {
            return Some(v);
        }
        match t.parent(x) {
            Some(p) if p == tw => return Some(x),
            Some(p) => x = p,
            None => return None,
        }
    }
}

/// Whether there are vertex-disjoint paths from `s1` and `s2` ending at `u`
/// and `v` in some assignment. For `u = v` the two paths may share `u`.
/// Max-flow with unit vertex capacities.
pub fn oracle_two_disjoint_paths(
    n: usize,
    arcs: &[(usize, usize)],
    s1: usize,
    s2: usize,
    u: usize,
    v: usize,
) -> bool {
    // node layout: vin = 2x, vout = 2x+1, source 2n, sink 2n+1
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for x in 0..n {
        let cap = if u == v && x == u { 2 } else { 1 };
        net.add(2 * x, 2 * x + 1, cap);
    }
    for &(a, b) in arcs {
        net.add(2 * a + 1, 2 * b, 1);
    }
    net.add(src, 2 * s1, 1);
    net.add(src, 2 * s2, 1);
    if u == v {
        net.add(2 * u + 1, sink, 2);
    } else {
        net.add(2 * u + 1, sink, 1);
        net.add(2 * v + 1, sink, 1);
    }
    net.max_flow(src, sink, 2) == 2
}

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, c: i32) {
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, src: usize, sink: usize, limit: i32) -> i32 {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![NIL; self.adj.len()];
            let mut queue = VecDeque::from([src]);
            let mut found = false;
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    found = true;
                    break;
                }
                for &e in &self.adj[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && y != src && via[y] == NIL {
                        via[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !found {
                break;
            }
            let mut x = sink;
            while x != src {
                let e = via[x];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                x = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Replays a list script on a plain vector with linear-scan insertion.
/// Returns `None` for malformed scripts.
pub fn naive_run_script(script: &ListScript) -> Option<ListResult> {
    let n = script.item_count();
    let mut list: Vec<usize> = Vec::new();
    let mut present = vec![false; n];
    let mut answers = Vec::new();
    let pos = |list: &Vec<usize>, x: usize| list.iter().position(|&y| y == x);
    for op in script.ops() {
        match op {
            ListOp::Insert(x) => {
                if *x >= n || present[*x] {
                    return None;
                }
                list.insert(0, *x);
                present[*x] = true;
            }
            ListOp::InsertRel { item, anchor, test } => {
                if *item >= n || *anchor >= n || present[*item] || !present[*anchor] {
                    return None;
                }
                let after = |x: usize, y: usize| match (pos(&list, x), pos(&list, y)) {
                    (Some(i), Some(j)) => i > j,
                    _ => false,
                };
                let t = match test {
                    Test::Const(b) => *b,
                    Test::After(x, y) => after(*x, *y),
                    Test::Custom(f) => f(&after),
                };
                let at = pos(&list, *anchor)?;
                list.insert(if t { at + 1 } else { at }, *item);
                present[*item] = true;
            }
            ListOp::After(x, y) => {
                let (i, j) = (pos(&list, *x)?, pos(&list, *y)?);
                answers.push(i > j);
            }
        }
    }
    if present.iter().any(|&p| !p) {
        return None;
    }
    let mut rank = vec![0; n];
    for (i, &x) in list.iter().enumerate() {
        rank[x] = i + 1;
    }
    Some(ListResult { rank, answers })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FlowGraph {
        // s=0, a=1, b=2, t=3
        FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn dominators_of_chain_and_diamond() {
        let c = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        let d = oracle_dominators(&c);
        assert_eq!(d.parents(), vec![None, Some(0), Some(1)]);
        let d = oracle_dominators(&diamond());
        assert_eq!(d.parent(3), Some(0));
    }

    #[test]
    fn low_high_on_diamond() {
        let g = diamond();
        let d = oracle_dominators(&g);
        // ranks indexed by vertex s, a, b, t
        assert!(oracle_is_low_high(&g, &d, &[1, 2, 4, 3]));
        assert!(!oracle_is_low_high(&g, &d, &[1, 2, 3, 4]));
        assert!(!oracle_is_low_high(&g, &d, &[1, 2, 2, 3]));
    }

    #[test]
    fn low_high_on_chain() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        let d = oracle_dominators(&g);
        assert!(oracle_is_low_high(&g, &d, &[1, 2, 3]));
    }

    #[test]
    fn independence_on_diamond() {
        let g = diamond();
        let d = oracle_dominators(&g);
        let good = TreePair::from_parents(
            &g,
            &[None, Some(0), Some(0), Some(1)],
            &[None, Some(0), Some(0), Some(2)],
        )
        .unwrap();
        assert!(oracle_independent(&g, &d, &good));
        let same = TreePair::from_parents(
            &g,
            &[None, Some(0), Some(0), Some(1)],
            &[None, Some(0), Some(0), Some(1)],
        )
        .unwrap();
        assert!(!oracle_independent(&g, &d, &same));
        assert_eq!(oracle_independence_violation(&g, &d, &same), Some(3));
    }

    #[test]
    fn chain_pair_is_independent() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        let d = oracle_dominators(&g);
        let p = [None, Some(0), Some(1)];
        let pair = TreePair::from_parents(&g, &p, &p).unwrap();
        assert!(oracle_independent(&g, &d, &pair));
        assert!(oracle_strongly_independent(&g, &d, &pair));
    }

    #[test]
    fn bridges() {
        let chain = FlowGraph::new(3, 0, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(oracle_bridges(&chain), vec![0, 1]);
        assert_eq!(oracle_bridges(&diamond()), vec![0, 1]);
        let par = FlowGraph::new(2, 0, [(0, 1), (0, 1)]).unwrap();
        assert!(oracle_bridges(&par).is_empty());
    }

    #[test]
    fn semidominators_with_shortcut() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = crate::graph::dfs(&g);
        assert_eq!(oracle_semidominators(&g, &f), vec![None, Some(0), Some(0)]);
        assert!(oracle_high_path_via(&g, &f, 0, 0, 2));
        assert!(!oracle_high_path_via(&g, &f, 0, 1, 2));
    }

    #[test]
    fn derived_tail_by_chasing() {
        // 0 -> {1, 2}, 1 -> 3 ; arc (3, 2) derives to (1, 2)
        let t = RootedTree::from_parents(0, &[None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(naive_derived_tail(&t, 3, 2), Some(1));
        assert_eq!(naive_derived_tail(&t, 0, 2), Some(0));
        assert_eq!(naive_derived_tail(&t, 3, 1), None);
    }

    #[test]
    fn disjoint_paths_two_arms() {
        // s1=0 -> x=2, s2=1 -> y=3
        let arcs = [(0, 2), (1, 3)];
        assert!(oracle_two_disjoint_paths(4, &arcs, 0, 1, 2, 3));
        assert!(!oracle_two_disjoint_paths(4, &arcs, 0, 1, 2, 0));
        // s2 cannot reach s1
        assert!(!oracle_two_disjoint_paths(4, &arcs, 0, 1, 0, 0));
        let joined = [(0, 2), (1, 3), (1, 2)];
        assert!(oracle_two_disjoint_paths(4, &joined, 0, 1, 2, 2));
    }
}
