//! Semi-dominators, relative dominators and immediate dominators by the
//! simple Lengauer–Tarjan method (path compression without balancing).

use crate::graph::{dfs, DfsInfo, FlowGraph, RootedTree, NIL};

/// Per-vertex semi-dominator `sd`, relative dominator `rd` and last-arc tail
/// `g`, all with respect to the depth-first tree in `dfs`.
#[derive(Clone, Debug)]
pub struct SemiDomInfo {
    dfs: DfsInfo,
    sd: Vec<usize>,
    rd: Vec<usize>,
    g: Vec<usize>,
    g_arc: Vec<usize>,
}

impl SemiDomInfo {
    pub fn dfs(&self) -> &DfsInfo {
        &self.dfs
    }

    /// Vertex of least preorder number with a high path to `v`.
    pub fn sd(&self, v: usize) -> Option<usize> {
        Some(self.sd[v]).filter(|&x| x != NIL)
    }

    /// Vertex on `F(sd(v), v]` of minimum `sd`, nearest the root on ties.
    pub fn rd(&self, v: usize) -> Option<usize> {
        Some(self.rd[v]).filter(|&x| x != NIL)
    }

    /// Tail of an arc that is last on a high path from `sd(v)` to `v`.
    pub fn g(&self, v: usize) -> Option<usize> {
        Some(self.g[v]).filter(|&x| x != NIL)
    }

    /// Index of the arc `(g(v), v)`.
    pub fn g_arc(&self, v: usize) -> Option<usize> {
        Some(self.g_arc[v]).filter(|&x| x != NIL)
    }

    pub(crate) fn sd_slice(&self) -> &[usize] {
        &self.sd
    }

    pub(crate) fn rd_slice(&self) -> &[usize] {
        &self.rd
    }
}

/// Eval/link forest over preorder numbers `1..=n`; slot 0 is unused.
struct Forest {
    ancestor: Vec<usize>,
    label: Vec<usize>,
    stack: Vec<usize>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            ancestor: vec![0; n + 1],
            label: (0..=n).collect(),
            stack: Vec::new(),
        }
    }

    /// Label with least `(semi, number)` on the forest path from `v` up to,
    /// but not including, its tree root.
    fn eval(&mut self, v: usize, semi: &[usize]) -> usize {
        if self.ancestor[v] == 0 {
            return v;
        }
        let key = |x: usize| (semi[x], x);
        let mut x = v;
        while self.ancestor[self.ancestor[x]] != 0 {
            self.stack.push(x);
            x = self.ancestor[x];
        }
        while let Some(y) = self.stack.pop() {
            let a = self.ancestor[y];
            if key(self.label[a]) < key(self.label[y]) {
                self.label[y] = self.label[a];
            }
            self.ancestor[y] = self.ancestor[a];
        }
        self.label[v]
    }
}

/// Semi-dominators and relative dominators in O(m log n).
pub fn compute_semidominators(g: &FlowGraph, dfs: &DfsInfo) -> SemiDomInfo {
    assert_eq!(
        dfs.graph_id(),
        g.id(),
        "search tree belongs to another graph"
    );
    let n = g.n();
    let pre = |v: usize| dfs.pre(v);
    let parent_pre: Vec<usize> = (1..=n)
        .map(|k| dfs.parent(dfs.vertex_at_pre(k)).map_or(0, pre))
        .collect();
    let mut semi: Vec<usize> = (0..=n).collect();
    let mut arc_of = vec![NIL; n + 1];
    let mut rd = vec![0usize; n + 1];
    let mut bucket_head = vec![0usize; n + 1];
    let mut bucket_next = vec![0usize; n + 1];
    let mut forest = Forest::new(n);

    for w in (2..=n).rev() {
        let wv = dfs.vertex_at_pre(w);
        for (&a, &t) in g.in_arcs(wv).iter().zip(g.pred_slice(wv)) {
            let u = forest.eval(pre(t), &semi);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
                arc_of[w] = a;
            }
        }
        let p = parent_pre[w - 1];
        forest.ancestor[w] = p;
        bucket_next[w] = bucket_head[semi[w]];
        bucket_head[semi[w]] = w;
        let mut v = std::mem::take(&mut bucket_head[p]);
        while v != 0 {
            rd[v] = forest.eval(v, &semi);
            v = bucket_next[v];
        }
    }

    let mut sd = vec![NIL; n];
    let mut rdv = vec![NIL; n];
    let mut gv = vec![NIL; n];
    let mut g_arc = vec![NIL; n];
    for w in 2..=n {
        let v = dfs.vertex_at_pre(w);
        sd[v] = dfs.vertex_at_pre(semi[w]);
        rdv[v] = dfs.vertex_at_pre(rd[w]);
        g_arc[v] = arc_of[w];
        gv[v] = g.arc(arc_of[w]).0;
    }
    SemiDomInfo {
        dfs: dfs.clone(),
        sd,
        rd: rdv,
        g: gv,
        g_arc,
    }
}

/// Immediate dominators from `d(v) = sd(v)` if `sd(v) = sd(rd(v))`, else
/// `d(rd(v))`, applied in increasing preorder.
pub fn dominators_from_semis(info: &SemiDomInfo) -> RootedTree {
    let f = &info.dfs;
    let n = f.len();
    let mut d = vec![NIL; n];
    for k in 2..=n {
        let v = f.vertex_at_pre(k);
        let r = info.rd[v];
        d[v] = if info.sd[r] == info.sd[v] {
            info.sd[v]
        } else {
            d[r]
        };
    }
    RootedTree::from_parent_array(f.root(), d).expect("dominators form a tree")
}

/// Depth-first search, semi-dominators and the dominator tree in one call.
pub fn compute_dominator_tree(g: &FlowGraph) -> (RootedTree, SemiDomInfo) {
    let f = dfs(g);
    let info = compute_semidominators(g, &f);
    (dominators_from_semis(&info), info)
}

/// A variant relative dominator: the deepest `x` on `F(sd(v), v]` with
/// `sd(x) < sd(v)`, or `v` if none. Yields correct dominators but not, in
/// general, independent trees. Quadratic; for experiments only.
pub fn alternative_relative_dominators(info: &SemiDomInfo) -> Vec<Option<usize>> {
    let f = &info.dfs;
    (0..f.len())
        .map(|v| {
            let sv = info.sd(v)?;
            let mut x = v;
            while x != sv {
                if f.pre(info.sd[x]) < f.pre(sv) {
                    return Some(x);
                }
                x = f.parent(x).expect("sd(v) is an ancestor of v");
            }
            Some(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_with_shortcut() {
        let g = FlowGraph::new(3, 0, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (d, info) = compute_dominator_tree(&g);
        assert_eq!(info.sd(1), Some(0));
        assert_eq!(info.sd(2), Some(0));
        assert_eq!(info.g(2), Some(0));
        assert_eq!(info.rd(2), Some(1));
        assert_eq!(d.parent(2), Some(0));
    }

    #[test]
    fn pure_chain() {
        let g = FlowGraph::new(4, 0, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (d, info) = compute_dominator_tree(&g);
        for v in 1..4 {
            assert_eq!(info.sd(v), Some(v - 1));
            assert_eq!(info.g(v), Some(v - 1));
            assert_eq!(d.parent(v), Some(v - 1));
        }
    }

    #[test]
    fn diamond() {
        let g = FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (d, _) = compute_dominator_tree(&g);
        assert_eq!(d.parents(), vec![None, Some(0), Some(0), Some(0)]);
    }

    #[test]
    fn rd_ties_prefer_the_shallowest() {
        // 0 -> 1 -> 2 -> 3, with 0 -> 2 and 0 -> 3: sd(2) = sd(3) = 0
        let g = FlowGraph::new(4, 0, [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3)]).unwrap();
        let (_, info) = compute_dominator_tree(&g);
        // candidates on F(0, 3] are 1, 2, 3 all with sd = 0
        assert_eq!(info.rd(3), Some(1));
    }
}
