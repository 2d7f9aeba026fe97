use super::order_list::OrderList;
use super::{check_size, ChildListBuilder, LowHighError, LowHighOrder, RelTest};
use crate::derived::arc_tails;
use crate::graph::{Csr, FlowGraph, RootedTree, NIL};
use crate::loop_forest::LoopForest;

/// What happened when one vertex was placed. Arcs are derived arcs given as
/// `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopStep {
    pub vertex: usize,
    pub pivot: (usize, usize),
    pub test: Option<(usize, usize)>,
    /// Sibling that `vertex` was inserted next to; `None` when it went first.
    pub beside: Option<usize>,
    /// Interval path from a forest child of `vertex` back to `vertex`.
    pub path: Vec<usize>,
    /// Pivot arcs handed to vertices on `path`, starting with its first.
    pub new_pivots: Vec<(usize, (usize, usize))>,
}

#[derive(Clone, Copy)]
pub(crate) struct Cand {
    /// Reverse-postorder number of the original tail.
    pub(crate) y: usize,
    pub(crate) tail: usize,
    pub(crate) head: usize,
}

/// Best entering arc by original tail, and best among those whose derived
/// tail differs from the first's.
#[derive(Clone, Copy, Default)]
pub(crate) struct TwoBest(pub(crate) Option<Cand>, pub(crate) Option<Cand>);

impl TwoBest {
    pub(crate) fn offer(&mut self, c: Cand) {
        match self.0 {
            None => self.0 = Some(c),
            Some(b1) if c.y < b1.y => {
                if c.tail != b1.tail {
                    self.1 = Some(b1);
                }
                self.0 = Some(c);
            }
            Some(b1) => {
                if c.tail != b1.tail && self.1.is_none_or(|b2| c.y < b2.y) {
                    self.1 = Some(c);
                }
            }
        }
    }
}

/// Low-high order from a loop nesting forest.
///
/// Vertices are placed in increasing reverse postorder. Each vertex `u`
/// carries a pivot arc and, unless the pivot comes from `d(u)`, a test arc;
/// together they fix the side of the pivot's tail on which `u` goes. When
/// the pivot enters a loop below `u`, the interval path from that loop back
/// to `u` hands pivot arcs down to the vertices along it.
///
/// Two refinements keep every loop on the correct side of its header:
/// a handed-down pivot whose tail is `f'(u)` is ignored, and the first
/// vertex `z` of an expanded loop is placed on the far side of the header,
/// next to `f'(z)` if that is already there and next to the header
/// otherwise, rather than next to the pivot's tail.
pub fn lowhigh_from_loops(
    g: &FlowGraph,
    d: &RootedTree,
    lf: &LoopForest,
) -> Result<LowHighOrder, LowHighError> {
    run(g, d, lf, None)
}

/// Like [`lowhigh_from_loops`], also reporting each placement.
pub fn lowhigh_from_loops_traced(
    g: &FlowGraph,
    d: &RootedTree,
    lf: &LoopForest,
) -> Result<(LowHighOrder, Vec<LoopStep>), LowHighError> {
    let mut trace = Vec::new();
    let lh = run(g, d, lf, Some(&mut trace))?;
    Ok((lh, trace))
}

/// Child lists under construction: the off-line script that produces the
/// final order, mirrored in an on-line order so that placement decisions
/// can look at the current sibling order.
struct Lists<'a> {
    d: &'a RootedTree,
    script: ChildListBuilder<'a>,
    now: OrderList,
}

impl<'a> Lists<'a> {
    fn new(d: &'a RootedTree) -> Self {
        Lists {
            d,
            script: ChildListBuilder::new(d),
            now: OrderList::new(d.len(), d.len()),
        }
    }

    fn parent(&self, u: usize) -> usize {
        self.d.parent(u).expect("root is never placed")
    }

    fn insert_first(&mut self, u: usize) {
        self.script.insert_first(u);
        self.now.insert_first(self.parent(u), u);
    }

    /// Whether `t` is `d(u)` or lies after `a`; `d(u)` counts as first.
    fn follows(&self, u: usize, t: usize, a: usize) -> bool {
        t != self.parent(u) && (t == a || self.now.precedes(a, t))
    }

    /// Inserts `u` next to its sibling `a`, on the side where `t` lies.
    fn insert_toward(&mut self, u: usize, a: usize, t: usize) -> Result<(), LowHighError> {
        let test = if t == self.parent(u) {
            RelTest::Const(false)
        } else if t == a {
            RelTest::Const(true)
        } else {
            RelTest::After(t, a)
        };
        let after = self.follows(u, t, a);
        self.script.insert_rel(u, a, test)?;
        if after {
            self.now.insert_after(a, u);
        } else {
            self.now.insert_before(a, u);
        }
        Ok(())
    }

    /// Whether sibling `q` lies strictly on the `t` side of `a`.
    fn on_side(&self, q: usize, a: usize, t: usize) -> bool {
        let p = self.parent(a);
        if q == a || self.d.parent(q) != Some(p) || !self.now.contains(q) {
            return false;
        }
        let q_after = self.now.precedes(a, q);
        if t == p {
            !q_after
        } else {
            q_after == (t == a || self.now.precedes(a, t))
        }
    }
}

fn run(
    g: &FlowGraph,
    d: &RootedTree,
    lf: &LoopForest,
    mut trace: Option<&mut Vec<LoopStep>>,
) -> Result<LowHighOrder, LowHighError> {
    check_size(g, d)?;
    let f = lf.dfs();
    if f.graph_id() != g.id() || lf.len() != g.n() {
        return Err(LowHighError::ForestMismatch);
    }
    let n = g.n();
    let tails = arc_tails(g, d)?;
    let tail_of = |a: usize| Some(tails[a]).filter(|&x| x != NIL);
    let header = lf.header_slice();
    let out_target = lf.out_target_slice();
    let order = f.reverse_postorder();

    let mut fprime = vec![NIL; n];
    for &u in &order[1..] {
        let a = f.parent_arc(u).expect("non-root has a tree arc");
        fprime[u] = tail_of(a).ok_or(LowHighError::MissingTestArc(u))?;
    }

    // Forest children in increasing reverse postorder, then a preorder of
    // the forest so a child containing a given descendant can be found by
    // binary search.
    let kid_rows = Csr::group(n, order.iter().map(|&v| header[v]));
    let kids = |u: usize| kid_rows.row(u).iter().map(|&i| order[i]);
    let mut hpre = vec![0usize; n];
    let mut hsize = vec![1usize; n];
    let mut counter = 0;
    let mut stack = Vec::new();
    for &r in order.iter().filter(|&&v| header[v] == NIL) {
        stack.push(r);
        while let Some(v) = stack.pop() {
            hpre[v] = counter;
            counter += 1;
            stack.extend(kids(v).rev());
        }
    }
    for &v in order.iter().rev() {
        if header[v] != NIL {
            hsize[header[v]] += hsize[v];
        }
    }

    // Test-arc candidates per forest subtree, merged bottom-up.
    let mut best = vec![TwoBest::default(); n];
    for &w in order.iter().rev() {
        for &a in g.in_arcs(w) {
            if let Some(tail) = tail_of(a) {
                best[w].offer(Cand {
                    y: f.rpost(g.arc(a).0),
                    tail,
                    head: w,
                });
            }
        }
        if header[w] != NIL {
            let TwoBest(b1, b2) = best[w];
            let parent = &mut best[header[w]];
            b1.into_iter().chain(b2).for_each(|c| parent.offer(c));
        }
    }

    let mut pivot: Vec<Option<(usize, usize)>> = vec![None; n];
    // For the first vertex of an expanded loop: the loop's header and the
    // tail whose side of the header the vertex must land on.
    let mut far_side: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut lists = Lists::new(d);
    let tracing = trace.is_some();
    for &u in &order[1..] {
        let du = d.parent(u).expect("non-root has a parent");
        let fu = (fprime[u], u);
        // a pivot sharing its tail with the tree arc cannot bracket u
        let (mut x, mut v) = pivot[u].filter(|p| p.0 != fprime[u]).unwrap_or(fu);
        let mut step = LoopStep {
            vertex: u,
            pivot: (x, v),
            test: None,
            beside: None,
            path: Vec::new(),
            new_pivots: Vec::new(),
        };
        if (x, v) == (du, u) {
            lists.insert_first(u);
            if let Some(t) = trace.as_deref_mut() {
                t.push(step);
            }
            continue;
        }
        let (mut y, mut w) = if (x, v) != fu {
            fu
        } else {
            let ru = f.rpost(u);
            let TwoBest(b1, b2) = best[u];
            let c = b1
                .into_iter()
                .chain(b2)
                .find(|c| c.y < ru && c.tail != fprime[u])
                .ok_or(LowHighError::MissingTestArc(u))?;
            (c.tail, c.head)
        };
        step.test = Some((y, w));
        match far_side[u]
            .filter(|&(h, t)| d.parent(h) == Some(du) && (t == du || d.parent(t) == Some(du)))
        {
            Some((h, t)) => {
                // stay on the far side of the loop header, next to f'(u)
                // when that is already there
                let a = if lists.on_side(fprime[u], h, t) {
                    fprime[u]
                } else {
                    h
                };
                lists.insert_toward(u, a, t)?;
                step.beside = Some(a);
            }
            None if x == du => lists.insert_first(u),
            None => {
                lists.insert_toward(u, x, y)?;
                step.beside = Some(x);
            }
        }
        if (y, w) != fu {
            std::mem::swap(&mut x, &mut y);
            std::mem::swap(&mut v, &mut w);
        }
        if v != u {
            // forest child of u whose subtree holds v
            let in_subtree =
                |a: usize, b: usize| hpre[a] <= hpre[b] && hpre[b] < hpre[a] + hsize[a];
            if !in_subtree(u, v) {
                return Err(LowHighError::ForestMismatch);
            }
            let ks = kid_rows.row(u);
            let z = order[ks[ks.partition_point(|&i| hpre[order[i]] <= hpre[v]) - 1]];
            pivot[z] = Some((x, v));
            far_side[z] = Some((u, x));
            if tracing {
                step.new_pivots.push((z, (x, v)));
                step.path.push(z);
            }
            let (mut cur, mut steps) = (z, 0);
            while cur != u {
                let next = out_target[cur];
                steps += 1;
                if next == NIL || steps > n {
                    return Err(LowHighError::ForestMismatch);
                }
                if next != u {
                    let a = lf.out_origin(cur).expect("interval arc has an origin");
                    let arc = tail_of(a)
                        .map(|t| (t, g.arc(a).1))
                        .ok_or(LowHighError::MissingTestArc(next))?;
                    pivot[next] = Some(arc);
                    if tracing {
                        step.new_pivots.push((next, arc));
                    }
                }
                if tracing {
                    step.path.push(next);
                }
                cur = next;
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(step);
        }
    }
    Ok(lists.script.finish()?)
}
