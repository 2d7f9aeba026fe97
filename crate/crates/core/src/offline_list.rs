//! Off-line list maintenance: a script of insertions and order queries is
//! known in advance, so each item can be given an integer interval sized for
//! everything that will later be inserted next to it.

use std::fmt;

use thiserror::Error;

use crate::graph::NIL;

/// Decides between inserting after (`true`) or before (`false`) an anchor.
pub enum Test {
    Const(bool),
    /// Whether the first item currently follows the second.
    After(usize, usize),
    /// Arbitrary predicate over `after` queries on items already present.
    Custom(Box<dyn Fn(&dyn Fn(usize, usize) -> bool) -> bool>),
}

impl fmt::Debug for Test {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Test::Const(b) => write!(f, "Const({b})"),
            Test::After(x, y) => write!(f, "After({x}, {y})"),
            Test::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Debug)]
pub enum ListOp {
    /// Put the item first in the list.
    Insert(usize),
    /// Put `item` just after `anchor` if the test holds, just before otherwise.
    InsertRel {
        item: usize,
        anchor: usize,
        test: Test,
    },
    /// Query whether the first item follows the second.
    After(usize, usize),
}

/// A sequence of list operations over items `0..item_count`.
#[derive(Debug, Default)]
pub struct ListScript {
    items: usize,
    ops: Vec<ListOp>,
}

impl ListScript {
    pub fn new(items: usize) -> Self {
        ListScript {
            items,
            ops: Vec::new(),
        }
    }

    pub fn item_count(&self) -> usize {
        self.items
    }

    pub fn ops(&self) -> &[ListOp] {
        &self.ops
    }

    pub fn push(&mut self, op: ListOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn insert(&mut self, x: usize) -> &mut Self {
        self.push(ListOp::Insert(x))
    }

    pub fn insert_rel(&mut self, item: usize, anchor: usize, test: Test) -> &mut Self {
        self.push(ListOp::InsertRel { item, anchor, test })
    }

    pub fn after(&mut self, x: usize, y: usize) -> &mut Self {
        self.push(ListOp::After(x, y))
    }
}

/// Final 1-based positions and the answers to `After` operations, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListResult {
    pub rank: Vec<usize>,
    pub answers: Vec<bool>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ListError {
    #[error("malformed script at operation {op}: {reason}")]
    MalformedScript { op: usize, reason: &'static str },
}

fn malformed(op: usize, reason: &'static str) -> ListError {
    ListError::MalformedScript { op, reason }
}

/// Executes the script in time linear in its length.
pub fn run_script(script: &ListScript) -> Result<ListResult, ListError> {
    let n = script.items;
    let root = n;
    // Step 1: the insertion tree and its subtree sizes.
    let mut parent = vec![NIL; n];
    for (i, op) in script.ops.iter().enumerate() {
        let (x, p) = match *op {
            ListOp::Insert(x) => (x, root),
            ListOp::InsertRel { item, anchor, .. } if anchor < n => (item, anchor),
            ListOp::InsertRel { .. } => return Err(malformed(i, "anchor out of range")),
            ListOp::After(..) => continue,
        };
        if x >= n {
            return Err(malformed(i, "item out of range"));
        }
        if parent[x] != NIL {
            return Err(malformed(i, "item inserted twice"));
        }
        if p != root && (parent[p] == NIL || p == x) {
            return Err(malformed(i, "anchor not inserted earlier"));
        }
        parent[x] = p;
    }
    if parent.contains(&NIL) {
        return Err(malformed(script.ops.len(), "some item is never inserted"));
    }
    let mut size = vec![1usize; n + 1];
    size[root] = 0;
    for op in script.ops.iter().rev() {
        let x = match *op {
            ListOp::Insert(x) | ListOp::InsertRel { item: x, .. } => x,
            ListOp::After(..) => continue,
        };
        size[parent[x]] += size[x];
    }

    // Step 2: replay with disjoint intervals.
    let mut lo = vec![0usize; n + 1];
    let mut hi = vec![0usize; n + 1];
    let mut present = vec![false; n];
    hi[root] = size[root];
    let mut answers = Vec::new();
    for (i, op) in script.ops.iter().enumerate() {
        match op {
            ListOp::Insert(x) => {
                let x = *x;
                hi[root] -= size[x];
                lo[x] = hi[root] + 1;
                hi[x] = hi[root] + size[x];
                present[x] = true;
            }
            ListOp::InsertRel { item, anchor, test } => {
                let (x, y) = (*item, *anchor);
                let after = |a: usize, b: usize| {
                    a < n && b < n && present[a] && present[b] && lo[a] > hi[b]
                };
                let go_after = match test {
                    Test::Const(b) => *b,
                    Test::After(a, b) => {
                        if *a >= n || *b >= n || !present[*a] || !present[*b] {
                            return Err(malformed(i, "test refers to an absent item"));
                        }
                        after(*a, *b)
                    }
                    Test::Custom(f) => f(&after),
                };
                if go_after {
                    hi[y] -= size[x];
                    lo[x] = hi[y] + 1;
                    hi[x] = hi[y] + size[x];
                } else {
                    lo[x] = lo[y];
                    hi[x] = lo[y] + size[x] - 1;
                    lo[y] += size[x];
                }
                present[x] = true;
            }
            ListOp::After(x, y) => {
                let (x, y) = (*x, *y);
                if x >= n || y >= n || !present[x] || !present[y] {
                    return Err(malformed(i, "query refers to an absent item"));
                }
                answers.push(lo[x] > hi[y]);
            }
        }
    }

    // Step 3: every interval has shrunk to a single point.
    debug_assert!((0..n).all(|x| lo[x] == hi[x]));
    Ok(ListResult {
        rank: lo[..n].to_vec(),
        answers,
    })
}
