//! On-line order maintenance over several disjoint lists.
//!
//! Every node carries an integer label that increases along its list, so
//! comparing two nodes of the same list is a label comparison. When an
//! insertion finds no free label, the smallest aligned label range around
//! it that is sparse enough is relabelled evenly. With ranges of size `2^i`
//! allowed to hold at most `(4/3)^i` nodes, each insertion costs
//! `O(log n)` amortized.

const SPAN_BITS: u32 = 62;
const SPAN: u64 = 1 << SPAN_BITS;
const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) struct OrderList {
    label: Vec<u64>,
    prev: Vec<usize>,
    next: Vec<usize>,
    present: Vec<bool>,
    /// Head sentinel of each list; sentinels are chained into one global
    /// list so that relabelling never needs to know list boundaries.
    heads: Vec<usize>,
    items: usize,
}

impl OrderList {
    /// Room for items `0..items` spread over `lists` initially empty lists.
    pub(crate) fn new(items: usize, lists: usize) -> Self {
        let total = items + lists;
        let mut ol = OrderList {
            label: vec![0; total],
            prev: vec![NONE; total],
            next: vec![NONE; total],
            present: vec![false; total],
            heads: (items..total).collect(),
            items,
        };
        let gap = SPAN / (lists as u64 + 1);
        for (i, &h) in ol.heads.iter().enumerate() {
            ol.label[h] = gap * i as u64;
            ol.present[h] = true;
            if i > 0 {
                let p = ol.heads[i - 1];
                ol.next[p] = h;
                ol.prev[h] = p;
            }
        }
        ol
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        x < self.items && self.present[x]
    }

    /// Whether `x` comes before `y`; both must be in the same list.
    pub(crate) fn precedes(&self, x: usize, y: usize) -> bool {
        debug_assert!(self.contains(x) && self.contains(y));
        self.label[x] < self.label[y]
    }

    pub(crate) fn insert_first(&mut self, list: usize, x: usize) {
        self.link_after(self.heads[list], x);
    }

    pub(crate) fn insert_after(&mut self, anchor: usize, x: usize) {
        debug_assert!(self.contains(anchor));
        self.link_after(anchor, x);
    }

    pub(crate) fn insert_before(&mut self, anchor: usize, x: usize) {
        debug_assert!(self.contains(anchor));
        self.link_after(self.prev[anchor], x);
    }

    fn upper(&self, a: usize) -> u64 {
        match self.next[a] {
            NONE => SPAN,
            b => self.label[b],
        }
    }

    fn link_after(&mut self, a: usize, x: usize) {
        assert!(
            x < self.items && !self.present[x],
            "item {x} inserted twice"
        );
        let b = self.next[a];
        self.prev[x] = a;
        self.next[x] = b;
        self.next[a] = x;
        if b != NONE {
            self.prev[b] = x;
        }
        self.present[x] = true;
        let (lo, hi) = (self.label[a], self.upper(x));
        if hi - lo >= 2 {
            self.label[x] = lo + (hi - lo) / 2;
        } else {
            self.label[x] = lo;
            self.relabel_around(a);
        }
    }

    /// Spreads out the nodes of the smallest sparse aligned range holding
    /// `a` and its successor, which currently share a label or are adjacent.
    fn relabel_around(&mut self, a: usize) {
        let key = self.label[a];
        let (mut first, mut last, mut count) = (a, self.next[a], 2u64);
        let mut limit = 1.0f64;
        for i in 1..=SPAN_BITS {
            limit *= 4.0 / 3.0;
            let size = 1u64 << i;
            let base = key & !(size - 1);
            let end = base + size;
            while self.prev[first] != NONE && self.label[self.prev[first]] >= base {
                first = self.prev[first];
                count += 1;
            }
            while self.next[last] != NONE && self.label[self.next[last]] < end {
                last = self.next[last];
                count += 1;
            }
            if (count as f64) <= limit || i == SPAN_BITS {
                let step = size / count;
                assert!(step >= 1, "order list label space exhausted");
                let mut cur = first;
                for k in 0..count {
                    self.label[cur] = base + k * step;
                    cur = self.next[cur];
                }
                return;
            }
        }
    }
}
