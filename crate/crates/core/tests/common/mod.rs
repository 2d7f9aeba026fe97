#![allow(dead_code)]

use domcert::generators::{generate, Family, GenSpec};
use domcert::offline_list::{ListScript, Test};
use domcert::FlowGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random-flow graphs with `n` in `[2, 200]` and `m` in `[n - 1, 4n]`.
pub fn random_flow_corpus(count: u64) -> Vec<FlowGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0_C0FFEE);
    (0..count)
        .map(|seed| {
            let n = rng.random_range(2..=200);
            let m = rng.random_range(n - 1..=4 * n);
            generate(&GenSpec::new(Family::RandomFlow, n, m, seed)).unwrap()
        })
        .collect()
}

pub fn reducible_corpus(count: u64) -> Vec<FlowGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    (0..count)
        .map(|seed| {
            let n = rng.random_range(2..=200);
            let m = rng.random_range(n - 1..=4 * n);
            generate(&GenSpec::new(Family::Reducible, n, m, 10_000 + seed)).unwrap()
        })
        .collect()
}

/// A random well-formed script over `items` items with about `ops` operations.
pub fn random_script(rng: &mut ChaCha8Rng, items: usize, ops: usize) -> ListScript {
    let mut s = ListScript::new(items);
    let mut order: Vec<usize> = (0..items).collect();
    for i in (1..items).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let queries = ops.saturating_sub(items);
    let mut present: Vec<usize> = Vec::with_capacity(items);
    let mut left = queries;
    for (k, &x) in order.iter().enumerate() {
        if present.is_empty() || rng.random_bool(0.05) {
            s.insert(x);
        } else {
            let anchor = present[rng.random_range(0..present.len())];
            let test = match rng.random_range(0..3) {
                0 => Test::Const(rng.random_bool(0.5)),
                1 => {
                    let a = present[rng.random_range(0..present.len())];
                    let b = present[rng.random_range(0..present.len())];
                    Test::After(a, b)
                }
                _ => {
                    let a = present[rng.random_range(0..present.len())];
                    let b = present[rng.random_range(0..present.len())];
                    Test::Custom(Box::new(move |after| !after(a, b)))
                }
            };
            s.insert_rel(x, anchor, test);
        }
        present.push(x);
        let share = if k + 1 == items {
            left
        } else {
            left / (items - k)
        };
        for _ in 0..share {
            let a = present[rng.random_range(0..present.len())];
            let b = present[rng.random_range(0..present.len())];
            s.after(a, b);
        }
        left -= share;
    }
    s
}
