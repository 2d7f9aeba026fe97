//! Seeded graph families for tests and benchmarks, plus the checked-in
//! figure fixtures. The same [`GenSpec`] always yields the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::GraphFile;
use crate::graph::FlowGraph;
use crate::semidom::compute_dominator_tree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible spec: {0}")]
    InfeasibleSpec(String),
}

/// Hand-made example graphs stored under `fixtures/`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig6,
    Fig7,
    Fig10,
    Fig14,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig1,
        Figure::Fig2,
        Figure::Fig6,
        Figure::Fig7,
        Figure::Fig10,
        Figure::Fig14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig10 => "fig10",
            Figure::Fig14 => "fig14",
        }
    }

    pub fn from_name(name: &str) -> Option<Figure> {
        Figure::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn text(self) -> &'static str {
        match self {
            Figure::Fig1 => include_str!("../fixtures/fig1.txt"),
            Figure::Fig2 => include_str!("../fixtures/fig2.txt"),
            Figure::Fig6 => include_str!("../fixtures/fig6.txt"),
            Figure::Fig7 => include_str!("../fixtures/fig7.txt"),
            Figure::Fig10 => include_str!("../fixtures/fig10.txt"),
            Figure::Fig14 => include_str!("../fixtures/fig14.txt"),
        }
    }

    /// The parsed fixture, with vertex labels.
    pub fn file(self) -> GraphFile {
        GraphFile::parse(self.text()).expect("fixture parses")
    }

    pub fn graph(self) -> FlowGraph {
        self.file().to_graph().expect("fixture is a flow graph")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Random spanning arborescence from the start plus random extra arcs.
    RandomFlow,
    /// Arcs only go forward in a random vertex order.
    RandomDag,
    /// A random acyclic graph plus arcs into dominators of their tails.
    Reducible,
    /// Two cross-linked rails; `m` is ignored.
    Ladder,
    /// Every arc not entering the start; `m` is ignored.
    Complete,
    Figure(Figure),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, m: usize, seed: u64) -> Self {
        GenSpec { family, n, m, seed }
    }
}

fn infeasible(msg: impl Into<String>) -> GenError {
    GenError::InfeasibleSpec(msg.into())
}

pub fn generate(spec: &GenSpec) -> Result<FlowGraph, GenError> {
    let GenSpec { family, n, m, seed } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs = match family {
        Family::Figure(f) => return Ok(f.graph()),
        Family::Ladder => ladder(n)?,
        Family::Complete => complete(n)?,
        Family::RandomFlow => random_flow(n, m, &mut rng)?,
        Family::RandomDag => random_dag(n, m, &mut rng)?,
        Family::Reducible => return reducible(n, m, &mut rng),
    };
    Ok(FlowGraph::new(n, 0, arcs).expect("generated graphs are flow graphs"))
}

fn check_sizes(n: usize, m: usize) -> Result<(), GenError> {
    if n == 0 {
        return Err(infeasible("n must be positive"));
    }
    if m + 1 < n {
        return Err(infeasible(format!(
            "m = {m} arcs cannot span n = {n} vertices"
        )));
    }
    if n == 1 && m > 0 {
        return Err(infeasible("a single vertex admits no arcs"));
    }
    Ok(())
}

/// Vertex order with the start first and a random arborescence over it in
/// which every parent precedes its child.
fn arborescence(n: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let arcs = (1..n)
        .map(|i| (order[rng.random_range(0..i)], order[i]))
        .collect();
    (order, arcs)
}

fn random_flow(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>, GenError> {
    check_sizes(n, m)?;
    let (_, mut arcs) = arborescence(n, rng);
    while arcs.len() < m {
        arcs.push((rng.random_range(0..n), rng.random_range(1..n)));
    }
    arcs.shuffle(rng);
    Ok(arcs)
}

fn forward_arcs(order: &[usize], count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let n = order.len();
    (0..count)
        .map(|_| {
            let j = rng.random_range(1..n);
            (order[rng.random_range(0..j)], order[j])
        })
        .collect()
}

fn random_dag(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>, GenError> {
    check_sizes(n, m)?;
    let (order, mut arcs) = arborescence(n, rng);
    arcs.extend(forward_arcs(&order, m - (n - 1), rng));
    arcs.shuffle(rng);
    Ok(arcs)
}

fn reducible(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<FlowGraph, GenError> {
    check_sizes(n, m)?;
    let extra = m - (n - 1);
    let back = extra / 3;
    let (order, mut arcs) = arborescence(n, rng);
    arcs.extend(forward_arcs(&order, extra - back, rng));
    arcs.shuffle(rng);
    let dag = FlowGraph::new(n, 0, arcs.iter().copied()).expect("acyclic part is a flow graph");
    let (d, _) = compute_dominator_tree(&dag);
    // arcs from a vertex to one of its dominators, never the start
    let candidates: Vec<usize> = (1..n).filter(|&v| d.parent(v).is_some()).collect();
    for _ in 0..back {
        let v = candidates[rng.random_range(0..candidates.len())];
        let mut chain = vec![v];
        while let Some(p) = d.parent(*chain.last().unwrap()).filter(|&p| p != 0) {
            chain.push(p);
        }
        let w = chain[rng.random_range(0..chain.len())];
        let at = rng.random_range(0..=arcs.len());
        arcs.insert(at, (v, w));
    }
    Ok(FlowGraph::new(n, 0, arcs).expect("dominator arcs keep reachability"))
}

fn ladder(n: usize) -> Result<Vec<(usize, usize)>, GenError> {
    if n == 0 {
        return Err(infeasible("n must be positive"));
    }
    // rungs (1, 2), (3, 4), ...; each rail vertex feeds both of the next rung
    let mut arcs = Vec::new();
    for v in 1..n.min(3) {
        arcs.push((0, v));
    }
    for v in 1..n {
        let next = if v % 2 == 1 { v + 2 } else { v + 1 };
        for w in [next, if v % 2 == 1 { v + 3 } else { v + 2 }] {
            if w < n && w != v {
                arcs.push((v, w));
            }
        }
        if v % 2 == 1 && v + 1 < n {
            arcs.push((v + 1, v));
        }
    }
    Ok(arcs)
}

fn complete(n: usize) -> Result<Vec<(usize, usize)>, GenError> {
    if n == 0 {
        return Err(infeasible("n must be positive"));
    }
    Ok((0..n)
        .flat_map(|u| (1..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowhigh::is_reducible;

    #[test]
    fn deterministic_per_seed() {
        for family in [Family::RandomFlow, Family::RandomDag, Family::Reducible] {
            let a = generate(&GenSpec::new(family, 40, 120, 7)).unwrap();
            let b = generate(&GenSpec::new(family, 40, 120, 7)).unwrap();
            let c = generate(&GenSpec::new(family, 40, 120, 8)).unwrap();
            assert_eq!(a.arcs(), b.arcs());
            assert_ne!(a.arcs(), c.arcs());
            assert_eq!(a.arc_count(), 120);
        }
    }

    #[test]
    fn minimal_random_flow() {
        let g = generate(&GenSpec::new(Family::RandomFlow, 2, 1, 99)).unwrap();
        assert_eq!(g.arcs(), &[(0, 1)]);
    }

    #[test]
    fn infeasible_specs() {
        assert!(generate(&GenSpec::new(Family::RandomFlow, 5, 3, 0)).is_err());
        assert!(generate(&GenSpec::new(Family::RandomDag, 0, 0, 0)).is_err());
        assert!(generate(&GenSpec::new(Family::RandomDag, 1, 2, 0)).is_err());
    }

    #[test]
    fn reducible_family_is_reducible() {
        for seed in 0..30 {
            let g = generate(&GenSpec::new(Family::Reducible, 30, 90, seed)).unwrap();
            let (d, _) = compute_dominator_tree(&g);
            assert!(is_reducible(&g, &d));
        }
    }

    #[test]
    fn dag_family_is_acyclic() {
        let g = generate(&GenSpec::new(Family::RandomDag, 50, 200, 3)).unwrap();
        let t = crate::graph::traverse(&g, |_| true);
        assert!(!t.saw_back_arc);
    }

    #[test]
    fn fixed_families() {
        let l = generate(&GenSpec::new(Family::Ladder, 7, 0, 0)).unwrap();
        assert_eq!(l.n(), 7);
        let k = generate(&GenSpec::new(Family::Complete, 4, 0, 0)).unwrap();
        assert_eq!(k.arc_count(), 3 + 2 * 3);
        for f in Figure::ALL {
            assert_eq!(Figure::from_name(f.name()), Some(f));
            f.graph();
        }
    }
}
