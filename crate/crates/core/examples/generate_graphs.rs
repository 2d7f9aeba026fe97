//! Seeded graph families, written in the text format and timed through the
//! certified-dominators pipeline.

use domcert::cli::bench_stages;
use domcert::format::GraphFile;
use domcert::generators::{generate, Family, GenSpec};

fn main() {
    let small = generate(&GenSpec::new(Family::RandomDag, 6, 9, 1)).unwrap();
    print!("{}", GraphFile::from_graph(&small).write());

    for family in [Family::RandomFlow, Family::Reducible, Family::Ladder] {
        let g = generate(&GenSpec::new(family, 50_000, 200_000, 7)).unwrap();
        let stages = bench_stages(&g).unwrap();
        let total: f64 = stages.iter().map(|(_, t)| t.as_secs_f64()).sum();
        println!(
            "{family:?}: n {} m {} pipeline {:.1} ms",
            g.n(),
            g.arc_count(),
            total * 1e3
        );
    }
}
