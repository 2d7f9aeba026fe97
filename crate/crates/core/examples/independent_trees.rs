//! Two spanning trees whose root paths meet only at dominators: the
//! strongly independent pair built from a low-high order, and the pair
//! read off semi-dominators.

use domcert::compute_dominator_tree;
use domcert::format::GraphFile;
use domcert::generators::Figure;
use domcert::lowhigh::compute_lowhigh;
use domcert::oracle::{oracle_independent, oracle_strongly_independent};
use domcert::trees::{build_from_semidominators, build_strongly_independent, TreePair};

fn show(file: &GraphFile, pair: &TreePair) {
    for v in 0..pair.len() {
        if let (Some(b), Some(r)) = (pair.b(v), pair.r(v)) {
            println!(
                "  {:<2} blue {:<2} red {}",
                file.label(v),
                file.label(b),
                file.label(r)
            );
        }
    }
}

fn main() {
    let file = Figure::Fig1.file();
    let g = file.to_graph().unwrap();
    let (d, _) = compute_dominator_tree(&g);
    let lh = compute_lowhigh(&g, &d).unwrap();
    let strong = build_strongly_independent(&g, &d, &lh).unwrap();
    println!("from the low-high order:");
    show(&file, &strong);
    println!(
        "strongly independent: {}",
        oracle_strongly_independent(&g, &d, &strong)
    );

    let file = Figure::Fig10.file();
    let g = file.to_graph().unwrap();
    let (d, info) = compute_dominator_tree(&g);
    let pair = build_from_semidominators(&g, &info);
    println!("from semi-dominators:");
    show(&file, &pair);
    println!("independent: {}", oracle_independent(&g, &d, &pair));
}
