//! The checker accepts a true certificate and pinpoints what is wrong with
//! tampered ones.

use domcert::generators::{generate, Family, GenSpec};
use domcert::lowhigh::compute_lowhigh;
use domcert::{compute_dominator_tree, verify, DomCertificate};

fn main() {
    let g = generate(&GenSpec::new(Family::RandomFlow, 12, 30, 4)).unwrap();
    let (d, _) = compute_dominator_tree(&g);
    let lh = compute_lowhigh(&g, &d).unwrap();
    let good = DomCertificate::new(&d, &lh);
    println!("true certificate: {:?}", verify(&g, &good).violation());

    // hang some vertex below a different one
    let v = (1..g.n())
        .find(|&v| d.parent(v) != Some(g.start()))
        .unwrap_or(1);
    let mut moved = good.clone();
    moved.parent[v] = Some(g.start());
    report("moved parent", verify(&g, &moved).violation());

    // reverse every child list of the start vertex
    let mut flipped = good.clone();
    let kids = lh.children(g.start()).to_vec();
    for (a, b) in kids.iter().zip(kids.iter().rev()).take(kids.len() / 2) {
        flipped.rank.swap(*a, *b);
    }
    report("flipped siblings", verify(&g, &flipped).violation());

    let mut short = good.clone();
    short.rank.pop();
    report("truncated", verify(&g, &short).violation());
}

fn report(what: &str, v: Option<domcert::Violation>) {
    match v {
        Some(v) => println!("{what}: REJECT {v}"),
        None => println!("{what}: ACCEPT"),
    }
}
