//! Dominator tree of a small labelled flow graph plus the low-high order
//! that certifies it.

use domcert::format::{CertFile, GraphFile};
use domcert::generators::Figure;
use domcert::lowhigh::compute_lowhigh;
use domcert::{compute_dominator_tree, verify, DomCertificate};

fn main() {
    let file: GraphFile = Figure::Fig1.file();
    let g = file.to_graph().expect("fixture is a flow graph");
    let (d, _) = compute_dominator_tree(&g);
    let lh = compute_lowhigh(&g, &d).expect("every flow graph has a low-high order");

    println!("vertices in low-high order:");
    for v in lh.order() {
        let parent = d.parent(v).map_or("-".to_string(), |p| file.label(p));
        println!("  {:>2}  {:<2} idom {parent}", lh.rank(v), file.label(v));
    }

    let cert = DomCertificate::new(&d, &lh);
    println!("verdict: {:?}", verify(&g, &cert).violation());
    print!("{}", CertFile::from_certificate(&cert).write());
}
