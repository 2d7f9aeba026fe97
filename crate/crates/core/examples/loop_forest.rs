//! Loop nesting forest of a small irreducible graph: loop headers and the
//! vertices each one heads directly.

use domcert::dfs;
use domcert::generators::Figure;
use domcert::loop_forest::{compute_loop_forest, intervals};

fn main() {
    let file = Figure::Fig7.file();
    let g = file.to_graph().unwrap();
    let lf = compute_loop_forest(&g, &dfs(&g));
    for (head, body) in intervals(&lf) {
        let body: Vec<String> = body.iter().map(|&v| file.label(v)).collect();
        println!("{} heads {}", file.label(head), body.join(" "));
    }
    for v in 0..g.n() {
        if let (Some(h), Some((_, y))) = (lf.h(v), lf.out_arc(v)) {
            println!(
                "{} reaches header {} through {}",
                file.label(v),
                file.label(h),
                file.label(y)
            );
        }
    }
}
