//! Pairs of vertex-disjoint paths from two start vertices, answered from
//! one index.

use domcert::paths::build_index;

fn main() {
    // 0 and 1 are the starts
    let arcs = [
        (0, 2),
        (1, 3),
        (2, 4),
        (3, 4),
        (4, 5),
        (2, 5),
        (3, 6),
        (5, 6),
    ];
    let idx = build_index(7, &arcs, 0, 1).unwrap();
    for (u, v) in [(4, 6), (5, 6), (4, 4), (2, 3), (5, 5)] {
        match idx.query_paths(u, v) {
            Ok((p, q)) => {
                assert!(idx.check_paths(u, v, &p, &q));
                println!("{u}:{v} via {p:?} and {q:?}");
            }
            Err(e) => println!("{u}:{v} {e}"),
        }
    }
}
