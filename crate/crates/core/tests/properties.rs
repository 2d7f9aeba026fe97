mod common;

use domcert::certifier::{verify, verify_loops_nocert, verify_reducible_nocert, DomCertificate};
use domcert::cli::{dom_pipeline, DomMethod};
use domcert::derived::compute_derived;
use domcert::format::{CertFile, GraphFile};
use domcert::lowhigh::{compute_lowhigh, is_reducible, lowhigh_from_trees, lowhigh_reducible};
use domcert::offline_list::run_script;
use domcert::oracle::{
    naive_derived_tail, naive_run_script, oracle_bridges, oracle_dominators, oracle_independent,
    oracle_is_low_high, oracle_semidominators, oracle_strongly_independent,
    oracle_two_disjoint_paths,
};
use domcert::paths::build_index;
use domcert::trees::{
    bridges, build_from_semidominators, build_strongly_independent,
    check_arc_disjoint_except_bridges, find_r_high_path_violation,
};
use domcert::{compute_dominator_tree, FlowGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Flow graphs on up to `max_n` vertices: a random arborescence over
/// `0..n` plus arbitrary extra arcs, including arcs into the start.
fn flow_graph(max_n: usize) -> impl Strategy<Value = FlowGraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..=3 * n),
        )
            .prop_map(move |(picks, extra)| {
                let tree = picks
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.index(i + 1), i + 1));
                FlowGraph::new(n, 0, tree.chain(extra)).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dominators_match_oracle(g in flow_graph(40)) {
        let (d, info) = compute_dominator_tree(&g);
        prop_assert_eq!(&d, &oracle_dominators(&g));
        let sd: Vec<_> = (0..g.n()).map(|v| info.sd(v)).collect();
        prop_assert_eq!(sd, oracle_semidominators(&g, info.dfs()));
    }

    #[test]
    fn every_construction_certifies(g in flow_graph(40)) {
        let (d, info) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        prop_assert!(oracle_is_low_high(&g, &d, lh.ranks()));
        prop_assert!(verify(&g, &DomCertificate::new(&d, &lh)).accepted());
        let pair = build_from_semidominators(&g, &info);
        prop_assert!(oracle_independent(&g, &d, &pair));
        let lh2 = lowhigh_from_trees(&g, &d, &pair).unwrap();
        prop_assert!(oracle_is_low_high(&g, &d, lh2.ranks()));
        if is_reducible(&g, &d) {
            let lh3 = lowhigh_reducible(&g, &d).unwrap();
            prop_assert!(oracle_is_low_high(&g, &d, lh3.ranks()));
        }
    }

    #[test]
    fn strongly_independent_trees(g in flow_graph(25)) {
        let (d, _) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        let pair = build_strongly_independent(&g, &d, &lh).unwrap();
        prop_assert!(oracle_strongly_independent(&g, &d, &pair));
        prop_assert!(check_arc_disjoint_except_bridges(&g, &d, &pair));
        prop_assert_eq!(find_r_high_path_violation(&d, &lh, &pair), None);
        prop_assert_eq!(bridges(&g, &d), oracle_bridges(&g));
    }

    #[test]
    fn pipeline_certificates_use_original_ids(g in flow_graph(40)) {
        let d = oracle_dominators(&g);
        let mut methods = vec![DomMethod::Loops, DomMethod::ViaIst];
        if is_reducible(&g, &d) {
            methods.push(DomMethod::Reducible);
        }
        for method in methods {
            let cert = dom_pipeline(&g, method).unwrap();
            prop_assert_eq!(&cert.parent, &d.parents());
            prop_assert!(oracle_is_low_high(&g, &d, &cert.rank));
        }
    }

    #[test]
    fn derived_tails_match_naive(g in flow_graph(40)) {
        let (d, _) = compute_dominator_tree(&g);
        let dg = compute_derived(&g, &d).unwrap();
        for (a, &(v, w)) in g.arcs().iter().enumerate() {
            prop_assert_eq!(dg.tail_of(a), naive_derived_tail(&d, v, w));
        }
    }

    #[test]
    fn verifiers_without_order_accept_the_true_tree(g in flow_graph(40)) {
        let (d, _) = compute_dominator_tree(&g);
        prop_assert!(verify_loops_nocert(&g, &d.parents()).accepted());
        if is_reducible(&g, &d) {
            prop_assert!(verify_reducible_nocert(&g, &d.parents()).accepted());
        }
    }

    #[test]
    fn wrong_parent_is_rejected(g in flow_graph(30), pick in any::<prop::sample::Index>(), to in any::<prop::sample::Index>()) {
        let (d, _) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        let mut cert = DomCertificate::new(&d, &lh);
        let v = 1 + pick.index(g.n() - 1);
        let wrong: Vec<usize> = (0..g.n())
            .filter(|&p| Some(p) != cert.parent[v] && p != v)
            .collect();
        prop_assume!(!wrong.is_empty());
        let p = wrong[to.index(wrong.len())];
        cert.parent[v] = Some(p);
        prop_assert!(!verify(&g, &cert).accepted());
        let mut parents = d.parents();
        parents[v] = Some(p);
        prop_assert!(!verify_loops_nocert(&g, &parents).accepted());
    }

    #[test]
    fn file_formats_round_trip(g in flow_graph(30)) {
        let f = GraphFile::from_graph(&g);
        let back = GraphFile::parse(&f.write()).unwrap().to_graph().unwrap();
        prop_assert_eq!(back.arcs(), g.arcs());
        let (d, _) = compute_dominator_tree(&g);
        let lh = compute_lowhigh(&g, &d).unwrap();
        let cert = DomCertificate::new(&d, &lh);
        let c = CertFile::from_certificate(&cert);
        prop_assert_eq!(CertFile::parse(&c.write()).unwrap().into_certificate(), cert);
    }

    #[test]
    fn list_scripts_match_naive(seed in any::<u64>(), items in 1usize..60, extra in 0usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_script(&mut rng, items, items + extra);
        prop_assert_eq!(Some(run_script(&s).unwrap()), naive_run_script(&s));
    }

    #[test]
    fn disjoint_paths_match_max_flow(g in flow_graph(9), s2 in any::<prop::sample::Index>()) {
        let (n, arcs) = (g.n(), g.arcs().to_vec());
        let s2 = s2.index(n);
        let idx = build_index(n, &arcs, 0, s2).unwrap();
        for u in 0..n {
            for v in 0..n {
                let want = oracle_two_disjoint_paths(n, &arcs, 0, s2, u, v);
                prop_assert_eq!(idx.query_exists(u, v).unwrap(), want, "u={} v={}", u, v);
                if want {
                    let (p, q) = idx.query_paths(u, v).unwrap();
                    prop_assert!(idx.check_paths(u, v, &p, &q));
                }
            }
        }
    }
}
