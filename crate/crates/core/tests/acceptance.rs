//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use domcert::certifier::{verify, DomCertificate};
use domcert::format::{CertFile, GraphFile};
use domcert::generators::{generate, Family, Figure, GenSpec};
use domcert::loop_forest::compute_loop_forest;
use domcert::lowhigh::{
    is_reducible, lowhigh_from_loops, lowhigh_from_loops_traced, lowhigh_from_trees,
    lowhigh_reducible,
};
use domcert::offline_list::run_script;
use domcert::oracle::{
    naive_run_script, oracle_bridges, oracle_dominators, oracle_independence_violation,
    oracle_independent, oracle_is_low_high, oracle_strongly_independent, oracle_two_disjoint_paths,
};
use domcert::paths::build_index;
use domcert::semidom::alternative_relative_dominators;
use domcert::trees::{
    build_from_semidominators, build_strongly_independent, build_with_relative_dominators,
};
use domcert::{compute_dominator_tree, dfs, FlowGraph, RootedTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dominators_match_oracle(corpus: &[FlowGraph]) -> Outcome {
    for (i, g) in corpus.iter().enumerate() {
        let (d, _) = compute_dominator_tree(g);
        ensure(d == oracle_dominators(g), || format!("graph {i} differs"))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn certifier_completeness(corpus: &[FlowGraph], reducible: &[FlowGraph]) -> Outcome {
    let mut certs = 0;
    for (i, g) in corpus.iter().chain(reducible).enumerate() {
        let (d, info) = compute_dominator_tree(g);
        let mut orders = vec![
            (
                "loops",
                lowhigh_from_loops(g, &d, &compute_loop_forest(g, info.dfs())),
            ),
            (
                "trees",
                lowhigh_from_trees(g, &d, &build_from_semidominators(g, &info)),
            ),
        ];
        if is_reducible(g, &d) {
            orders.push(("reducible", lowhigh_reducible(g, &d)));
        }
        for (name, lh) in orders {
            let lh = lh.map_err(|e| format!("graph {i}, {name}: {e}"))?;
            let cert = DomCertificate::new(&d, &lh);
            ensure(verify(g, &cert).accepted(), || {
                format!("graph {i}, {name}: rejected")
            })?;
            ensure(oracle_is_low_high(g, &d, lh.ranks()), || {
                format!("graph {i}, {name}: not low-high")
            })?;
            certs += 1;
        }
    }
    Ok(format!("{certs} certificates"))
}

fn certifier_soundness(corpus: &[FlowGraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut bad, mut tried) = (0, 0);
    for (i, g) in corpus.iter().enumerate() {
        let n = g.n();
        let (d, _) = compute_dominator_tree(g);
        let truth = d.parents();
        let base = {
            let lh = lowhigh_from_loops(g, &d, &compute_loop_forest(g, &dfs(g))).unwrap();
            DomCertificate::new(&d, &lh)
        };
        for _ in 0..4 {
            let mut m = base.clone();
            let v = rng.random_range(1..n);
            match rng.random_range(0..3) {
                0 => m.parent[v] = Some(rng.random_range(0..n)),
                1 => {
                    let w = rng.random_range(0..n);
                    m.rank.swap(v, w);
                }
                _ => m.rank[v] = rng.random_range(1..=n),
            }
            tried += 1;
            let tree_ok = m.parent == truth;
            let order_ok = RootedTree::from_parents(g.start(), &m.parent)
                .map(|t| oracle_is_low_high(g, &t, &m.rank))
                .unwrap_or(false);
            if tree_ok && order_ok {
                continue;
            }
            bad += 1;
            ensure(!verify(g, &m).accepted(), || {
                format!("graph {i}: false accept of {m:?}")
            })?;
        }
    }
    ensure(bad >= 2000, || format!("only {bad} invalid mutants"))?;
    Ok(format!("{bad} invalid mutants rejected ({tried} tried)"))
}

fn strong_independence(corpus: &[FlowGraph]) -> Outcome {
    let mut count = 0;
    for (i, g) in corpus.iter().enumerate().filter(|(_, g)| g.n() <= 80) {
        let (d, _) = compute_dominator_tree(g);
        let lh = lowhigh_from_loops(g, &d, &compute_loop_forest(g, &dfs(g))).unwrap();
        let pair = build_strongly_independent(g, &d, &lh).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(oracle_strongly_independent(g, &d, &pair), || {
            format!("graph {i}: not strongly independent")
        })?;
        let b: HashSet<usize> = (0..g.n()).filter_map(|v| pair.b_arc(v)).collect();
        let bridges: HashSet<usize> = oracle_bridges(g).into_iter().collect();
        let shared = (0..g.n())
            .filter_map(|v| pair.r_arc(v))
            .filter(|a| b.contains(a));
        for a in shared {
            ensure(bridges.contains(&a), || {
                format!("graph {i}: shared arc {a} is not a bridge")
            })?;
        }
        count += 1;
    }
    Ok(format!("{count} graphs with n <= 80"))
}

fn independence_from_semidominators(corpus: &[FlowGraph]) -> Outcome {
    for (i, g) in corpus.iter().enumerate() {
        let (d, info) = compute_dominator_tree(g);
        let pair = build_from_semidominators(g, &info);
        ensure(oracle_independent(g, &d, &pair), || {
            format!("graph {i}: not independent")
        })?;
    }
    let f = Figure::Fig14.file();
    let g = f.to_graph().unwrap();
    let (d, info) = compute_dominator_tree(&g);
    let alt = alternative_relative_dominators(&info);
    let bad = build_with_relative_dominators(&g, &info, &alt);
    let culprit = oracle_independence_violation(&g, &d, &bad).map(|v| f.label(v));
    ensure(culprit.as_deref() == Some("8"), || {
        format!("negative fixture: violation at {culprit:?}, expected 8")
    })?;
    Ok(format!(
        "{} graphs; negative fixture fails at 8",
        corpus.len()
    ))
}

fn labels(f: &GraphFile, parent: impl Fn(usize) -> Option<usize>) -> Vec<String> {
    (0..f.n)
        .filter_map(|v| parent(v).map(|p| format!("{}<{}", f.label(v), f.label(p))))
        .collect()
}

fn figures() -> Outcome {
    let f = Figure::Fig1.file();
    let g = f.to_graph().unwrap();
    let (d, _) = compute_dominator_tree(&g);
    let want = [
        "A<R", "B<R", "C<R", "D<R", "E<R", "F<C", "G<C", "H<R", "I<R", "J<G", "K<R", "L<D",
    ];
    ensure(labels(&f, |v| d.parent(v)) == want, || {
        "dominator tree".into()
    })?;

    let f = Figure::Fig7.file();
    let g = f.to_graph().unwrap();
    let lf = compute_loop_forest(&g, &dfs(&g));
    let mut heads: Vec<String> = lf.headers().into_iter().map(|v| f.label(v)).collect();
    heads.sort();
    ensure(heads == ["a", "d", "e", "f", "h"], || {
        format!("loop heads {heads:?}")
    })?;

    let (d, _) = compute_dominator_tree(&g);
    let (_, trace) = lowhigh_from_loops_traced(&g, &d, &lf).map_err(|e| e.to_string())?;
    let id = |l: &str| f.vertex(l).unwrap();
    let step = trace
        .iter()
        .find(|st| st.vertex == id("d"))
        .ok_or("no step for d")?;
    ensure(
        step.pivot == (id("b"), id("d"))
            && step.test == Some((id("a"), id("c")))
            && step.path == [id("c"), id("h"), id("d")],
        || format!("pivot/test trace {step:?}"),
    )?;

    let f = Figure::Fig10.file();
    let g = f.to_graph().unwrap();
    let (_, info) = compute_dominator_tree(&g);
    let pair = build_from_semidominators(&g, &info);
    ensure(
        labels(&f, |v| pair.b(v)) == ["2<1", "3<1", "4<3", "5<4", "6<3"]
            && labels(&f, |v| pair.r(v)) == ["2<1", "3<2", "4<3", "5<2", "6<5"],
        || "trees B and R".into(),
    )?;
    Ok("dominator tree, loop heads, pivot trace, trees B/R".into())
}

fn list_scripts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ops = 0;
    for i in 0..500 {
        let items = rng.random_range(1..=2000);
        let total = rng.random_range(items..=10_000);
        let s = common::random_script(&mut rng, items, total);
        ops += s.ops().len();
        let fast = run_script(&s).map_err(|e| format!("script {i}: {e}"))?;
        ensure(Some(fast) == naive_run_script(&s), || {
            format!("script {i} differs")
        })?;
    }
    Ok(format!("500 scripts, {ops} operations"))
}

/// Wall time of one `dom` run in a fresh process, output written to a file.
fn dom_run(input: &Path, output: &Path) -> Result<Duration, String> {
    let out = File::create(output).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_domcert"))
        .arg("dom")
        .arg(input)
        .stdout(out)
        .status()
        .map_err(|e| e.to_string())?;
    let spent = t.elapsed();
    ensure(status.success(), || format!("dom exited with {status}"))?;
    Ok(spent)
}

fn scaling() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("scaling");
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut times = Vec::new();
    for n in [200_000, 400_000, 800_000] {
        let g = generate(&GenSpec::new(Family::RandomFlow, n, 4 * n, 1)).unwrap();
        let input = dir.join(format!("g{n}.txt"));
        let output = dir.join(format!("g{n}.cert"));
        fs::write(&input, GraphFile::from_graph(&g).write()).map_err(|e| e.to_string())?;
        let mut best = Duration::MAX;
        for _ in 0..3 {
            best = best.min(dom_run(&input, &output)?);
        }
        let text = fs::read_to_string(&output).map_err(|e| e.to_string())?;
        let cert = CertFile::parse(&text).map_err(|e| e.to_string())?;
        ensure(verify(&g, &cert.into_certificate()).accepted(), || {
            format!("certificate for n = {n} rejected")
        })?;
        times.push(best.as_secs_f64());
    }
    let _ = fs::remove_dir_all(&dir);
    let shown: Vec<String> = times.iter().map(|t| format!("{t:.2}s")).collect();
    let summary = shown.join(", ");
    for w in times.windows(2) {
        ensure(w[1] <= 2.5 * w[0], || format!("growth too fast: {summary}"))?;
    }
    ensure(times[2] < 10.0, || format!("too slow: {summary}"))?;
    Ok(summary)
}

fn disjoint_paths(corpus: &[FlowGraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let n = rng.random_range(2..=12);
        let m = rng.random_range(0..=3 * n);
        let arcs: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let s2 = rng.random_range(0..n);
        let idx = build_index(n, &arcs, 0, s2).map_err(|e| format!("graph {i}: {e}"))?;
        for u in 0..n {
            for v in 0..n {
                let want = oracle_two_disjoint_paths(n, &arcs, 0, s2, u, v);
                let got = idx.query_exists(u, v).unwrap_or(false);
                ensure(got == want, || format!("graph {i}: ({u}, {v}) gives {got}"))?;
            }
        }
    }
    let mut checked = 0;
    for (i, g) in corpus.iter().enumerate() {
        let n = g.n();
        let s2 = rng.random_range(0..n);
        let idx = build_index(n, g.arcs(), 0, s2).map_err(|e| format!("corpus {i}: {e}"))?;
        for _ in 0..20 {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            if idx.query_exists(u, v) == Ok(true) {
                let (p, q) = idx.query_paths(u, v).map_err(|e| e.to_string())?;
                ensure(idx.check_paths(u, v, &p, &q), || {
                    format!("corpus {i}: bad paths for ({u}, {v})")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "200 small graphs exhaustive, {checked} path pairs checked"
    ))
}

fn main() -> ExitCode {
    let corpus = common::random_flow_corpus(1000);
    let reducible = common::reducible_corpus(200);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "dominators equal oracle",
            Box::new(|| dominators_match_oracle(&corpus)),
        ),
        (
            "certifier completeness",
            Box::new(|| certifier_completeness(&corpus, &reducible)),
        ),
        (
            "certifier soundness",
            Box::new(|| certifier_soundness(&corpus)),
        ),
        (
            "strong independence",
            Box::new(|| strong_independence(&corpus)),
        ),
        (
            "independence via semi-dominators",
            Box::new(|| independence_from_semidominators(&corpus)),
        ),
        ("figure fixtures", Box::new(figures)),
        ("off-line list scripts", Box::new(list_scripts)),
        ("linear scaling", Box::new(scaling)),
        ("disjoint paths", Box::new(|| disjoint_paths(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = check();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
