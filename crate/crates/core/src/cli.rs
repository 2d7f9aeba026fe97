//! Command-line front end.
//!
//! Exit codes: 0 success or `ACCEPT`, 1 `REJECT`, 2 usage or parse error,
//! 3 graph invariant violation.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::certifier::{verify, DomCertificate};
use crate::format::{CertFile, FormatError, GraphFile};
use crate::generators::{generate, Family, Figure, GenSpec};
use crate::graph::{dfs, FlowGraph, VertexMap};
use crate::loop_forest::compute_loop_forest;
use crate::lowhigh::{lowhigh_from_loops, lowhigh_from_trees, lowhigh_reducible, LowHighOrder};
use crate::oracle::{oracle_independence_violation, oracle_strong_violation};
use crate::paths::build_index;
use crate::semidom::compute_dominator_tree;
use crate::trees::{build_from_semidominators, build_strongly_independent, TreePair};

/// Largest graph the oracle checks behind `--check` and `--experiment` run on.
pub const CHECK_LIMIT: usize = 500;

#[derive(Debug, Parser)]
#[command(name = "domcert", version, about = "Certified dominator trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the dominator tree and a low-high order, print a certificate.
    Dom {
        graph: PathBuf,
        /// Use the construction for reducible graphs.
        #[arg(long, conflicts_with = "via_ist")]
        reducible: bool,
        /// Go through independent spanning trees built from semi-dominators.
        #[arg(long)]
        via_ist: bool,
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Print two independent spanning trees as `b v parent` and `r v parent`.
    Ist {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = IstMethod::Lowhigh)]
        method: IstMethod,
        /// Confirm independence with the brute-force oracle.
        #[arg(long)]
        check: bool,
        /// Report open properties of the semi-dominator trees.
        #[arg(long)]
        experiment: bool,
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Print a generated graph.
    Gen {
        #[arg(long, value_enum, default_value_t = FamilyArg::RandomFlow)]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixture name for `--family figure`, e.g. `fig7`.
        #[arg(long, required_if_eq("family", "figure"))]
        figure: Option<String>,
    },
    /// Answer disjoint-path queries `u:v` from start vertices `s1`, `s2`.
    Paths {
        graph: PathBuf,
        s1: usize,
        s2: usize,
        queries: Vec<String>,
    },
    /// Time each pipeline stage on generated graphs.
    Bench {
        #[arg(long, value_enum, default_value_t = FamilyArg::RandomFlow)]
        family: FamilyArg,
        #[arg(long, value_delimiter = ',', default_values_t = [100_000, 200_000, 400_000])]
        sizes: Vec<usize>,
        /// Arcs per vertex.
        #[arg(long, default_value_t = 4)]
        density: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct LoadArgs {
    /// Drop vertices unreachable from the start and renumber the rest.
    #[arg(long)]
    pub prune: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IstMethod {
    /// Strongly independent trees from a low-high order.
    Lowhigh,
    /// Independent trees from semi-dominators.
    Semis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    RandomFlow,
    RandomDag,
    Reducible,
    Ladder,
    Complete,
    Figure,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(path: &Path, load: &LoadArgs) -> Result<(FlowGraph, VertexMap), CliError> {
    let file = GraphFile::parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    if load.prune {
        file.to_pruned_graph().map_err(invariant)
    } else {
        let g = file.to_graph().map_err(invariant)?;
        let n = g.n();
        Ok((g, VertexMap::identity(n)))
    }
}

/// Which low-high construction `dom` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomMethod {
    Loops,
    Reducible,
    ViaIst,
}

/// The `dom` pipeline: dominator tree, then a low-high order.
/// Runs on a copy renumbered in depth-first preorder, so per-vertex arrays
/// are mostly walked in memory order, and maps the result back.
pub fn dom_pipeline(g: &FlowGraph, method: DomMethod) -> Result<DomCertificate, CliError> {
    let f = dfs(g);
    let pre: Vec<usize> = (0..g.n()).map(|v| f.pre(v) - 1).collect();
    let h = g.permuted(&pre);
    let (d, info) = compute_dominator_tree(&h);
    let lh = match method {
        DomMethod::Loops => lowhigh_from_loops(&h, &d, &compute_loop_forest(&h, info.dfs())),
        DomMethod::Reducible => lowhigh_reducible(&h, &d),
        DomMethod::ViaIst => lowhigh_from_trees(&h, &d, &build_from_semidominators(&h, &info)),
    }
    .map_err(invariant)?;
    let parent = pre
        .iter()
        .map(|&i| d.parent(i).map(|p| f.vertex_at_pre(p + 1)))
        .collect();
    let rank = pre.iter().map(|&i| lh.rank(i)).collect();
    Ok(DomCertificate::from_parts(parent, rank))
}

fn write_map(out: &mut dyn Write, map: &VertexMap, n: usize) -> io::Result<()> {
    if n != map.original_len() {
        let kept: Vec<String> = (0..n).map(|v| map.old_id(v).to_string()).collect();
        writeln!(out, "# kept: {}", kept.join(" "))?;
    }
    Ok(())
}

fn write_pair(out: &mut dyn Write, pair: &TreePair) -> io::Result<()> {
    for v in 0..pair.len() {
        if let Some(p) = pair.b(v) {
            writeln!(out, "b {v} {p}")?;
        }
    }
    for v in 0..pair.len() {
        if let Some(p) = pair.r(v) {
            writeln!(out, "r {v} {p}")?;
        }
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs one command, returning the exit code on success.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    match &cli.command {
        Command::Dom {
            graph,
            reducible,
            via_ist,
            load,
        } => {
            let (g, map) = load_graph(graph, load)?;
            let method = match (reducible, via_ist) {
                (true, _) => DomMethod::Reducible,
                (_, true) => DomMethod::ViaIst,
                _ => DomMethod::Loops,
            };
            let cert = dom_pipeline(&g, method)?;
            write_map(out, &map, g.n()).map_err(io_err)?;
            out.write_all(CertFile::from_certificate(&cert).write().as_bytes())
                .map_err(io_err)?;
            Ok(0)
        }
        Command::Verify { graph, cert, load } => {
            let (g, _) = load_graph(graph, load)?;
            let c = CertFile::parse(&read(cert)?).map_err(|source| CliError::Parse {
                path: cert.display().to_string(),
                source,
            })?;
            let verdict = verify(&g, &c.into_certificate());
            match verdict.violation() {
                None => {
                    writeln!(out, "ACCEPT").map_err(io_err)?;
                    Ok(0)
                }
                Some(v) => {
                    writeln!(out, "REJECT {v}").map_err(io_err)?;
                    Ok(1)
                }
            }
        }
        Command::Ist {
            graph,
            method,
            check,
            experiment,
            load,
        } => {
            let (g, _) = load_graph(graph, load)?;
            let (d, info) = compute_dominator_tree(&g);
            let pair = match method {
                IstMethod::Lowhigh => {
                    let lh = lowhigh_from_loops(&g, &d, &compute_loop_forest(&g, info.dfs()))
                        .map_err(invariant)?;
                    build_strongly_independent(&g, &d, &lh).map_err(invariant)?
                }
                IstMethod::Semis => build_from_semidominators(&g, &info),
            };
            write_pair(out, &pair).map_err(io_err)?;
            let small = g.n() <= CHECK_LIMIT;
            if *check {
                if !small {
                    writeln!(out, "# check skipped: more than {CHECK_LIMIT} vertices")
                        .map_err(io_err)?;
                } else if let Some(v) = oracle_independence_violation(&g, &d, &pair) {
                    return Err(CliError::Invariant(format!(
                        "trees are not independent at vertex {v}"
                    )));
                } else if *method == IstMethod::Lowhigh {
                    if let Some((v, w)) = oracle_strong_violation(&g, &d, &pair) {
                        return Err(CliError::Invariant(format!(
                            "trees are not strongly independent at ({v}, {w})"
                        )));
                    }
                    writeln!(out, "# check: strongly independent").map_err(io_err)?;
                } else {
                    writeln!(out, "# check: independent").map_err(io_err)?;
                }
            }
            if *experiment {
                let strong = small.then(|| oracle_strong_violation(&g, &d, &pair).is_none());
                let regenerated = lowhigh_from_trees(&g, &d, &pair)
                    .ok()
                    .and_then(|lh: LowHighOrder| build_strongly_independent(&g, &d, &lh).ok());
                let same = regenerated.is_some_and(|p| {
                    let (b, r) = (pair.b_parents(), pair.r_parents());
                    (p.b_parents(), p.r_parents()) == (b.clone(), r.clone())
                        || (p.b_parents(), p.r_parents()) == (r, b)
                });
                match strong {
                    Some(s) => writeln!(out, "# experiment strongly-independent {}", yes(s)),
                    None => writeln!(out, "# experiment strongly-independent skipped"),
                }
                .map_err(io_err)?;
                writeln!(out, "# experiment reproduced-from-lowhigh {}", yes(same))
                    .map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Gen {
            family,
            n,
            m,
            seed,
            figure,
        } => {
            let family = match family {
                FamilyArg::RandomFlow => Family::RandomFlow,
                FamilyArg::RandomDag => Family::RandomDag,
                FamilyArg::Reducible => Family::Reducible,
                FamilyArg::Ladder => Family::Ladder,
                FamilyArg::Complete => Family::Complete,
                FamilyArg::Figure => {
                    let name = figure.as_deref().unwrap_or_default();
                    let f = Figure::from_name(name)
                        .ok_or_else(|| CliError::Usage(format!("unknown figure `{name}`")))?;
                    out.write_all(f.text().as_bytes()).map_err(io_err)?;
                    return Ok(0);
                }
            };
            let g = generate(&GenSpec::new(family, *n, *m, *seed))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            out.write_all(GraphFile::from_graph(&g).write().as_bytes())
                .map_err(io_err)?;
            Ok(0)
        }
        Command::Paths {
            graph,
            s1,
            s2,
            queries,
        } => {
            let text = read(graph)?;
            let file = GraphFile::parse(&text).map_err(|source| CliError::Parse {
                path: graph.display().to_string(),
                source,
            })?;
            let idx = build_index(file.n, &file.arcs, *s1, *s2).map_err(invariant)?;
            for q in queries {
                let (u, v) = q
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .ok_or_else(|| {
                        CliError::Usage(format!("query `{q}` is not of the form u:v"))
                    })?;
                match idx.query_paths(u, v) {
                    Ok((p, q)) => {
                        let show = |p: &[usize]| {
                            p.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        };
                        writeln!(out, "{u} {v} yes {} | {}", show(&p), show(&q))
                    }
                    Err(crate::paths::PathsError::NoSuchPaths(..)) => writeln!(out, "{u} {v} no"),
                    Err(e) => writeln!(out, "{u} {v} error {e}"),
                }
                .map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Bench {
            family,
            sizes,
            density,
            seed,
        } => {
            let family = match family {
                FamilyArg::RandomFlow => Family::RandomFlow,
                FamilyArg::RandomDag => Family::RandomDag,
                FamilyArg::Reducible => Family::Reducible,
                FamilyArg::Ladder => Family::Ladder,
                FamilyArg::Complete => Family::Complete,
                FamilyArg::Figure => return Err(CliError::Usage("cannot bench fixtures".into())),
            };
            writeln!(
                out,
                "{:>9} {:>10} {:<10} {:>10} {:>14}",
                "n", "m", "stage", "ms", "arcs/s"
            )
            .map_err(io_err)?;
            for &n in sizes {
                let g = generate(&GenSpec::new(family, n, density * n, *seed))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                for (stage, t) in bench_stages(&g)? {
                    let secs = t.as_secs_f64().max(1e-9);
                    writeln!(
                        out,
                        "{:>9} {:>10} {:<10} {:>10.2} {:>14.0}",
                        g.n(),
                        g.arc_count(),
                        stage,
                        secs * 1e3,
                        g.arc_count() as f64 / secs
                    )
                    .map_err(io_err)?;
                }
            }
            Ok(0)
        }
    }
}

/// Wall time of each stage of the certified-dominators pipeline.
pub fn bench_stages(g: &FlowGraph) -> Result<Vec<(&'static str, Duration)>, CliError> {
    let mut times = Vec::new();
    let t = Instant::now();
    let f = dfs(g);
    times.push(("dfs", t.elapsed()));
    let t = Instant::now();
    let info = crate::semidom::compute_semidominators(g, &f);
    let d = crate::semidom::dominators_from_semis(&info);
    times.push(("dominators", t.elapsed()));
    let t = Instant::now();
    let lf = compute_loop_forest(g, &f);
    times.push(("loops", t.elapsed()));
    let t = Instant::now();
    let lh = lowhigh_from_loops(g, &d, &lf).map_err(invariant)?;
    times.push(("lowhigh", t.elapsed()));
    let t = Instant::now();
    let cert = DomCertificate::new(&d, &lh);
    let ok = verify(g, &cert).accepted();
    times.push(("verify", t.elapsed()));
    if !ok {
        return Err(CliError::Invariant("certificate rejected".into()));
    }
    let t = Instant::now();
    build_strongly_independent(g, &d, &lh).map_err(invariant)?;
    times.push(("ist", t.elapsed()));
    Ok(times)
}

/// Parses arguments, runs, and reports errors; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("domcert: {e}");
            e.exit_code()
        }
    }
}
