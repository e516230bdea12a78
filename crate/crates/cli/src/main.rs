//! The `mdtree` command: decompose graph files into modular decomposition
//! trees, certify trees against their graphs, generate test instances and
//! probe scaling behaviour.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use mdtree::decompose::{decompose, decompose_traced};
use mdtree::fixture::build_appendix_fixture;
use mdtree::gen::{gen_gnp, gen_random_cograph};
use mdtree::io::{parse_graph, render_dot, render_graph, render_record, ParseMode, ParsedGraph};
use mdtree::oracle::md_tree_bruteforce;
use mdtree::tree::validate;

#[derive(Parser)]
#[command(name = "mdtree", version, about = "Modular decomposition of simple undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the modular decomposition tree of a graph file.
    Decompose {
        /// Graph file, or "-" for standard input.
        file: String,
        /// Tree rendering written to standard output.
        #[arg(long, value_enum, default_value_t = Format::Canonical)]
        format: Format,
        /// Write the per-stage pipeline trace to standard error.
        #[arg(long)]
        trace: bool,
        /// Reject duplicate edges, self-loops and partial labels instead of
        /// repairing them.
        #[arg(long)]
        strict: bool,
    },
    /// Decompose a graph, then certify the tree against the graph. Inputs
    /// with at most 16 vertices are also checked against the brute-force
    /// reference decomposition.
    Verify {
        /// Graph file, or "-" for standard input.
        file: String,
        #[arg(long)]
        strict: bool,
    },
    /// Write a generated graph file.
    #[command(subcommand)]
    Gen(Gen),
    /// Time the decomposition across a range of sizes.
    Bench {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Expected average degree; edge probability is d / (n - 1).
        #[arg(long, default_value_t = 10.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Erdos-Renyi sample G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random cograph; its tree has no prime nodes.
    Cograph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The labeled 18-vertex worked example (also shipped as data/appendix.grf).
    Fixture {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// `(kind child ...)` with children ordered by smallest leaf.
    Canonical,
    /// Graphviz digraph; series nodes labeled 1, parallel 0, prime P.
    Dot,
    /// Nested JSON objects of kind + children.
    Record,
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Decompose { file, format, trace, strict } => {
            let parsed = read_graph(&file, strict)?;
            let tree = if trace {
                let (tree, tr) = decompose_traced(&parsed.graph);
                eprint!("{}", tr.render());
                tree
            } else {
                decompose(&parsed.graph)
            };
            match format {
                Format::Canonical => println!("{}", tree.canonical_string()),
                Format::Dot => print!("{}", render_dot(&tree, parsed.labels.as_deref())),
                Format::Record => println!("{}", render_record(&tree)),
            }
            Ok(())
        }
        Command::Verify { file, strict } => {
            let parsed = read_graph(&file, strict)?;
            let g = &parsed.graph;
            let tree = decompose(g);
            let report = validate(&tree, g);
            if !report.is_valid() {
                return Err(format!("{file}: tree fails validation: {report}"));
            }
            let n = g.vertex_count();
            if n <= 16 {
                let want = md_tree_bruteforce(g).canonical_string();
                let got = tree.canonical_string();
                if got != want {
                    return Err(format!(
                        "{file}: tree disagrees with the brute-force oracle\n  got:  {got}\n  want: {want}"
                    ));
                }
            }
            let oracle = if n <= 16 { ", matches brute force" } else { "" };
            println!(
                "ok: n={n} m={} tree has {} nodes, validated{oracle}",
                g.edge_count(),
                tree.node_count()
            );
            Ok(())
        }
        Command::Gen(gen) => {
            let (text, out) = match gen {
                Gen::Gnp { n, p, seed, out } => {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(format!("edge probability {p} is not in [0, 1]"));
                    }
                    (render_graph(&gen_gnp(n, p, seed), None), out)
                }
                Gen::Cograph { n, seed, out } => {
                    let (g, _) = gen_random_cograph(n, seed);
                    (render_graph(&g, None), out)
                }
                Gen::Fixture { out } => {
                    let (g, labels) = build_appendix_fixture();
                    (render_graph(&g, Some(&labels)), out)
                }
            };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Bench { sizes, avg_degree, seed } => {
            if sizes.is_empty() {
                return Err("no sizes given".into());
            }
            println!("{:>10} {:>12} {:>12} {:>14}", "n", "m", "time", "time/(n+m)");
            for n in sizes {
                if n < 2 {
                    return Err(format!("size {n} is too small to sample"));
                }
                let p = (avg_degree / (n - 1) as f64).clamp(0.0, 1.0);
                let g = gen_gnp(n, p, seed);
                let mut best = Duration::MAX;
                for _ in 0..3 {
                    let t0 = Instant::now();
                    let tree = decompose(&g);
                    best = best.min(t0.elapsed());
                    assert_eq!(tree.leaf_count(), n);
                }
                let m = g.edge_count();
                let per = best.as_nanos() as f64 / (n + m) as f64;
                println!("{n:>10} {m:>12} {:>9.1} ms {per:>11.0} ns", best.as_secs_f64() * 1e3);
            }
            Ok(())
        }
    }
}

fn read_graph(file: &str, strict: bool) -> Result<ParsedGraph, String> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?
    };
    let mode = if strict { ParseMode::Strict } else { ParseMode::Lenient };
    let parsed = parse_graph(&text, mode).map_err(|e| format!("{file}: {e}"))?;
    for w in &parsed.warnings {
        eprintln!("warning: {file}: {w}");
    }
    Ok(parsed)
}
