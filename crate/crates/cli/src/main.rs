use clap::{Parser, Subcommand, ValueEnum};
use mwm_cli::bench::{run_bench, BenchError, RoundSample};
use mwm_cli::config::{
    parse_bench_config, parse_edge_rule, parse_scaling_config, parse_weight_bound, ConfigError,
};
use mwm_cli::gen::{gen, InstanceSpec};
use mwm_cli::resolve_seed;
use mwm_cli::scaling::{run_scaling, ScalingSummary, H_RATIO_BAND};
use mwm_core::hungarian::{hungarian_eager, DenseCostMatrix, HungarianOptions};
use mwm_core::kwok::{solve, SolveOptions};
use mwm_core::labels::certify;
use mwm_core::mcmf::mcmf_dijkstra;
use mwm_core::text::{parse_graph, write_graph, ParsedGraph};
use mwm_core::{BipartiteGraph, DualLabels, Matching, SolveStats, Weight};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write as IoWrite};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mwm", version, about = "Maximum weight bipartite matching toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Kwok,
    Hungarian,
    Mcmf,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a graph file and print the matching
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "kwok")]
        algo: AlgoArg,
        /// Skip the initial greedy matching
        #[arg(long)]
        no_greedy: bool,
        /// Skip the top-|L| edge pruning pass
        #[arg(long)]
        no_prune: bool,
        /// Scan adjacency lists in descending weight order
        #[arg(long)]
        sorted_adj: bool,
        /// Print solver counters
        #[arg(long)]
        stats: bool,
        /// Re-verify the optimality certificate
        #[arg(long)]
        certify: bool,
    },
    /// Generate a random instance file
    Gen {
        #[arg(long)]
        n_left: usize,
        /// Side ratio 1:k, so n_right = k * n_left
        #[arg(long, default_value_t = 1)]
        ratio: usize,
        /// Edge budget rule: c_lgR:C, frac:K, or fixed:N
        #[arg(long)]
        edges: String,
        #[arg(long, default_value_t = 1)]
        weight_lo: i64,
        /// Upper weight bound: an integer, R, or R2
        #[arg(long, default_value = "R")]
        weight_hi: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the benchmark sweep described by a config file
    Bench {
        config: PathBuf,
        /// Per-round CSV output path
        #[arg(short, long)]
        output: PathBuf,
        /// Run rounds across worker threads (wall times become
        /// non-comparable)
        #[arg(long)]
        parallel: bool,
    },
    /// Run the visited-edge scaling study described by a config file
    Scaling {
        config: PathBuf,
        /// Per-run CSV output path
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    // behave like a regular unix tool when output is piped to head etc.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        CliError::runtime(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            file,
            algo,
            no_greedy,
            no_prune,
            sorted_adj,
            stats,
            certify,
        } => {
            let reader = BufReader::new(File::open(&file)?);
            let parsed = parse_graph(reader).map_err(|e| CliError::usage(e.to_string()))?;
            match parsed {
                ParsedGraph::Int(g) => {
                    solve_and_print(&g, algo, no_greedy, no_prune, sorted_adj, stats, certify)
                }
                ParsedGraph::Real(g) => {
                    solve_and_print(&g, algo, no_greedy, no_prune, sorted_adj, stats, certify)
                }
            }
        }
        Command::Gen {
            n_left,
            ratio,
            edges,
            weight_lo,
            weight_hi,
            seed,
            output,
        } => {
            let budget = parse_edge_rule(&edges)
                .ok_or_else(|| CliError::usage(format!("invalid edge rule `{edges}`")))?;
            let weight_hi = parse_weight_bound(&weight_hi)
                .ok_or_else(|| CliError::usage(format!("invalid weight bound `{weight_hi}`")))?;
            let spec = InstanceSpec {
                n_left,
                ratio,
                budget,
                weight_lo,
                weight_hi,
                seed: resolve_seed(seed),
            };
            let g = gen(&spec).map_err(|e| CliError::usage(e.to_string()))?;
            let mut out = BufWriter::new(File::create(&output)?);
            writeln!(
                out,
                "# seed={} rule={} ratio=1:{} weights=[{},{}]",
                spec.seed,
                spec.budget,
                spec.ratio,
                spec.weight_lo,
                spec.weight_hi.resolve(g.n_right()),
            )?;
            write_graph(&g, &mut out)?;
            println!(
                "wrote {} ({} x {}, {} edges, seed {})",
                output.display(),
                g.n_left(),
                g.n_right(),
                g.n_edges(),
                spec.seed
            );
            Ok(())
        }
        Command::Bench {
            config,
            output,
            parallel,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let mut cfg = parse_bench_config(&text)?;
            cfg.parallel |= parallel;
            let seed = resolve_seed(cfg.seed);
            let (samples, records) = run_bench(&cfg, seed)?;
            write_csv(&output, &samples)?;
            if cfg.parallel {
                println!("note: rounds ran in parallel; wall times are not comparable");
            }
            println!(
                "{:<12} {:>5} {:<18} {:>9} {:>12} {:>10}",
                "rule", "ratio", "algorithm", "n_edges", "mean_ms", "std_ms"
            );
            for rec in &records {
                println!(
                    "{:<12} {:>5} {:<18} {:>9} {:>12.3} {:>10.3}",
                    rec.rule.to_string(),
                    format!("1:{}", rec.ratio),
                    rec.algorithm.to_string(),
                    rec.n_edges,
                    rec.mean_ms,
                    rec.std_ms
                );
            }
            println!("wrote {} sample rows to {}", samples.len(), output.display());
            Ok(())
        }
        Command::Scaling { config, output } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = parse_scaling_config(&text)?;
            let seed = resolve_seed(cfg.seed);
            let (samples, summary) =
                run_scaling(&cfg, seed).map_err(|e| CliError::runtime(e.to_string()))?;
            write_csv(&output, &samples)?;
            print_scaling_summary(&summary);
            println!("wrote {} sample rows to {}", samples.len(), output.display());
            Ok(())
        }
    }
}

fn print_scaling_summary(summary: &ScalingSummary) {
    println!("{:>10} {:>10} {:>16}", "n_edges", "n_left", "mean_visited");
    for p in &summary.points {
        println!(
            "{:>10} {:>10} {:>16.1}",
            p.e_target, p.n_left, p.mean_visited
        );
    }
    println!("\nper-budget maxima:");
    for (e, m) in &summary.per_e_max {
        println!("{e:>10} {m:>16.1}");
    }
    match summary.exponent {
        Some(x) => println!("fitted log-log exponent: {x:.4}"),
        None => println!("fitted log-log exponent: insufficient points"),
    }
    println!(
        "h-adjustment ratio in [{}, {}]: {}/{} runs ({:.1}%)",
        H_RATIO_BAND.0,
        H_RATIO_BAND.1,
        summary.runs_in_band,
        summary.runs_total,
        100.0 * summary.in_band_fraction()
    );
    for f in &summary.flagged {
        println!(
            "flagged: E={} L={} seed={} h_adjustments/L={:.3}",
            f.e_target, f.n_left, f.seed, f.h_ratio
        );
    }
}

fn write_csv(path: &PathBuf, samples: &[RoundSample]) -> Result<(), CliError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{}", RoundSample::CSV_HEADER)?;
    for s in samples {
        writeln!(out, "{}", s.csv_row())?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn solve_and_print<W: Weight>(
    g: &BipartiteGraph<W>,
    algo: AlgoArg,
    no_greedy: bool,
    no_prune: bool,
    sorted_adj: bool,
    want_stats: bool,
    want_certify: bool,
) -> Result<(), CliError> {
    let cleaned = g.clean();
    let greedy = !no_greedy;

    let (matching, labels, stats): (Matching<W>, Option<DualLabels<W>>, SolveStats) = match algo {
        AlgoArg::Kwok => {
            let opts = SolveOptions {
                greedy,
                prune: !no_prune,
                sorted_adjacency: sorted_adj,
                tolerance: None,
            };
            let out = solve(&cleaned, &opts).map_err(|e| CliError::runtime(e.to_string()))?;
            (out.matching, Some(out.labels), out.stats)
        }
        AlgoArg::Hungarian => {
            let dense = DenseCostMatrix::from_graph(&cleaned);
            let (m, labels, stats) = hungarian_eager(
                &dense,
                HungarianOptions {
                    with_virtual_vertices: false,
                    greedy,
                    tolerance: None,
                },
            );
            (m, Some(labels), stats)
        }
        AlgoArg::Mcmf => {
            let (m, stats) =
                mcmf_dijkstra(&cleaned).map_err(|e| CliError::runtime(e.to_string()))?;
            (m, None, stats)
        }
    };

    println!("weight {}", matching.total_weight().format_token());
    for &(l, r) in &matching.oriented_pairs(&cleaned) {
        let (il, ir) = if cleaned.transposed() { (r, l) } else { (l, r) };
        let w = cleaned.weight_of(il, ir).expect("matched pair is an edge");
        println!("{} {} {}", l, r, w.format_token());
    }

    if want_stats {
        println!("stats.edges_visited {}", stats.edges_visited);
        println!("stats.h_adjustments {}", stats.h_adjustments);
        println!("stats.augmentations {}", stats.augmentations);
        println!("stats.greedy_matches {}", stats.greedy_matches);
        println!("stats.heap_inserts {}", stats.heap_inserts);
        println!("stats.heap_extracts {}", stats.heap_extracts);
        println!("stats.heap_decreases {}", stats.heap_decreases);
        println!("stats.heap_deletes {}", stats.heap_deletes);
    }

    if want_certify {
        let labels = labels.ok_or_else(|| {
            CliError::usage("--certify needs vertex labels; mcmf does not produce them")
        })?;
        let solved = match algo {
            AlgoArg::Kwok if !no_prune && cleaned.max_degree() > cleaned.n_left() => {
                cleaned.prune_top_l()
            }
            _ => cleaned.clone(),
        };
        let tol = W::default_tolerance(solved.max_abs_weight());
        certify(&solved, &matching, &labels, tol)
            .map_err(|e| CliError::runtime(format!("certificate check failed: {e}")))?;
        println!("certificate OK");
    }
    Ok(())
}
