//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::{range, Error};
use crate::experiments::{
    accuracy_summary, all_variants, emit_csv, emit_gnuplot, figure_variants, m_grid, run_sweep,
    series_stats, SweepConfig, DEFAULT_WINDOW,
};
use crate::format::{parse_graph, write_graph};
use crate::graph::{random_graph, OrderingMode, VertexSet};
use crate::oracle::alpha_exact;
use crate::search::{dfs_descend_traced, BranchPolicy, SearchConfig, Side};
use crate::tree::EdgeRule;
use crate::verify::{self, Level};

/// Environment variable holding the default worker count for `sweep`.
pub const THREADS_ENV: &str = "SBE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "sbe",
    version,
    about = "Split-by-edges tree searches for maximum independent sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a uniform random G(n, m) graph
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one depth-first descent on a graph file
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "arbitrary")]
        ordering: OrderingMode,
        #[arg(long, default_value = "most-stable")]
        policy: BranchPolicy,
        #[arg(long, default_value = "lex-first")]
        edge_rule: EdgeRule,
        /// Also compute the exact independence number
        #[arg(long)]
        exact: bool,
        /// Print every split of the descent
        #[arg(long)]
        trace: bool,
    },
    /// Sweep edge counts and report success rates per variant
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        #[arg(long, default_value_t = 1)]
        m_step: usize,
        /// Graphs per edge count
        #[arg(long, default_value_t = 100)]
        graphs: usize,
        /// Comma-separated `<ordering>/<policy>` list, `figure` (six
        /// variants) or `all` (nine)
        #[arg(long, default_value = "figure")]
        variants: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Odd smoothing window for extrema counts
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Write space-separated blocks per variant instead of CSV
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run the built-in invariant suites
    Verify {
        #[arg(long, default_value = "quick")]
        level: Level,
    },
}

pub fn parse_variants(spec: &str) -> crate::Result<Vec<SearchConfig>> {
    match spec {
        "all" => Ok(all_variants()),
        "figure" => Ok(figure_variants()),
        _ => {
            let variants = spec
                .split(',')
                .map(|tok| tok.trim().parse())
                .collect::<crate::Result<Vec<SearchConfig>>>()?;
            if variants.is_empty() {
                return Err(range("no variants given"));
            }
            Ok(variants)
        }
    }
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn one_based(s: VertexSet) -> String {
    s.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn write_output(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gen {
            n,
            m,
            seed,
            out: path,
        } => {
            let g = random_graph(n, m, seed)?;
            write_output(path.as_ref(), &write_graph(&g), out)?;
        }
        Command::Solve {
            input,
            ordering,
            policy,
            edge_rule,
            exact,
            trace,
        } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let g = parse_graph(&text)?;
            let cfg = SearchConfig {
                ordering,
                policy,
                edge_rule,
            };
            let mut result = dfs_descend_traced(&g, &cfg);
            if trace {
                for (i, step) in result.path.iter().flatten().enumerate() {
                    let side = match step.side {
                        Side::Left => "left",
                        Side::Right => "right",
                    };
                    writeln!(
                        out,
                        "step {}: {{{}}} split on {} {} -> {side}",
                        i + 1,
                        one_based(step.node),
                        step.edge.0 + 1,
                        step.edge.1 + 1
                    )?;
                }
            }
            writeln!(out, "found: {}", one_based(result.found))?;
            writeln!(out, "size: {}", result.size)?;
            writeln!(out, "depth: {}", result.depth)?;
            if exact {
                result = result.with_alpha(alpha_exact(&g).alpha);
                writeln!(out, "alpha: {}", result.alpha.unwrap_or_default())?;
                writeln!(out, "success: {}", result.success.unwrap_or_default())?;
            }
        }
        Command::Sweep {
            n,
            m_from,
            m_to,
            m_step,
            graphs,
            variants,
            seed,
            out: path,
            threads,
            window,
            gnuplot,
        } => {
            let mut cfg = SweepConfig::new(
                n,
                m_grid(m_from, m_to, m_step)?,
                graphs,
                parse_variants(&variants)?,
            );
            cfg.master_seed = seed;
            cfg.smoothing_window = window;
            cfg.thread_count = threads.unwrap_or_else(default_threads);
            cfg.validate()?;
            let rows = run_sweep(&cfg)?;
            let text = if gnuplot {
                emit_gnuplot(&rows)
            } else {
                emit_csv(&rows)
            };
            let mut report = Vec::new();
            match series_stats(&rows, window) {
                Ok(stats) => {
                    for s in stats {
                        let acc = accuracy_summary(&rows, s.variant)?;
                        writeln!(
                            report,
                            "{}: maxima={} minima={} min_success={:.6} at m={} min_mean_accuracy={:.6} min_graph_accuracy={:.6} min_pooled_accuracy={:.6}",
                            s.variant, s.local_maxima, s.local_minima, s.min_success_rate, s.argmin_m,
                            acc.min_mean, acc.min_single, acc.min_pooled
                        )?;
                    }
                }
                Err(e) => writeln!(report, "no extrema statistics: {e}")?,
            }
            match path {
                Some(p) => {
                    write_output(Some(&p), &text, out)?;
                    out.write_all(&report)?;
                }
                None => {
                    out.write_all(text.as_bytes())?;
                    std::io::stderr().write_all(&report)?;
                }
            }
        }
        Command::Verify { level } => {
            let outcomes = verify::run(level);
            let mut failed = 0;
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {} ({} cases, {} failures)",
                    o.name, o.cases, o.failure_count
                )?;
                for f in &o.failures {
                    writeln!(out, "    {f}")?;
                }
                failed += (!o.passed()) as usize;
            }
            writeln!(out, "{} passed, {} failed", outcomes.len() - failed, failed)?;
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

/// Runs the CLI with explicit output streams and returns the exit code:
/// 0 on success, 1 on verification failure, 2 on usage or input errors.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("sbe")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = writeln!(err, "error: no command given");
                    let _ = write!(err, "{}", e.render());
                    2
                }
                _ => {
                    // clap renders "error: ..." followed by usage
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {}", msg.replace('\n', " "));
            2
        }
        Err(Failure::Verification) => {
            let _ = writeln!(err, "error: verification failed");
            1
        }
    }
}

/// [`run_cli_with`] on stdout and stderr. `argv` excludes the program name.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
