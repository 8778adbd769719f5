//! `cellgrowth`: profiles, regime classification, oracle checks, lemma
//! bounds and coding-witness counts from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 capacity exceeded,
//! 3 verification failure. `CELLGROWTH_THREADS` sets the worker count
//! (0 or unset: one per core).

use std::io::Write;
use std::process::ExitCode;

use cellgrowth::cell_calc::{load_structure, MIN_BOUNDS_ORDER, MIN_CLASSIFY_ORDER};
use cellgrowth::numeric::ln_big;
use cellgrowth::{
    agreement_check, check_bounds, classify, count_coded_graphs, parse, profile, CellTree, Error,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const THREADS_VAR: &str = "CELLGROWTH_THREADS";

#[derive(Parser)]
#[command(
    name = "cellgrowth",
    version,
    about = "Orbit-growth profiles of cell trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact profile f(0..=n) with log values and the regime normalizer.
    Profile {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Growth regime as JSON.
    Classify {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, default_value_t = 512)]
        n: usize,
    },
    /// Compare the profile with both oracle counts on a truncation.
    Check {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, default_value_t = 8)]
        width: usize,
        /// Largest subset size; defaults to the width.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Count bipartite graphs with distinguished parts and n edges.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the lemma inequalities on every subtree.
    Bounds {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TreeInput {
    /// Tree expression, e.g. "mset_inf(set)".
    #[arg(long)]
    expr: Option<String>,
    /// A finite structure in JSON, used as the whole tree.
    #[arg(long, value_name = "PATH")]
    fin: Option<String>,
}

impl TreeInput {
    fn tree(&self) -> Result<CellTree, Error> {
        match (&self.expr, &self.fin) {
            (Some(expr), _) => parse(expr),
            (None, Some(path)) => {
                let s = load_structure(path)?;
                Ok(CellTree::leaf(format!("fin({})", s.to_json()), s))
            }
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Core(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Error::Capacity(_)) => 2,
            Failure::Core(Error::Consistency(_)) | Failure::Verification(_) => 3,
            Failure::Core(_) => 1,
        }
    }
}

#[derive(Serialize)]
struct Row {
    n: usize,
    value: String,
    log_value: Option<f64>,
    normalizer: Option<f64>,
}

#[derive(Serialize)]
struct ProfileOutput {
    tree: String,
    order: usize,
    regime: Option<&'static str>,
    rows: Vec<Row>,
}

fn float_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Core(Error::Io(e.to_string()));
    match cli.command {
        Command::Profile { input, n, format } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let tree = input.tree()?;
            let values = profile(&tree, n)?.values;
            // the normalizer follows the classified regime; unclassifiable trees get none
            let report = classify(&tree, n.max(MIN_CLASSIFY_ORDER)).ok();
            let rows: Vec<Row> = values
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, v)| Row {
                    n: i,
                    value: v.to_string(),
                    log_value: finite(ln_big(v)),
                    normalizer: report
                        .as_ref()
                        .and_then(|r| r.normalizer(i, v))
                        .and_then(finite),
                })
                .collect();
            match format {
                Format::Csv => {
                    writeln!(out, "n,value,log_value,normalizer").map_err(io)?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            r.n,
                            r.value,
                            float_cell(r.log_value),
                            float_cell(r.normalizer)
                        )
                        .map_err(io)?;
                    }
                }
                Format::Json => {
                    let output = ProfileOutput {
                        tree: tree.to_string(),
                        order: n,
                        regime: report.map(|r| r.regime.as_str()),
                        rows,
                    };
                    emit_json(out, &output).map_err(io)?;
                }
            }
        }
        Command::Classify { input, n } => {
            if n < MIN_CLASSIFY_ORDER {
                return Err(Failure::Usage(format!(
                    "--n must be at least {MIN_CLASSIFY_ORDER}"
                )));
            }
            let report = classify(&input.tree()?, n)?;
            emit_json(out, &report).map_err(io)?;
        }
        Command::Check {
            input,
            width,
            n,
            format,
        } => {
            let report = agreement_check(&input.tree()?, width, n.unwrap_or(width))?;
            match format {
                Format::Csv => {
                    writeln!(out, "n,calculus,burnside,canonical,agree").map_err(io)?;
                    for r in &report.rows {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            r.n, r.calculus, r.burnside, r.canonical, r.agree
                        )
                        .map_err(io)?;
                    }
                }
                Format::Json => emit_json(out, &report).map_err(io)?,
            }
            if let Some(row) = report.first_disagreement() {
                return Err(Failure::Verification(format!(
                    "calculus {} / Burnside {} / canonical {} disagree at n = {}",
                    row.calculus, row.burnside, row.canonical, row.n
                )));
            }
        }
        Command::Witness { n, format } => {
            let count = count_coded_graphs(n)?;
            match format {
                Format::Csv => {
                    writeln!(out, "n,value,methods,methods_agreed").map_err(io)?;
                    writeln!(
                        out,
                        "{},{},{},{}",
                        count.n,
                        count.value,
                        count.methods.join("+"),
                        count.methods_agreed
                    )
                    .map_err(io)?;
                }
                Format::Json => emit_json(out, &count).map_err(io)?,
            }
            if !count.methods_agreed {
                return Err(Failure::Verification(format!(
                    "counting methods disagree at n = {n}"
                )));
            }
        }
        Command::Bounds { input, n } => {
            if n < MIN_BOUNDS_ORDER {
                return Err(Failure::Usage(format!(
                    "--n must be at least {MIN_BOUNDS_ORDER}"
                )));
            }
            let report = check_bounds(&input.tree()?, n)?;
            emit_json(out, &report).map_err(io)?;
            if let Some(c) = report.checks.iter().find(|c| !c.passed()) {
                return Err(Failure::Verification(format!(
                    "{:?} fails at {} for n in {:?}",
                    c.kind, c.path, c.failures
                )));
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        Failure::Usage(format!(
            "{THREADS_VAR} must be a nonnegative integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} worker threads: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = configure_threads().and_then(|()| run(cli, &mut out));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let message = match &failure {
                Failure::Usage(m) | Failure::Verification(m) => m.clone(),
                Failure::Core(e) => e.to_string(),
            };
            eprintln!("error: {message}");
            ExitCode::from(failure.exit_code())
        }
    }
}
