//! The `bsdecomp` command line.
//!
//! Exit codes: 0 ok, 2 usage or parse error, 3 math-domain error, 4 not
//! stabilized, 5 verification failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::decompose::{chain_decompose, enumerate_maximal_chains, greedy_decompose, Chain, DecompositionJson};
use crate::monomial::parse_ideal_json;
use crate::pure::DegreeSequence;
use crate::stabilize::{detect_stabilization, StabilizeError};
use crate::table::{BettiTable, TableJson, Window};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_NOT_STABILIZED: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

/// Environment variable capping internal parallelism (0 or unset = automatic).
pub const THREADS_ENV: &str = "BSDECOMP_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "bsdecomp",
    version,
    about = "Betti tables of monomial ideal powers and their Boij–Söderberg decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Btt,
    Json,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graded Betti table of I^k.
    Betti {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Positive decomposition of a table, or its expansion along a maximal chain.
    Decompose {
        #[arg(long)]
        table: PathBuf,
        /// JSON list of degree sequences forming a maximal chain.
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal chains of pure diagrams in the window rows M..N, columns 0..C.
    #[command(allow_negative_numbers = true)]
    Chains {
        m: i64,
        n: i64,
        c: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stabilization report for the decompositions of I^k.
    Stabilize {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value_t = 1)]
        kmin: i64,
        #[arg(long)]
        kmax: i64,
        /// Defaults to the number of variables minus one.
        #[arg(long)]
        degree_bound: Option<usize>,
        /// Report JSON destination; without it the report goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact check that a decomposition sums to a table.
    Verify {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> CmdResult {
    match dest {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
        }
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_USAGE, e.to_string())),
    }
}

fn read_table(path: &Path) -> Result<BettiTable, Failure> {
    BettiTable::from_btt(&read(path)?).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs the CLI with explicit argument list and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let mut rendered = e.render().to_string();
            if code != 0 && !rendered.contains("Usage:") {
                rendered += &format!("\n{}\n", usage_for(&args));
            }
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Err(_) => 0,
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) => n,
            Err(_) => {
                let _ = writeln!(err, "error: {THREADS_ENV} must be a nonnegative integer, got `{v}`");
                return EXIT_USAGE;
            }
        },
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_MATH;
        }
    };
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buffer));
    let _ = out.write_all(&buffer);
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Usage line of the subcommand named on the command line, if any.
fn usage_for(args: &[OsString]) -> String {
    let mut command = Cli::command();
    let named = args.iter().skip(1).find_map(|a| {
        let a = a.to_str()?;
        command.get_subcommands().find(|s| s.get_name() == a).map(|s| s.get_name().to_string())
    });
    match named.and_then(|n| command.find_subcommand_mut(&n).cloned()) {
        Some(mut sub) => sub.render_usage().to_string().replacen("Usage: ", "Usage: bsdecomp ", 1),
        None => command.render_usage().to_string(),
    }
}

fn dispatch(command: Command, out: &mut Vec<u8>) -> CmdResult {
    match command {
        Command::Betti { ideal, k, format, out: dest } => cmd_betti(&ideal, k, format, dest.as_deref(), out),
        Command::Decompose { table, chain, out: dest } => cmd_decompose(&table, chain.as_deref(), dest.as_deref(), out),
        Command::Chains { m, n, c, count_only, out: dest } => cmd_chains(m, n, c, count_only, dest.as_deref(), out),
        Command::Stabilize { ideal, kmin, kmax, degree_bound, out: dest } => {
            cmd_stabilize(&ideal, kmin, kmax, degree_bound, dest.as_deref(), out)
        }
        Command::Verify { table, decomposition } => cmd_verify(&table, &decomposition, out),
    }
}

fn cmd_betti(ideal: &Path, k: u32, format: Format, dest: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let ideal = parse_ideal_json(&read(ideal)?).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let power = ideal.power(k).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let table = crate::monomial::betti_table(&power).map_err(|e| Failure::new(EXIT_MATH, e.to_string()))?;
    let text = match format {
        Format::Btt => table.to_btt(),
        Format::Json => json_line(&TableJson::from(&table)),
        Format::Pretty => table.pretty(),
    };
    emit(out, dest, &text)
}

fn cmd_decompose(table: &Path, chain: Option<&Path>, dest: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let table = read_table(table)?;
    let decomposition = match chain {
        None => greedy_decompose(&table).map_err(|e| Failure::new(EXIT_MATH, e.to_string()))?,
        Some(path) => {
            let elements: Vec<DegreeSequence> = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let chain = Chain::from_elements(elements).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            if !chain.is_maximal() {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("chain is not maximal in its window ({})", chain.window()),
                ));
            }
            if let Some(support) = table.support_window() {
                if !chain.window().contains_window(&support) {
                    return Err(Failure::new(
                        EXIT_USAGE,
                        format!("table support ({support}) lies outside the chain window ({})", chain.window()),
                    ));
                }
            }
            chain_decompose(&table, &chain).map_err(|e| Failure::new(EXIT_MATH, e.to_string()))?
        }
    };
    emit(out, dest, &json_line(&decomposition.to_json()))
}

fn cmd_chains(m: i64, n: i64, c: usize, count_only: bool, dest: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let window = Window::new(m, n, c).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let mut text = String::new();
    if count_only {
        text = format!("{}\n", enumerate_maximal_chains(window).count());
    } else {
        for chain in enumerate_maximal_chains(window) {
            text += &serde_json::to_string(chain.elements()).expect("serializable");
            text.push('\n');
        }
    }
    emit(out, dest, &text)
}

fn cmd_stabilize(
    ideal: &Path,
    kmin: i64,
    kmax: i64,
    degree_bound: Option<usize>,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let ideal = parse_ideal_json(&read(ideal)?).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    if kmin < 1 {
        return Err(Failure::new(EXIT_USAGE, "--kmin must be at least 1"));
    }
    let bound = degree_bound.unwrap_or(ideal.num_vars() - 1);
    let report = detect_stabilization(&ideal, kmin, kmax, bound).map_err(|e| {
        let code = match e {
            StabilizeError::NotStabilized { .. } | StabilizeError::InsufficientSamples { .. } => EXIT_NOT_STABILIZED,
            _ => EXIT_MATH,
        };
        Failure::new(code, e.to_string())
    })?;
    match dest {
        Some(path) => {
            emit(out, Some(path), &report.to_json_string())?;
            emit(out, None, &report.summary())
        }
        None => emit(out, None, &report.to_json_string()),
    }
}

fn cmd_verify(table: &Path, decomposition: &Path, out: &mut dyn Write) -> CmdResult {
    let table = read_table(table)?;
    let parsed: DecompositionJson = serde_json::from_str(&read(decomposition)?)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", decomposition.display())))?;
    let decomposition = parsed.to_decomposition().map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    if decomposition.window != table.window() {
        return Err(Failure::new(
            EXIT_VERIFY_FAILED,
            format!("window mismatch: decomposition ({}) vs table ({})", decomposition.window, table.window()),
        ));
    }
    let rebuilt = decomposition.reconstruct();
    if let Some((col, degree)) = rebuilt.first_difference(&table) {
        return Err(Failure::new(
            EXIT_VERIFY_FAILED,
            format!(
                "mismatch at column {col}, degree {degree}: table has {}, decomposition gives {}",
                table.get(col, degree),
                rebuilt.get(col, degree)
            ),
        ));
    }
    emit(out, None, "ok\n")
}
