use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use branch_invariants::check;
use branch_invariants::enumerate::{self, EnumerationBounds};
use branch_invariants::output::{self, ClassReport, OutputFormat};
use branch_invariants::{CharacteristicExponents, Error, SemigroupGenerators};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

const THREADS_VAR: &str = "BRANCH_INVARIANTS_THREADS";

/// Topological invariants and minimal Tjurina numbers of plane branches.
#[derive(Parser)]
#[command(name = "branch-invariants", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every invariant of one equisingularity class.
    Invariants {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Evaluate and check every class within the given bounds.
    ///
    /// Records go to --out (or stdout); the summary line goes to stderr.
    Sweep {
        #[command(flatten)]
        bounds: BoundArgs,
        /// Maximum number of characteristic pairs (unbounded if omitted).
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled identity suite.
    Check {
        #[arg(long, default_value_t = check::DEFAULT_MAX_MULTIPLICITY)]
        max_mult: u64,
        #[arg(long, default_value_t = check::DEFAULT_MAX_BETA)]
        max_beta: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClassArgs {
    /// Characteristic exponents as n:b1,b2,...,bg (the colon separates the multiplicity).
    #[arg(long, value_name = "N:B1,..,BG")]
    char_exponents: Option<String>,
    /// Semigroup generators as g0,g1,...,gg.
    #[arg(long, value_name = "G0,..,GG")]
    semigroup: Option<String>,
    /// One-pair class (n; m) given as n,m with n < m coprime.
    #[arg(long, value_name = "N,M")]
    pair: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    /// Largest multiplicity n to enumerate (at least 2).
    #[arg(long)]
    max_mult: u64,
    /// Largest last characteristic exponent beta_g (must exceed --max-mult).
    #[arg(long)]
    max_beta: u64,
}

impl ClassArgs {
    fn resolve(&self) -> Result<CharacteristicExponents, Error> {
        if let Some(s) = &self.char_exponents {
            return s.parse();
        }
        if let Some(s) = &self.semigroup {
            return s.parse::<SemigroupGenerators>()?.char_exponents();
        }
        let s = self.pair.as_deref().unwrap_or_default();
        match s.split(',').collect::<Vec<_>>().as_slice() {
            [n, m] => {
                let n = n.trim().parse().map_err(|_| Error::Parse(format!("pair {s:?}")))?;
                let m = m.trim().parse().map_err(|_| Error::Parse(format!("pair {s:?}")))?;
                CharacteristicExponents::new(n, vec![m])
            }
            _ => Err(Error::Parse(format!("pair {s:?}: expected n,m"))),
        }
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn error_exit(e: &Error) -> ExitCode {
    fail(if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL }, e)
}

fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
        },
    }
}

fn run_invariants(class: &ClassArgs, format: OutputFormat) -> ExitCode {
    let report = class.resolve().and_then(|c| ClassReport::new(&c));
    match report {
        Ok(r) => {
            print!("{}", r.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => error_exit(&e),
    }
}

fn run_sweep(
    bounds: &BoundArgs,
    max_pairs: Option<usize>,
    format: OutputFormat,
    out: Option<&PathBuf>,
) -> ExitCode {
    let b = match EnumerationBounds::new(bounds.max_mult, bounds.max_beta, max_pairs) {
        Ok(b) => b,
        Err(e) => return error_exit(&e),
    };
    let records = match threads_from_env() {
        Err(msg) => return fail(EXIT_INPUT, msg),
        Ok(None) => enumerate::sweep(b),
        Ok(Some(t)) => match enumerate::sweep_with_threads(b, t) {
            Ok(r) => r,
            Err(e) => return error_exit(&e),
        },
    };
    let summary = enumerate::summarize(&records);
    let rendered = output::render_sweep(&records, &summary, format);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                return fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    eprintln!("{}", output::summary_line(&summary));
    if summary.failed_checks > 0 {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_check(max_mult: u64, max_beta: u64) -> ExitCode {
    let b = match EnumerationBounds::new(max_mult, max_beta, None) {
        Ok(b) => b,
        Err(e) => return error_exit(&e),
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    match check::run(b, threads) {
        Ok(summary) => {
            for name in &summary.identities {
                println!("ok  {name}");
            }
            println!("{} classes checked (n <= {max_mult}, beta_g <= {max_beta})", summary.classes);
            ExitCode::SUCCESS
        }
        Err(f) => fail(EXIT_CHECK_FAILED, format!("{} failed at {}", f.identity, f.detail)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match &cli.command {
        Command::Invariants { class, format } => run_invariants(class, *format),
        Command::Sweep { bounds, max_pairs, format, out } => {
            run_sweep(bounds, *max_pairs, *format, out.as_ref())
        }
        Command::Check { max_mult, max_beta } => run_check(*max_mult, *max_beta),
    }
}
