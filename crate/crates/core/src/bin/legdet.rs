use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use legdet::report::{write_reports, Format};
use legdet::suites::{self, Mode410, Options, Suite, TableKind, TABLE_PRIMES};
use legdet::{quadfield, Error, PrimeCtx, Report};

#[derive(Parser)]
#[command(name = "legdet", version, about = "Exact verification of Legendre-symbol determinant evaluations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, env = "LEGDET_FORMAT", default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the logical core count (1 when the cyclotomic suite is selected).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = legdet::cyclo::DEFAULT_MAX_PRIME)]
    max_cyclo_prime: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Record per-check elapsed milliseconds (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Cmd {
    /// Unit, class number and the (p, L, A, B, LQ) row.
    Invariants {
        #[arg(required = true)]
        primes: Vec<u64>,
    },
    /// The four-variable determinant identity and its inverse package.
    Verify48 {
        p: u64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// The half-system congruence, sign-pair corollary and degenerate cases.
    Verify410 {
        p: u64,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest prime treated exhaustively in auto mode.
        #[arg(long, default_value_t = 13)]
        exhaustive_limit: u64,
    },
    /// The cyclotomic factorisation suite.
    Cyclo {
        p: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        t: Vec<BigRational>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        rho: Vec<BigRational>,
    },
    /// Run suites over every prime p ≡ 1 (mod 4) in [from, to].
    Scan {
        from: u64,
        to: u64,
        /// Comma list of invariants, 48, 410, 410-corollary, cyclo.
        #[arg(long, value_delimiter = ',', default_value = "invariants")]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Regenerate a table from live computation.
    Table {
        which: TableKind,
        /// Primes to tabulate (defaults to 5, 13, 17, 29, 37, 41).
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out: Box<dyn Write> = match &cli.common.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            suites::error_exit_code(&e)
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let c = &cli.common;
    let mut opts = Options {
        seed: c.seed,
        max_cyclo_prime: c.max_cyclo_prime,
        timings: c.timings,
        ..Options::default()
    };
    let reports: Vec<Report> = match &cli.cmd {
        Cmd::Invariants { primes } => return invariants(primes, &opts, c.format, out),
        Cmd::Verify48 { p, points } => {
            opts.points = *points;
            suites::verify48_suite(*p, &opts)?
        }
        Cmd::Verify410 { p, mode, samples, exhaustive_limit } => {
            opts.samples = *samples;
            opts.exhaustive_limit = *exhaustive_limit;
            opts.mode = match mode {
                ModeArg::Auto => Mode410::Auto,
                ModeArg::Exhaustive => Mode410::Exhaustive,
                ModeArg::Sampled => Mode410::Sampled,
            };
            suites::verify410_suite(*p, &opts)?
        }
        Cmd::Cyclo { p, t, rho } => {
            if t.len() != rho.len() {
                return Err(Error::InvalidArgument("--t and --rho need the same length".into()));
            }
            opts.t_values = t.clone();
            opts.rho_values = rho.clone();
            suites::cyclo_suite(*p, &opts)?
        }
        Cmd::Scan { from, to, suites: which, points, samples } => {
            opts.points = *points;
            opts.samples = *samples;
            let jobs = c.jobs.unwrap_or_else(|| {
                if which.contains(&Suite::Cyclo) {
                    1
                } else {
                    std::thread::available_parallelism().map_or(1, |n| n.get())
                }
            });
            suites::scan(*from, *to, which, jobs, &opts)?
        }
        Cmd::Table { which, primes } => {
            let primes = if primes.is_empty() { TABLE_PRIMES.to_vec() } else { primes.clone() };
            let t = suites::table(*which, &primes)?;
            let s = match c.format {
                Format::Text => t.to_text(),
                Format::Csv => t.to_csv(),
                Format::Records => t.to_records(),
            };
            out.write_all(s.as_bytes()).map_err(io_err)?;
            return Ok(0);
        }
    };
    write_reports(&mut *out, &reports, c.format).map_err(io_err)?;
    Ok(suites::exit_code(&reports))
}

fn invariants(primes: &[u64], opts: &Options, format: Format, out: &mut dyn Write) -> Result<i32, Error> {
    let mut reports = Vec::new();
    for &p in primes {
        reports.extend(suites::invariants_suite(p, opts)?);
    }
    match format {
        Format::Csv => {
            let t = suites::invariants_table(primes)?;
            out.write_all(t.to_csv().as_bytes()).map_err(io_err)?;
        }
        Format::Text => {
            for &p in primes {
                let u = quadfield::unit_data(&PrimeCtx::new(p)?)?;
                writeln!(out, "p = {p}  row ({})  h = {}  ε = {}", u.row(), u.h, u.eps).map_err(io_err)?;
            }
            write_reports(&mut *out, &reports, format).map_err(io_err)?;
        }
        Format::Records => write_reports(&mut *out, &reports, format).map_err(io_err)?,
    }
    Ok(suites::exit_code(&reports))
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}
