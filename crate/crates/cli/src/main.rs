//! `pgolay`: verify published pairs, run searches, list length conditions,
//! export Hadamard matrices and print orbit tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pgolay::search::{run_pipeline, SearchPlan};
use pgolay::{
    build_hadamard, check_square_decomposition, classify_length, close_subgroup, is_hadamard, open_candidates, orbit_partition, parse_fixture, psd_test,
    Error, FixtureSpec, SquareMatrix,
};

#[derive(Parser)]
#[command(name = "pgolay", version, about = "Periodic Golay pairs: verification, search and Hadamard export")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every pair in a fixture file.
    Verify { fixtures: PathBuf },
    /// Run a search plan.
    Search {
        plan: PathBuf,
        /// Worker threads for enumeration [default: available parallelism].
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for candidate files, the report and solutions.pairs.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Necessary-condition verdicts for lengths 1..=N.
    Conditions {
        n: u64,
        /// Print only the lengths whose existence is open.
        #[arg(long)]
        open_only: bool,
    },
    /// Write the order-2v Hadamard matrix of every pair in a fixture file.
    Hadamard {
        fixtures: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write each matrix as CSV of ±1.
        #[arg(long)]
        csv: bool,
    },
    /// Print the orbits of the unit subgroup generated by `--gens`.
    Orbits {
        #[arg(long = "v")]
        v: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        gens: Vec<usize>,
    },
}

const OK: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const IO: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => IO,
        Error::Parse { .. }
        | Error::RepNotCanonical { .. }
        | Error::ParamMismatch { .. }
        | Error::InvalidPlan(_)
        | Error::NotAUnit { .. }
        | Error::ZeroModulus => USAGE,
        _ => VERIFY_FAILED,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { fixtures } => verify(&fixtures),
        Command::Search { plan, jobs, out } => search(&plan, jobs, out.as_deref()),
        Command::Conditions { n, open_only } => conditions(n, open_only),
        Command::Hadamard { fixtures, out, csv } => hadamard(&fixtures, &out, csv),
        Command::Orbits { v, gens } => orbits(v, &gens),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(e),
    }
}

fn load_fixtures(path: &Path) -> Result<Vec<FixtureSpec>, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_fixture(&text)
}

/// Verified pair, square decomposition and Hadamard check for one fixture.
fn check(f: &FixtureSpec) -> Result<(i64, i64, SquareMatrix), Error> {
    let pair = f.verify()?;
    let (a, b) = check_square_decomposition(&f.params)?;
    if !psd_test(pair.a()) || !psd_test(pair.b()) {
        return Err(Error::ParameterInfeasible { reason: "a sequence fails the PSD test".into() });
    }
    let m = build_hadamard(&pair);
    if !is_hadamard(&m) {
        return Err(Error::CheckDisagreement { v: f.v() });
    }
    Ok((a, b, m))
}

fn verify(path: &Path) -> Result<u8, Error> {
    let fixtures = load_fixtures(path)?;
    let mut failed = 0;
    for f in &fixtures {
        match check(f) {
            Ok((a, b, m)) => println!("PASS line={} v={} params={} a={a} b={b} hadamard_order={}", f.line, f.v(), f.params, m.order()),
            Err(e) => {
                failed += 1;
                println!("FAIL line={} v={} params={} reason: {e}", f.line, f.v(), f.params);
            }
        }
    }
    println!("{} passed, {} failed", fixtures.len() - failed, failed);
    Ok(if failed == 0 { OK } else { VERIFY_FAILED })
}

fn search(plan_path: &Path, jobs: Option<usize>, out: Option<&Path>) -> Result<u8, Error> {
    let plan = SearchPlan::from_path(plan_path)?;
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run_pipeline(&plan, jobs, out)?;
    print!("{report}");
    if out.is_none() && report.feasible {
        println!("# solutions");
        for s in report.solutions(&plan.table())? {
            println!("{s}");
        }
    }
    Ok(OK)
}

fn conditions(n: u64, open_only: bool) -> Result<u8, Error> {
    if n == 0 {
        eprintln!("error: N must be at least 1");
        return Ok(USAGE);
    }
    if open_only {
        for v in open_candidates(n) {
            println!("{v}");
        }
    } else {
        for v in 1..=n {
            println!("{}", classify_length(v));
        }
    }
    Ok(OK)
}

fn hadamard(path: &Path, out: &Path, csv: bool) -> Result<u8, Error> {
    let fixtures = load_fixtures(path)?;
    std::fs::create_dir_all(out).map_err(|source| Error::Io { path: out.to_path_buf(), source })?;
    let mut failed = 0;
    for (i, f) in fixtures.iter().enumerate() {
        let m = match check(f) {
            Ok((_, _, m)) => m,
            Err(e) => {
                failed += 1;
                println!("FAIL line={} v={} reason: {e}", f.line, f.v());
                continue;
            }
        };
        let file = out.join(format!("hadamard-v{}-{}.txt", f.v(), i + 1));
        write(&file, &m.to_string())?;
        if csv {
            write(&file.with_extension("csv"), &m.to_csv())?;
        }
        println!("WROTE {} order={}", file.display(), m.order());
    }
    Ok(if failed == 0 { OK } else { VERIFY_FAILED })
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn orbits(v: usize, gens: &[usize]) -> Result<u8, Error> {
    let h = close_subgroup(v, gens)?;
    print!("{}", orbit_partition(&h));
    Ok(OK)
}
