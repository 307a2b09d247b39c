use std::io::{self, BufRead, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use wittlab::acceptance::{run_suite, Profile};
use wittlab::context::PrecisionCtx;
use wittlab::eval::{eval_str, EvalError};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

/// Exact computations with Witt vectors, the tilt, theta_n and the TR model.
#[derive(Parser)]
#[command(name = "wittlab", version)]
struct Cli {
    /// Odd prime.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// p-adic precision in digits.
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Deepest level of the cyclotomic tower.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Largest Witt vector length.
    #[arg(long, global = true)]
    len: Option<usize>,
    /// Guard digits for ghost inversion.
    #[arg(long, global = true)]
    guard: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a JSON request read from stdin.
    Eval {
        /// Read one request per line and answer one per line.
        #[arg(long)]
        batch: bool,
    },
    /// Run the acceptance suite and print a JSON report.
    Selftest {
        #[arg(long, value_enum, default_value_t = ProfileName::Small)]
        profile: ProfileName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileName {
    Small,
    Full,
}

fn context(cli: &Cli) -> Result<PrecisionCtx, String> {
    let d = PrecisionCtx::default();
    let len = cli.len.unwrap_or(d.len);
    PrecisionCtx::new(
        cli.p.unwrap_or(d.p),
        cli.prec.unwrap_or(d.prec),
        cli.depth.unwrap_or(d.depth),
        len,
        cli.guard.unwrap_or(d.guard.max(len as u32)),
    )
    .map_err(|e| e.to_string())
}

fn exit_code(err: &EvalError) -> u8 {
    if err.is_precision() {
        EXIT_PRECISION
    } else if err.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}

fn answer(ctx: &PrecisionCtx, line: &str) -> (Value, u8) {
    let (response, err) = eval_str(ctx, line);
    (response, err.as_ref().map_or(0, exit_code))
}

fn eval(ctx: &PrecisionCtx, batch: bool) -> io::Result<u8> {
    let stdin = io::stdin();
    let mut out = io::stdout().lock();
    if !batch {
        let mut input = String::new();
        stdin.lock().read_to_string(&mut input)?;
        let (response, code) = answer(ctx, &input);
        writeln!(out, "{response}")?;
        return Ok(code);
    }
    let mut worst = 0;
    for line in stdin.lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (response, code) = answer(ctx, &line);
        writeln!(out, "{response}")?;
        worst = worst.max(code);
    }
    Ok(worst)
}

fn selftest(profile: ProfileName) -> io::Result<u8> {
    let profile = match profile {
        ProfileName::Small => Profile::small(),
        ProfileName::Full => Profile::full(),
    };
    let report = run_suite(&profile);
    let json = serde_json::to_string_pretty(&report).map_err(io::Error::other)?;
    println!("{json}");
    Ok(if report.passed { 0 } else { EXIT_FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match context(&cli) {
        Ok(ctx) => ctx,
        Err(msg) => {
            eprintln!("wittlab: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Eval { batch } => eval(&ctx, batch),
        Command::Selftest { profile } => selftest(profile),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("wittlab: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
