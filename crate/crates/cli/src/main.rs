use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use uqint::appendix::AppendixRanges;
use uqint::dump::{self, DumpRequest, MatrixDump};
use uqint::report::{aggregate, sort_reports, Status};
use uqint::suites::{run_suite, RunConfig, Suite};
use uqint::CycContext;

#[derive(Parser)]
#[command(name = "uqint", version, about = "Exact verification of integral quantum representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report, or dump one exact matrix.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["suite", "dump"])))]
struct VerifyArgs {
    /// Odd prime order of the root of unity.
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Suite to run; repeatable. `all` selects every suite.
    #[arg(long, value_parser = parse_suite, conflicts_with = "dump")]
    suite: Vec<Vec<Suite>>,
    /// Override an appendix index bound, e.g. `C=20`.
    #[arg(long = "range", value_name = "FAMILY=N", value_parser = parse_range)]
    ranges: Vec<(String, i64)>,
    /// Report or dump destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of suites run at once.
    #[arg(long)]
    workers: Option<usize>,
    /// Write one matrix instead of running suites: `psi|hkl|heisenberg : GENERATOR : BASIS`.
    #[arg(long, value_name = "REP:GEN:BASIS", value_parser = parse_dump)]
    dump: Option<DumpRequest>,
}

fn parse_suite(s: &str) -> Result<Vec<Suite>, String> {
    Suite::parse_many(s).map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("{e}; expected one of {} or all", names.join(", "))
    })
}

fn parse_range(s: &str) -> Result<(String, i64), String> {
    let (family, n) = s.split_once('=').ok_or_else(|| format!("expected FAMILY=N, got {s:?}"))?;
    let n: i64 = n.trim().parse().map_err(|_| format!("bad bound {n:?}"))?;
    // reject unknown families here rather than after the run starts
    AppendixRanges::for_r(3).set(family.trim(), n)?;
    Ok((family.trim().to_owned(), n))
}

fn parse_dump(s: &str) -> Result<DumpRequest, String> {
    s.parse().map_err(|e: dump::DumpError| e.to_string())
}

/// Failures that map to exit code 2.
struct ConfigError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.into())
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.write_all(b"\n")?;
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<Status, ConfigError> {
    let ctx = CycContext::new(args.r)?;
    if args.genus == 0 {
        return Err(anyhow::anyhow!("genus must be at least 1").into());
    }

    if let Some(req) = &args.dump {
        let (m, note) = dump::compute(req, ctx, args.genus)?;
        let d = MatrixDump::from_matrix(req, args.r, args.genus, note, &m);
        write_out(&args.out, &serde_json::to_string_pretty(&d)?)?;
        return Ok(Status::Pass);
    }

    let mut cfg = RunConfig::new(ctx, args.genus);
    for (family, n) in &args.ranges {
        cfg.ranges.set(family, *n).map_err(anyhow::Error::msg)?;
    }
    let mut suites: Vec<Suite> = args.suite.into_iter().flatten().collect();
    suites.sort();
    suites.dedup();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.workers {
        if n == 0 {
            return Err(anyhow::anyhow!("--workers must be positive").into());
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let mut reports: Vec<_> = pool.install(|| suites.par_iter().flat_map_iter(|s| run_suite(*s, &cfg)).collect());
    sort_reports(&mut reports);

    write_out(&args.out, &serde_json::to_string_pretty(&reports)?)?;
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    eprintln!(
        "r={} genus={}: {} checks, {} pass, {} warn, {} fail",
        args.r,
        args.genus,
        reports.len(),
        count(Status::Pass),
        count(Status::Warn),
        count(Status::Fail)
    );
    for r in reports.iter().filter(|r| r.status == Status::Fail) {
        eprintln!("FAIL {r}");
    }
    Ok(aggregate(&reports))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let Command::Verify(args) = cli.command;
    match verify(args) {
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(ConfigError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
