//! Command-line front end: loads fans and divisors from JSON, runs the
//! verification suites, and writes reports as JSON or text.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or an
//! internal invariant breaks, 2 for invalid input or an unmet hypothesis.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_vanishing::catalog;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::fan::Fan;
use toric_vanishing::report::VerificationReport;
use toric_vanishing::suites;
use toric_vanishing::{Error, Result};

#[derive(Parser)]
#[command(
    name = "toricv",
    version,
    about = "Exact verification of vanishing theorems on toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ample integral divisor: no higher cohomology, propagated to all
    /// twisted log-form summands.
    CheckBott(DivisorRun),
    /// Ample fractional divisor: the canonical-plus-round-up table
    /// vanishes above degree zero, with the dual route cross-checked.
    CheckKv(DivisorRun),
    /// Monotone cohomology chain under iterated multiplication of an
    /// ample divisor by the prime.
    CheckInjection(InjectionRun),
    /// Structure-sheaf row concentration and first-page degeneration
    /// bookkeeping.
    CheckHodge(FanRun),
    /// Witt-level and residue-level section bases agree; reduction is
    /// onto, spot-checked on random sections.
    CheckLift(LiftRun),
    /// Every suite over catalog fans, primes, and sampled divisors.
    Suite(SuiteRun),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DivisorRun {
    /// Fan JSON: {"rank": n, "rays": [[..]], "max_cones": [[..]]}.
    #[arg(long)]
    fan: PathBuf,
    /// Divisor JSON: {"coeffs": ["1/2", "-3", ..]}.
    #[arg(long)]
    divisor: PathBuf,
    /// Prime characteristic.
    #[arg(long)]
    prime: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct InjectionRun {
    #[command(flatten)]
    base: DivisorRun,
    /// How many multiplications by the prime to chain.
    #[arg(long, default_value_t = suites::DEFAULT_CHAIN_DEPTH)]
    depth: u32,
}

#[derive(Args)]
struct FanRun {
    /// Fan JSON: {"rank": n, "rays": [[..]], "max_cones": [[..]]}.
    #[arg(long)]
    fan: PathBuf,
    /// Prime characteristic.
    #[arg(long)]
    prime: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LiftRun {
    #[command(flatten)]
    base: DivisorRun,
    /// Seed for the random section spot-checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SuiteRun {
    /// Comma-separated catalog fan names, or "all".
    #[arg(long, default_value = "all")]
    catalog: String,
    /// Comma-separated primes.
    #[arg(long, default_value = "2,3,5")]
    primes: String,
    /// Master seed; every sampled divisor derives from it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sampled divisors per fan, prime, and suite.
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[command(flatten)]
    out: Output,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan> {
    Fan::from_json_str(&read_file(path)?)
}

fn write_out(out: &Output, body: String) -> Result<()> {
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match &out.report {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit_single(out: &Output, report: &VerificationReport) -> Result<i32> {
    let body = match out.format {
        Format::Json => report.to_json_string()?,
        Format::Text => report.render_text(),
    };
    write_out(out, body)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn divisor_report(
    run: &DivisorRun,
    check: impl FnOnce(&Fan, &QDivisor, u64) -> Result<VerificationReport>,
) -> Result<i32> {
    let fan = load_fan(&run.fan)?;
    let divisor = QDivisor::from_json_str(&fan, &read_file(&run.divisor)?)?;
    let report = check(&fan, &divisor, run.prime)?;
    emit_single(&run.out, &report)
}

fn parse_primes(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad prime list entry {part:?}")))
        })
        .collect()
}

fn parse_catalog(s: &str) -> Result<Vec<String>> {
    if s.trim() == "all" {
        return Ok(catalog::acceptance_catalog().into_iter().map(|(name, _)| name).collect());
    }
    // Split on commas outside parentheses, so names like P(1,1,2) survive.
    let mut names = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                names.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        names.push(current.trim().to_string());
    }
    for name in &names {
        catalog::catalog_fan(name)?;
    }
    Ok(names)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::CheckBott(run) => divisor_report(&run, suites::check_bott),
        Command::CheckKv(run) => divisor_report(&run, suites::check_kv),
        Command::CheckInjection(run) => {
            let depth = run.depth;
            divisor_report(&run.base, |fan, divisor, prime| {
                suites::check_injection(fan, divisor, prime, depth)
            })
        }
        Command::CheckHodge(run) => {
            let fan = load_fan(&run.fan)?;
            let report = suites::check_hodge(&fan, run.prime)?;
            emit_single(&run.out, &report)
        }
        Command::CheckLift(run) => {
            let seed = run.seed;
            divisor_report(&run.base, |fan, divisor, prime| {
                suites::check_strong_lift(fan, divisor, prime, seed)
            })
        }
        Command::Suite(run) => {
            let config = suites::SuiteConfig {
                fans: parse_catalog(&run.catalog)?,
                primes: parse_primes(&run.primes)?,
                seed: run.seed,
                samples: run.samples,
            };
            let reports = suites::run_suite(&config)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let body = match run.out.format {
                Format::Json => serde_json::to_string_pretty(&reports)
                    .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?,
                Format::Text => {
                    let mut text = String::new();
                    for r in &reports {
                        text.push_str(&r.render_text());
                        text.push('\n');
                    }
                    text.push_str(&format!(
                        "{} suite reports, {} failed\n",
                        reports.len(),
                        failed
                    ));
                    text
                }
            };
            write_out(&run.out, body)?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}
