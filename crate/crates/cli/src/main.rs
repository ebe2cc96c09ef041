//! `sylvester`: exact restricted partition counts from Sylvester waves.
//!
//! Exit codes: 0 success, 1 verification failure or oracle mismatch,
//! 2 usage error, 3 enumeration cap exceeded.

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sylvester_core::oracle::dp_count;
use sylvester_core::quasi::QuasiPolyDocument;
use sylvester_core::verify::verify;
use sylvester_core::waves::{assemble, sylvester_waves};
use sylvester_core::{par, Error, GeneratorSet, Rational, DEFAULT_ENUMERATION_CAP};

mod svalues;

use svalues::SValues;

#[derive(Parser)]
#[command(
    name = "sylvester",
    version,
    about = "Restricted partition functions as sums of Sylvester waves"
)]
struct Cli {
    /// Worker count for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Generators as a comma-separated list, duplicates kept (e.g. 1,2,3).
    #[arg(short = 'd', long = "generators")]
    generators: GeneratorSet,

    /// Maximum shift vectors enumerated per wave.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate W(s, d) for one or more s.
    Eval {
        #[command(flatten)]
        common: Common,
        /// A value (6, 10^6), an inclusive range (0..20), or a list (1,5,9).
        #[arg(short = 's', long = "s")]
        s: SValues,
        /// Also run the dynamic-programming oracle and report MATCH/MISMATCH.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the quasipolynomial as JSON.
    Quasipoly {
        #[command(flatten)]
        common: Common,
        /// Include each wave W_j separately.
        #[arg(long)]
        waves: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Check the closed form against both oracles and every wave identity.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Oracle comparison runs over s = 0..=H.
        #[arg(short = 'H', long = "horizon", default_value_t = 100)]
        horizon: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time closed-form evaluation against the oracle, as CSV.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(short = 's', long = "s")]
        s: SValues,
    },
}

enum Failure {
    Mismatch,
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = par::set_worker_count(threads) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Eval {
            common,
            s,
            check,
            format,
        } => cmd_eval(&mut out, &common, &s, check, format),
        Command::Quasipoly {
            common,
            waves,
            pretty,
        } => cmd_quasipoly(&mut out, &common, waves, pretty),
        Command::Verify {
            common,
            horizon,
            format,
        } => cmd_verify(&mut out, &common, horizon, format),
        Command::Bench { common, s } => cmd_bench(&mut out, &common, &s),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => 3,
                _ => 2,
            })
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_eval(
    out: &mut impl Write,
    common: &Common,
    s: &SValues,
    check: bool,
    format: Format,
) -> Result<(), Failure> {
    let g = &common.generators;
    let w = assemble(g, &sylvester_waves(g, common.cap)?);
    let values = s.values();
    let oracle = if check {
        Some(dp_count(s.max(), g.generators())?)
    } else {
        None
    };
    let mut mismatch = false;
    let mut rows = Vec::new();
    for &s in &values {
        let value = w.eval(s);
        let matched = oracle
            .as_ref()
            .map(|t| Rational::from(t.get(s).clone()) == value);
        mismatch |= matched == Some(false);
        rows.push((s, value, matched));
    }
    match format {
        Format::Text => {
            let single = values.len() == 1;
            for (s, value, matched) in &rows {
                let tag = match matched {
                    Some(true) => " MATCH",
                    Some(false) => " MISMATCH",
                    None => "",
                };
                if single {
                    writeln!(out, "{value}{tag}")?;
                } else {
                    writeln!(out, "{s} {value}{tag}")?;
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(s, value, matched)| {
                    let mut row = serde_json::json!({ "s": s, "value": value.to_string() });
                    if let (Some(m), Some(t)) = (matched, &oracle) {
                        row["dp"] = t.get(*s).to_string().into();
                        row["match"] = (*m).into();
                    }
                    row
                })
                .collect();
            let doc = serde_json::json!({ "generators": g.generators(), "values": rows });
            writeln!(out, "{doc}")?;
        }
    }
    if mismatch {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn cmd_quasipoly(
    out: &mut impl Write,
    common: &Common,
    with_waves: bool,
    pretty: bool,
) -> Result<(), Failure> {
    let g = &common.generators;
    let waves = sylvester_waves(g, common.cap)?;
    let w = assemble(g, &waves);
    let mut doc = QuasiPolyDocument::new(g.generators(), &w);
    if with_waves {
        doc = doc.with_waves(&waves);
    }
    let text = if pretty {
        doc.to_json_pretty()
    } else {
        doc.to_json()
    };
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_verify(
    out: &mut impl Write,
    common: &Common,
    horizon: u64,
    format: Format,
) -> Result<(), Failure> {
    let g = &common.generators;
    let report = verify(g, horizon, common.cap)?;
    match format {
        Format::Text => {
            writeln!(out, "generators {g}, horizon {horizon}")?;
            for check in &report.checks {
                writeln!(out, "{check}")?;
            }
            let passed = report.checks.iter().filter(|c| c.passed).count();
            writeln!(out, "{passed}/{} checks passed", report.checks.len())?;
        }
        Format::Json => {
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|c| serde_json::json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            let doc = serde_json::json!({
                "generators": g.generators(),
                "horizon": horizon,
                "passed": report.passed(),
                "checks": checks,
            });
            writeln!(out, "{doc}")?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_bench(out: &mut impl Write, common: &Common, s: &SValues) -> Result<(), Failure> {
    let g = &common.generators;
    let start = Instant::now();
    let w = assemble(g, &sylvester_waves(g, common.cap)?);
    eprintln!(
        "# quasipolynomial construction: {} ns",
        start.elapsed().as_nanos()
    );
    writeln!(out, "s,closed_form_ns,dp_ns,agree")?;
    let mut disagree = false;
    for s in s.values() {
        let start = Instant::now();
        let closed = w.eval(s);
        let closed_ns = start.elapsed().as_nanos();
        let start = Instant::now();
        let table = dp_count(s, g.generators())?;
        let dp_ns = start.elapsed().as_nanos();
        let agree = closed == Rational::from(table.get(s).clone());
        disagree |= !agree;
        writeln!(out, "{s},{closed_ns},{dp_ns},{agree}")?;
    }
    if disagree {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}
