use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use z22geo::audit::run_checks;
use z22geo::document::{construction_document, degeneration_document, verify};
use z22geo::{atlas, construct, degenerate, emit, Format};

const BOUND: i64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "z22geo",
    version,
    about = "Bidouble covers of rational surfaces and the geography they realize"
)]
struct Cli {
    /// Print canonical JSON documents instead of human-readable summaries.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

fn bounded(s: &str) -> Result<i64, String> {
    let v: i64 = s
        .parse()
        .map_err(|e| format!("{s:?} is not an integer: {e}"))?;
    if v.abs() > BOUND {
        return Err(format!("{v} is outside [-{BOUND}, {BOUND}]"));
    }
    Ok(v)
}

#[derive(Subcommand)]
enum Command {
    /// Build and certify the cover realizing (K^2, chi).
    Construct {
        #[arg(value_parser = bounded, allow_negative_numbers = true)]
        ksq: i64,
        #[arg(value_parser = bounded, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Re-derive every field of a stored certificate document.
    Verify { path: PathBuf },
    /// Build the non-Gorenstein degeneration of the cover realizing (K^2, chi).
    Degenerate {
        #[arg(value_parser = bounded, allow_negative_numbers = true)]
        ksq: i64,
        #[arg(value_parser = bounded, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Sweep 1 <= chi <= N and write the atlas.
    Atlas {
        #[arg(long, default_value_t = 60, value_parser = bounded)]
        chi_max: i64,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite.
    Check {
        #[arg(long, default_value_t = 20, value_parser = bounded)]
        chi_max: i64,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Construct { ksq, chi } => {
            let cert = construct(ksq, chi)?;
            if cli.json {
                print!("{}", construction_document(&cert)?);
            } else {
                let inv = cert.invariants;
                println!(
                    "({ksq}, {chi}): {} on {}",
                    cert.region,
                    cert.building_data.ambient().key()
                );
                for (i, b) in cert.building_data.branches().iter().enumerate() {
                    println!("  D{} = {}", i + 1, b.class);
                }
                println!(
                    "  K^2 = {}, chi = {}, pg = {}, q = {}",
                    inv.ksq, inv.chi, inv.pg, inv.q
                );
                println!(
                    "  2K pushdown {}: {}",
                    cert.canonical_pushdown, cert.ampleness
                );
                for c in cert.failed_conditions() {
                    println!("  FAILED {}: {} (needs {})", c.name, c.value, c.requirement);
                }
                println!("  status: {:?}", cert.status);
            }
            Ok(cert.verified())
        }
        Command::Degenerate { ksq, chi } => {
            let dc = degenerate(&construct(ksq, chi)?)?;
            if cli.json {
                print!("{}", degeneration_document(&dc)?);
            } else {
                println!(
                    "({ksq}, {chi}): {} degeneration moving D{}",
                    dc.parent.region, dc.moved_branch
                );
                for entry in &dc.ledger.entries {
                    println!(
                        "  {:?} x{} (index {}) at {}",
                        entry.kind,
                        entry.count,
                        entry.gorenstein_index,
                        entry.witness.label()
                    );
                }
                if let Some(n) = &dc.normalization_data {
                    println!(
                        "  normalization: C = ({}, {}, {}), {} component(s)",
                        n.c1, n.c2, n.c3, n.connected_components
                    );
                }
                println!("  gorenstein: {}", dc.gorenstein);
            }
            Ok(dc.verified())
        }
        Command::Verify { path } => {
            let text =
                fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let report = verify(&text)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let failures: Vec<_> = report.failures().collect();
                for f in &failures {
                    println!("FAIL {}: {}", f.field, f.detail);
                }
                println!(
                    "{} of {} fields verified",
                    report.checks.len() - failures.len(),
                    report.checks.len()
                );
            }
            if !report.passed() {
                let names: Vec<_> = report.failures().map(|f| f.field.as_str()).collect();
                bail!("verification failed: {}", names.join(", "));
            }
            Ok(true)
        }
        Command::Atlas {
            chi_max,
            format,
            out,
        } => {
            let format: Format = format.parse()?;
            let rows = atlas(chi_max);
            let doc = emit(&rows, format)?;
            match out {
                Some(path) => {
                    fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{doc}"),
            }
            Ok(true)
        }
        Command::Check { chi_max } => {
            let summaries = run_checks(chi_max);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&summaries)?);
            } else {
                for s in &summaries {
                    let mark = if s.passed() { "ok  " } else { "FAIL" };
                    print!(
                        "{mark} {:<22} {:>7} checked {:>5} failed",
                        s.name, s.checked, s.failed
                    );
                    match &s.first_failure {
                        Some(f) => println!("  first: {f}"),
                        None => println!(),
                    }
                }
            }
            Ok(summaries.iter().all(|s| s.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
