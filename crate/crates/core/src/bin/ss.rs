//! Batch CLI for the spectral-sequence calculator.
//!
//! Example:
//!
//! ```text
//! ss --family links --strands 2 --ambient 4 --qmax 9 --field q --format json
//! ```
//!
//! Exit codes: 0 ok, 1 check failure, 2 usage error, 3 resource truncation.

use anyhow::Context;
use bkss_core::graph::Family;
use bkss_core::job::{self, CheckFlags, JobConfig, OutputFormat};
use bkss_core::linalg::FieldSpec;
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum CheckName {
    Identities,
    Euler,
    Vanishing,
    D1sq,
}

#[derive(Parser, Debug)]
#[command(
    name = "ss",
    about = "Exact Bousfield-Kan spectral sequence pages for knots, links, homotopy links and braids",
    version
)]
struct Cli {
    /// Model family: knots | links | hlinks | braids.
    #[arg(long)]
    family: Family,

    /// Number of strands m (knots require 1).
    #[arg(long, default_value_t = 1)]
    strands: u32,

    /// Ambient dimension n (>= 3; braids need >= 4).
    #[arg(long)]
    ambient: u32,

    /// Compute rows q = 0..=qmax (default: twice the generator degree).
    #[arg(long)]
    qmax: Option<u32>,

    /// Coefficient field: 'q' for the rationals or a prime.
    #[arg(long, default_value = "q")]
    field: FieldSpec,

    /// Output format: json | csv | table.
    #[arg(long, default_value = "table")]
    format: OutputFormat,

    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Self-checks to run (repeatable).  Default: euler, vanishing, d1sq.
    #[arg(long = "check", value_enum)]
    checks: Vec<CheckName>,

    /// Flag rows whose bases exceed this size as truncated instead of
    /// computing them (exit code 3).
    #[arg(long)]
    max_basis: Option<usize>,

    /// Worker threads (also via the SS_THREADS environment variable).
    #[arg(long)]
    threads: Option<usize>,

    /// Print the normalized basis at one spot as chord/tensor diagrams
    /// ("Q,P") instead of computing pages.
    #[arg(long, value_name = "Q,P")]
    print_basis: Option<String>,
}

fn print_basis(cli: &Cli, spot: &str) -> anyhow::Result<()> {
    let (q, p) = spot
        .split_once(',')
        .context("expected Q,P, e.g. --print-basis 3,2")?;
    let (q, p): (u32, u32) = (q.trim().parse()?, p.trim().parse()?);
    let spec = bkss_core::models::ModelSpec::new(cli.family, cli.strands, cli.ambient, cli.field)?;
    let model = bkss_core::models::Model::new(spec)?;
    let basis = model.normalized_basis(p, q);
    println!("normalized basis at q={q}, p={p}: {} diagrams", basis.len());
    for mono in basis.iter() {
        println!("{}", model.display_mono(p, mono));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(spot) = &cli.print_basis {
        return match print_basis(&cli, spot) {
            Ok(()) => ExitCode::from(job::EXIT_OK as u8),
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(job::EXIT_USAGE as u8)
            }
        };
    }

    let checks = if cli.checks.is_empty() {
        CheckFlags::default()
    } else {
        CheckFlags {
            d1sq: cli.checks.contains(&CheckName::D1sq),
            euler: cli.checks.contains(&CheckName::Euler),
            vanishing: cli.checks.contains(&CheckName::Vanishing),
            identities: cli.checks.contains(&CheckName::Identities),
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("SS_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });

    let generator_degree = match cli.family {
        Family::Braids => cli.ambient.saturating_sub(2),
        _ => cli.ambient.saturating_sub(1),
    };
    let cfg = JobConfig {
        family: cli.family,
        strands: cli.strands,
        ambient: cli.ambient,
        q_max: cli.qmax.unwrap_or(2 * generator_degree),
        field: cli.field,
        format: cli.format,
        output: cli.output.clone(),
        checks,
        max_basis: cli.max_basis,
        threads,
    };

    match job::run(&cfg).context("job failed") {
        Ok(outcome) => {
            if cli.output.is_none() {
                print!("{}", outcome.rendered);
            }
            eprintln!(
                "checks: d1sq {:?}, euler {:?}, vanishing {:?}, identities {:?}",
                outcome.checks.d1sq,
                outcome.checks.euler,
                outcome.checks.vanishing,
                outcome.checks.identities
            );
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(job::EXIT_USAGE as u8)
        }
    }
}
