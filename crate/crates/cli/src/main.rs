//! `qdha`: run verification suites and export tables.
//!
//! Examples:
//!
//! ```text
//! qdha --suite all
//! qdha --suite fourier --q0 11/10 --window -60:60 --out fourier.json
//! qdha --export fig12 --window -20:20 --out fig12.csv
//! qdha --suite rmatrix --format csv --config run.toml
//! ```
//!
//! Exit status is nonzero iff any selected check fails.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Parser;

use qdha_cli::config::{Format, RunConfig};
use qdha_cli::export::{export_table, EXPORT_KINDS};
use qdha_cli::suites::{run_suite, SUITE_NAMES};

#[derive(Parser, Debug)]
#[command(
    name = "qdha",
    about = "Exact and numeric verification workbench for q-deformed Heisenberg algebras"
)]
struct Cli {
    /// Verification suite to run (calculus, special, fourier,
    /// representation, rmatrix, groups, euclid, all).
    #[arg(long, value_parser = SUITE_NAMES.to_vec())]
    suite: Option<String>,

    /// Table to export (fig12, spectrum, transform, eigen_table).
    #[arg(long, value_parser = EXPORT_KINDS.to_vec())]
    export: Option<String>,

    /// Deformation parameter, rational (`11/10`) or float (`1.1`); must be > 1.
    #[arg(long)]
    q0: Option<String>,

    /// Lattice window as `min:max`.
    #[arg(long)]
    window: Option<String>,

    /// Numeric tolerance knob for convergence-style loops.
    #[arg(long)]
    tol: Option<f64>,

    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Optional TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let file = match &cli.config {
        Some(p) => qdha_cli::config::load_file(p)?,
        None => Default::default(),
    };
    let format = if cli_format_explicit() {
        cli.format
    } else {
        file.format.unwrap_or(cli.format)
    };
    let out_path = cli.out.clone().or_else(|| file.out.clone().map(PathBuf::from));
    let cfg = RunConfig::assemble(
        &file,
        cli.q0.as_deref(),
        cli.window.as_deref(),
        cli.tol,
    )?;

    match (&cli.suite, &cli.export) {
        (Some(name), None) => {
            let report = run_suite(name, &cfg)?;
            let body = match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            write_out(&out_path, &body)?;
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.is_pass())
                .map(|c| c.id.as_str())
                .collect();
            eprintln!(
                "suite {}: {} checks, {} failed, {:.2}s",
                report.suite,
                report.checks.len(),
                failed.len(),
                report.wall_seconds
            );
            for f in &failed {
                eprintln!("  FAIL {f}");
            }
            if !failed.is_empty() {
                std::process::exit(1);
            }
            Ok(())
        }
        (None, Some(kind)) => {
            let body = export_table(kind, &cfg, format == Format::Json)?;
            write_out(&out_path, &body)?;
            Ok(())
        }
        (Some(_), Some(_)) => bail!("pass either --suite or --export, not both"),
        (None, None) => bail!("nothing to do: pass --suite <name> or --export <kind>"),
    }
}

// clap offers no direct "was this flag given" for value enums with defaults;
// detect it from the raw arguments instead
fn cli_format_explicit() -> bool {
    std::env::args().any(|a| a == "--format" || a.starts_with("--format="))
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, body)?;
        }
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }
    Ok(())
}
