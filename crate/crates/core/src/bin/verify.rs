use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use hyperverify::verify::{self, CheckOptions, Grid, Summary};

/// Checks hypergeometric series identities against their claimed values.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
#[command(group(ArgGroup::new("what").required(true).args(["all", "id", "list"])))]
struct Cli {
    /// Run every registered identity.
    #[arg(long)]
    all: bool,
    /// Run a single identity.
    #[arg(long, value_name = "ID")]
    id: Option<String>,
    /// Print the registry and exit.
    #[arg(long)]
    list: bool,
    /// Decimal digits requested from numeric summation.
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Upper limit on summed terms per series.
    #[arg(long, default_value_t = 10_000)]
    max_terms: u32,
    /// Grid file with lines `id x n_max` for terminating identities.
    #[arg(long, value_name = "FILE")]
    grid: Option<PathBuf>,
    /// Write the reports as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Working precision in bits, replacing the one derived from --digits.
    #[arg(long, value_name = "P")]
    precision_bits: Option<u32>,
    /// Report elapsed_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for line in verify::list_lines() {
            println!("{line}");
        }
        return ExitCode::SUCCESS;
    }
    let grid = match &cli.grid {
        None => None,
        Some(path) => {
            let parsed = std::fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|t| t.parse::<Grid>().map_err(|e| e.to_string()));
            match parsed {
                Ok(g) => Some(g),
                Err(e) => {
                    eprintln!("error: grid file {}: {e}", path.display());
                    return ExitCode::from(USAGE_ERROR);
                }
            }
        }
    };
    let opts = CheckOptions {
        digits: cli.digits,
        max_terms: cli.max_terms,
        grid,
        precision_bits: cli.precision_bits,
        timing: !cli.no_timing,
    };
    let summary = match &cli.id {
        Some(id) => match verify::run_check(id, &opts) {
            Ok(reports) => Summary::from_reports(reports),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE_ERROR);
            }
        },
        None => verify::run_all(&opts),
    };
    let mut out = std::io::stdout().lock();
    for r in &summary.reports {
        let _ = writeln!(out, "{}", r.line());
    }
    let _ = writeln!(
        out,
        "{} reports: {} pass, {} fail, {} skip",
        summary.reports.len(),
        summary.pass,
        summary.fail,
        summary.skip
    );
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, verify::to_json(&summary.reports)) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(USAGE_ERROR);
        }
    }
    ExitCode::from(summary.exit_code() as u8)
}
