//! `lpd`: scattering data, phase geometry, local models, long-time asymptotics, exact
//! solitons, short-time simulation and the invariant suite for the nonlocal LPD equation.
//!
//! Exit status: 0 on success, 2 when `validate` finds a failing check, 1 on any error.

use clap::{Args, Parser, Subcommand};
use lpd_sim_cli::config::{CaseName, ModeName};
use lpd_sim_cli::{run, Command, Grid, RunConfig, SimError, SimResult};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "lpd", version, about = "Inverse scattering and long-time asymptotics for the nonlocal LPD equation")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output CSV file (standard output when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Local phase evaluation: the printed polynomials or the exact Taylor remainder.
    #[arg(long, global = true, value_parser = ["paper", "consistent"])]
    mode: Option<String>,
    /// Zero structure of the data at the origin.
    #[arg(long, global = true, value_parser = ["auto", "1", "2"])]
    case: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// a1, a2, b, r1, r2 over a ξ grid, and ξ₁.
    Scatter,
    /// Stationary points, regime and sector signs over ray speeds.
    Phase,
    /// δ on the real line with the saddle exponents v and regular parts χ.
    Delta,
    /// Local-model coefficients, jump residuals and large-τ fits.
    Pcmodel,
    /// Leading-order q(x, t) along rays x = μt.
    Asymptote,
    /// Exact one-soliton and its PDE residual.
    Soliton(SolitonArgs),
    /// Short-time direct integration with snapshots.
    Simulate,
    /// The full invariant suite; exit 2 if any check fails.
    Validate,
}

#[derive(Debug, Args)]
struct SolitonArgs {
    /// Background amplitude.
    #[arg(long = "A")]
    amplitude: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// `start:stop:count` or a comma-separated list of x values.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
}

fn parse_enum<T: serde::de::DeserializeOwned>(text: &str) -> SimResult<T> {
    serde_json::from_value(serde_json::Value::String(text.into())).map_err(|e| SimError::Config(e.to_string()))
}

fn configure(cli: &Cli) -> SimResult<RunConfig> {
    let mut cfg = match &cli.common.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    if let Some(m) = &cli.common.mode {
        cfg.mode = parse_enum::<ModeName>(m)?;
    }
    if let Some(c) = &cli.common.case {
        cfg.case = parse_enum::<CaseName>(c)?;
    }
    if let Sub::Soliton(a) = &cli.command {
        let s = &mut cfg.soliton;
        s.amplitude = a.amplitude.unwrap_or(s.amplitude);
        s.alpha = a.alpha.unwrap_or(s.alpha);
        s.gamma = a.gamma.unwrap_or(s.gamma);
        s.t = a.t.unwrap_or(s.t);
        if let Some(g) = &a.grid {
            s.x = Grid::parse(g)?;
        }
    }
    cfg.check()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> SimResult<bool> {
    let cfg = configure(cli)?;
    let command = match cli.command {
        Sub::Scatter => Command::Scatter,
        Sub::Phase => Command::Phase,
        Sub::Delta => Command::Delta,
        Sub::Pcmodel => Command::PcModel,
        Sub::Asymptote => Command::Asymptote,
        Sub::Soliton(_) => Command::Soliton,
        Sub::Simulate => Command::Simulate,
        Sub::Validate => Command::Validate,
    };
    let report = run(command, &cfg)?;
    match &cli.common.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| SimError::Output(format!("cannot create {}: {e}", path.display())))?;
            report.table.write_to(std::io::BufWriter::new(file))?;
        }
        None => {
            let text = report.table.to_csv_string()?;
            let mut out = std::io::stdout().lock();
            // a closed pipe (`lpd ... | head`) is not an error
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(SimError::Output(e.to_string())),
                _ => {}
            }
        }
    }
    if command == Command::Validate {
        let failed: Vec<String> = report
            .table
            .rows
            .iter()
            .filter(|r| r[2] == lpd_sim_cli::Cell::Text("false".into()))
            .map(|r| match &r[0] {
                lpd_sim_cli::Cell::Int(k) => k.to_string(),
                _ => "?".into(),
            })
            .collect();
        if failed.is_empty() {
            eprintln!("validate: all {} checks passed", report.table.rows.len());
        } else {
            eprintln!("validate: failing checks {}", failed.join(", "));
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
