//! Command-line front end for the oscillator toolkit.
//!
//! Exit codes: 0 when every asserted check passes, 1 when a check fails or
//! output cannot be written, 2 for invalid input. Findings never change the
//! exit code.

pub mod config;
pub mod output;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nadosc_core::clifford::{build_dirac_set, verify_clifford, verify_derived};
use nadosc_core::gauge_algebra::{build_charges, jacobi_residual, verify_lie, ChargeSet};
use nadosc_core::gauge_poly::{decimal_rational, gauge_check, integer};
use nadosc_core::hamiltonian::{assemble, spectrum};
use nadosc_core::nonabelian::{fields_report, nb_field_tensor, pauli_coefficients, render_nb_tensor};
use nadosc_core::report::CheckReport;
use nadosc_core::symmetry::{build_angular, commutator_report, spin_identity_check};
use thiserror::Error;

pub use config::{parse_config, RunConfig};

pub const TOLERANCE_ENV: &str = "NADOSC_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{failed} asserted check(s) failed")]
    ChecksFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

impl From<nadosc_core::Error> for CliError {
    fn from(e: nadosc_core::Error) -> Self {
        use nadosc_core::Error as E;
        match e {
            E::InvalidInput(_) | E::SizeCap { .. } | E::UnsupportedDimension(_) | E::DimensionMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nadosc", version, about = "Non-Abelian Dirac oscillator checks and spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct ReportOut {
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clifford, su(2) and spin-identity checks.
    VerifyAlgebra {
        /// Optional config; only `kappa_q` is used.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: ReportOut,
    },
    /// Gauge-transformation identities for worked example 1 or 2.
    GaugeCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
        /// Optional config; `lambda` sets the coupling (default 1).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: ReportOut,
    },
    /// Non-Abelian field tensor and interaction-term comparisons.
    Fields {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: ReportOut,
    },
    /// Eigenvalues of the truncated Hamiltonian as JSON.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        /// JSON output path, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Re-solve at twice the truncation and flag converged eigenvalues.
        #[arg(long)]
        converge: bool,
    },
    /// Angular-momentum commutator checks (dimension 2).
    Symmetry {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: ReportOut,
    },
}

fn load_config(path: &Path, tol_override: Option<&str>) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut config = parse_config(&text)?;
    config::apply_tolerance_override(&mut config, tol_override)?;
    Ok(config)
}

fn charges(config: Option<&RunConfig>) -> Result<ChargeSet, CliError> {
    Ok(build_charges(config.map_or(1.0, |c| c.kappa_q))?)
}

fn emit_reports(
    command: &str,
    reports: &[CheckReport],
    preamble: Option<&str>,
    extra: &[(&str, String)],
    out: &ReportOut,
) -> Result<(), CliError> {
    let text = match out.format {
        ReportFormat::Text => output::report_text(reports, preamble),
        ReportFormat::Json => output::report_json(command, reports, extra),
        ReportFormat::Csv => output::report_csv(reports),
    };
    output::write_to(&out.out, &text)?;
    finish(command, reports)
}

fn finish(command: &str, reports: &[CheckReport]) -> Result<(), CliError> {
    let checks: usize = reports.iter().map(|r| r.checks().count()).sum();
    let findings: usize = reports.iter().map(|r| r.findings().count()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(|row| row.name.clone()))
        .collect();
    eprintln!(
        "{command}: {} of {checks} checks passed, {findings} findings",
        checks - failed.len()
    );
    for name in &failed {
        eprintln!("{command}: FAIL {name}");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed { failed: failed.len() })
    }
}

fn components_json(config: &RunConfig, c: &ChargeSet) -> String {
    let t = nb_field_tensor(&config.gauge_params(), c);
    let mut items = Vec::new();
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let comp = t.get(mu, nu);
            let color: Vec<String> = pauli_coefficients(&comp.color).iter().map(|&v| output::float(v)).collect();
            items.push(format!(
                "{{\"mu\": {mu}, \"nu\": {nu}, \"abelian\": {}, \"color\": [{}]}}",
                output::string(&comp.abelian.render()),
                color.join(", ")
            ));
        }
    }
    format!("[{}]", items.join(", "))
}

/// Runs one parsed command. `tol_override` is the raw `NADOSC_TOL` value.
pub fn execute(cli: Cli, tol_override: Option<&str>) -> Result<(), CliError> {
    let g = build_dirac_set();
    match cli.command {
        Command::VerifyAlgebra { config, out } => {
            let config = config.map(|p| load_config(&p, tol_override)).transpose()?;
            let c = charges(config.as_ref())?;
            let mut jacobi = CheckReport::new("Jacobi identity");
            jacobi
                .check_exact("Jacobi (T)", jacobi_residual(&c.t))
                .check_exact("Jacobi (Q)", jacobi_residual(&c.q));
            let reports = [
                verify_clifford(&g),
                verify_derived(&g),
                spin_identity_check(&g),
                verify_lie(&c),
                jacobi,
            ];
            emit_reports("verify-algebra", &reports, None, &[], &out)
        }
        Command::GaugeCheck { example, config, out } => {
            let config = config.map(|p| load_config(&p, tol_override)).transpose()?;
            let coupling = match &config {
                Some(c) => decimal_rational(c.lambda)
                    .ok_or_else(|| CliError::Input("lambda: must be finite".into()))?,
                None => integer(1),
            };
            let report = gauge_check(example, &coupling)?;
            emit_reports("gauge-check", &[report], None, &[], &out)
        }
        Command::Fields { config, out } => {
            let config = load_config(&config, tol_override)?;
            let c = charges(Some(&config))?;
            let report = fields_report(&config.gauge_params(), &c, &g)?;
            let preamble = render_nb_tensor(&nb_field_tensor(&config.gauge_params(), &c));
            let extra = [("components", components_json(&config, &c))];
            emit_reports("fields", &[report], Some(&preamble), &extra, &out)
        }
        Command::Spectrum { config, out, csv, converge } => {
            let config = load_config(&config, tol_override)?;
            let c = charges(Some(&config))?;
            let (_, h) = assemble(&g, &c, &config.osc_params())?;
            let result = spectrum(&h, &g, &c, converge)?;
            output::write_to(&out, &output::spectrum_json(&result))?;
            if let Some(path) = csv {
                output::write_to(&path, &output::spectrum_csv(&result))?;
            }
            eprintln!(
                "spectrum: {} eigenvalues, hermiticity residual {:e}{}",
                result.eigenvalues.len(),
                result.hermiticity_residual,
                if converge { format!(", {} converged", result.converged_count) } else { String::new() }
            );
            Ok(())
        }
        Command::Symmetry { config, out } => {
            let config = load_config(&config, tol_override)?;
            let c = charges(Some(&config))?;
            let p = config.osc_params();
            let (f, h) = assemble(&g, &c, &p)?;
            let a = build_angular(&f, &g)?;
            let report = commutator_report(&a, &h, &f, &g, &p)?;
            emit_reports("symmetry", &[report], None, &[], &out)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let tol = std::env::var(TOLERANCE_ENV).ok();
    match execute(cli, tol.as_deref()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
