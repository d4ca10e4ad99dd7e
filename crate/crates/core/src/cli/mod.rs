//! Command-line front end for the `faraday` binary.
//!
//! Exit codes: 0 success, 1 computation or I/O failure, 2 usage or
//! configuration error. Every frequency on the command line is a detuning
//! from the cavity mode in units of κ.

pub mod args;
pub mod config;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use crate::cavity::{self, phase_shifts, reflect_hot, solve_detuning, sweep_spectrum};
use crate::protocol::{detect_faraday_outcome, run_chain_with, spin_readout, ScatterMode};
use crate::qstate::linear_photon;
use args::{Cli, Command, Mode, OutFormat};
use config::FileConfig;
use format::{csv_line, SPECTRUM_HEADER};
use report::{to_sorted_json, EntangleReport, FaradayReport, ReadoutReport, SpectrumRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Reports go to `stdout` unless `--output` is set.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let file = match &cli.common.config {
        Some(path) => config::load_file(path)?,
        None => FileConfig::default(),
    };
    let common = config::resolve_common(&cli.common, &file)?;

    let text = match &cli.command {
        Command::Spectrum(flags) => {
            let run = config::resolve_spectrum(&common, flags, &file)?;
            render_spectrum(&run, common.out.unwrap_or(OutFormat::Csv))?
        }
        Command::Faraday(flags) => {
            let run = config::resolve_faraday(&common, flags, &file)?;
            if run.params.g() == 0.0 {
                writeln!(
                    stderr,
                    "warning: g = 0, the dot is uncoupled and no Faraday rotation occurs"
                )?;
            }
            render_faraday(&run, common.out.unwrap_or(OutFormat::Json))?
        }
        Command::Readout(flags) => {
            let run = config::resolve_readout(flags, &file)?;
            let report = ReadoutReport::from(spin_readout(&run.ensemble)?);
            match common.out.unwrap_or(OutFormat::Json) {
                OutFormat::Json => to_sorted_json(&report)?,
                OutFormat::Csv => {
                    format!(
                        "{}\n{}\n",
                        ReadoutReport::CSV_HEADER,
                        csv_line(&report.values())
                    )
                }
            }
        }
        Command::Entangle(flags) => {
            let run = config::resolve_entangle(&common, flags, &file)?;
            if common.out == Some(OutFormat::Csv) {
                return Err(CliError::Usage("entangle reports are JSON only".into()));
            }
            to_sorted_json(&entangle_report(&run)?)?
        }
    };

    match &common.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn spectrum_rows(run: &config::SpectrumRun) -> Result<Vec<SpectrumRow>, CliError> {
    let points = sweep_spectrum(&run.params, run.min, run.max, run.points)?;
    let mut rows: Vec<SpectrumRow> = points.iter().map(SpectrumRow::from_point).collect();
    if run.unwrap_phase {
        let cold = cavity::unwrap_phase(&rows.iter().map(|r| r.cold_phase).collect::<Vec<_>>());
        let hot = cavity::unwrap_phase(&rows.iter().map(|r| r.hot_phase).collect::<Vec<_>>());
        for ((row, c), h) in rows.iter_mut().zip(cold).zip(hot) {
            row.cold_phase = c;
            row.hot_phase = h;
        }
    }
    Ok(rows)
}

fn render_spectrum(run: &config::SpectrumRun, out: OutFormat) -> Result<String, CliError> {
    let rows = spectrum_rows(run)?;
    Ok(match out {
        OutFormat::Csv => {
            let mut text = String::with_capacity(rows.len() * 96);
            text.push_str(SPECTRUM_HEADER);
            text.push('\n');
            for row in &rows {
                text.push_str(&csv_line(&row.values()));
                text.push('\n');
            }
            text
        }
        OutFormat::Json => to_sorted_json(&rows)?,
    })
}

pub fn faraday_report(run: &config::FaradayRun) -> Result<FaradayReport, CliError> {
    let p = &run.params;
    let omega = match run.target_phase {
        Some(target) => solve_detuning(p, target)?,
        None => p.omega_at(run.detuning),
    };
    let shifts = phase_shifts(p, omega);
    let outcome = detect_faraday_outcome(&run.spin, p, omega);
    Ok(FaradayReport {
        detuning: p.detuning_of(omega),
        phi_0: shifts.phi_0,
        phi_h: shifts.phi_h,
        hot_modulus: reflect_hot(p, omega).modulus,
        theta_up: outcome.theta,
        theta_down: -outcome.theta,
        p_plus: outcome.p_plus,
        p_minus: outcome.p_minus,
        target_phase: run.target_phase,
    })
}

fn render_faraday(run: &config::FaradayRun, out: OutFormat) -> Result<String, CliError> {
    let report = faraday_report(run)?;
    Ok(match out {
        OutFormat::Json => to_sorted_json(&report)?,
        OutFormat::Csv => format!(
            "{}\n{}\n",
            FaradayReport::CSV_HEADER,
            csv_line(&report.values())
        ),
    })
}

pub fn entangle_report(run: &config::EntangleRun) -> Result<EntangleReport, CliError> {
    let modes: Vec<ScatterMode> = match run.mode {
        Mode::Ideal => run
            .phis
            .iter()
            .map(|&phi| ScatterMode::Ideal { phi })
            .collect(),
        Mode::Physical => run
            .nodes
            .iter()
            .map(|n| ScatterMode::Physical {
                // Shared probe, measured from the reference cavity frequency.
                omega: run.detuning * n.params.kappa(),
            })
            .collect(),
    };
    let result = run_chain_with(&run.nodes, &modes, linear_photon(), run.basis, &run.phis)?;
    let (mode, detuning) = match run.mode {
        Mode::Ideal => ("ideal", None),
        Mode::Physical => ("physical", Some(run.detuning)),
    };
    Ok(EntangleReport::new(
        mode,
        detuning,
        run.phis.clone(),
        &result,
    ))
}
