//! Scenario loading, validation, run orchestration, and report emission.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::quantization::{payload_bits, predicted_accuracy, QuantScheme};
use crate::scenario::{Scenario, ValidationIssue};
use crate::simengine::{run, SimError, SimReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario_path: PathBuf,
    pub output_dir: PathBuf,
    pub format: ReportFormat,
    pub seed_override: Option<u64>,
    pub validate_only: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            CliError::FileNotFound(path.to_path_buf())
        } else {
            CliError::Io(e)
        }
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses and validates a scenario file; an empty issue list means ok.
pub fn validate_file(path: &Path) -> Result<Vec<ValidationIssue>, CliError> {
    Ok(load_scenario(path)?.validate())
}

/// Exit codes: 0 success, 1 validation failure, 2 I/O failure.
pub fn run_command(config: &RunConfig) -> i32 {
    let mut scenario = match load_scenario(&config.scenario_path) {
        Ok(s) => s,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            return 2;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Some(seed) = config.seed_override {
        scenario.seed = seed;
    }

    let issues = scenario.validate();
    if !issues.is_empty() {
        for issue in &issues {
            eprintln!("invalid: {issue}");
        }
        return 1;
    }
    if config.validate_only {
        return 0;
    }

    let report = match run(&scenario) {
        Ok(report) => report,
        Err(SimError::Validation(issues)) => {
            for issue in &issues {
                eprintln!("invalid: {issue}");
            }
            return 1;
        }
    };
    match write_reports(&scenario, &report, &config.output_dir, config.format) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn write_reports(
    scenario: &Scenario,
    report: &SimReport,
    output_dir: &Path,
    format: ReportFormat,
) -> Result<(), CliError> {
    std::fs::create_dir_all(output_dir)?;
    match format {
        ReportFormat::Json => {
            let mut file = File::create(output_dir.join("report.json"))?;
            serde_json::to_writer_pretty(&mut file, report)
                .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
            file.write_all(b"\n")?;
        }
        ReportFormat::Csv => write_pair_csv(report, &output_dir.join("report.csv"))?,
    }
    write_utilization_csv(report, &output_dir.join("utilization.csv"))?;
    write_quantization_csv(scenario, &output_dir.join("quantization.csv"))?;
    Ok(())
}

#[derive(Serialize)]
struct PairCsvRow<'a> {
    source: &'a str,
    target: &'a str,
    label_axis: String,
    domain_axis: String,
    kind: String,
    jobs: u64,
    total_theta: f64,
    total_bits: u64,
    eta: f64,
    tau: f64,
    positive: bool,
}

fn write_pair_csv(report: &SimReport, path: &Path) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path)?;
    for pair in &report.pairs {
        writer.serialize(PairCsvRow {
            source: &pair.source,
            target: &pair.target,
            label_axis: pair
                .label_axis
                .map(|a| format!("{a:?}"))
                .unwrap_or_else(|| "Unclassifiable".to_string()),
            domain_axis: format!("{:?}", pair.domain_axis),
            kind: format!("{:?}", pair.kind),
            jobs: pair.jobs,
            total_theta: pair.total_theta,
            total_bits: pair.total_bits,
            eta: pair.eta,
            tau: pair.tau,
            positive: pair.positive,
        })?;
    }
    writer.flush()?;
    Ok(())
}

fn write_utilization_csv(report: &SimReport, path: &Path) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["link", "bin_start_s", "bits"])?;
    for row in &report.utilization {
        writer.write_record([
            row.link.clone(),
            row.bin_start_s.to_string(),
            row.bits.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Scheme table analogous to the accuracy and model-size comparison
/// figures: payload for the scenario's largest model plus the predicted
/// accuracy with and without a retune.
fn write_quantization_csv(scenario: &Scenario, path: &Path) -> Result<(), CliError> {
    let parameter_count = scenario
        .agents
        .iter()
        .map(|a| a.task.parameter_count)
        .max()
        .unwrap_or(1)
        .max(1);
    let model = scenario.quantization.accuracy_model();
    let float32_bits = payload_bits(parameter_count, QuantScheme::Float32);

    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record([
        "scheme",
        "bits_per_weight",
        "payload_bits",
        "accuracy_pre_retune",
        "accuracy_retuned",
        "payload_ratio_vs_float32",
    ])?;
    for scheme in QuantScheme::ALL {
        let bits = payload_bits(parameter_count, scheme);
        writer.write_record([
            format!("{scheme:?}"),
            scheme.bits_per_weight().to_string(),
            bits.to_string(),
            predicted_accuracy(&model, scheme, false).to_string(),
            predicted_accuracy(&model, scheme, true).to_string(),
            (bits as f64 / float32_bits as f64).to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
