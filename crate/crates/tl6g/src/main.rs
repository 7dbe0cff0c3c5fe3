use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tl6g::cli::{run_command, validate_file, CliError, ReportFormat, RunConfig};

#[derive(Parser)]
#[command(name = "tl6g", about = "Transfer-learning orchestration simulator for 6G-style networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file and report every invariant violation.
    Validate { path: PathBuf },
    /// Run one or more scenario files and write report files.
    Run {
        paths: Vec<PathBuf>,
        /// Output directory (per-scenario subdirectories when several files are given).
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Override the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of scenario files to run in parallel.
        #[arg(long, default_value = "1")]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { path } => match validate_file(&path) {
            Ok(issues) if issues.is_empty() => {
                println!("ok");
                ExitCode::SUCCESS
            }
            Ok(issues) => {
                for issue in issues {
                    eprintln!("invalid: {issue}");
                }
                ExitCode::from(1)
            }
            Err(CliError::Io(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Run {
            paths,
            out,
            format,
            seed,
            jobs,
        } => {
            if paths.is_empty() {
                eprintln!("error: no scenario files given");
                return ExitCode::from(1);
            }
            let format = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
            let configs: Vec<RunConfig> = paths
                .iter()
                .map(|path| {
                    let output_dir = if paths.len() == 1 {
                        out.clone()
                    } else {
                        let stem = path
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| "scenario".to_string());
                        out.join(stem)
                    };
                    RunConfig {
                        scenario_path: path.clone(),
                        output_dir,
                        format,
                        seed_override: seed,
                        validate_only: false,
                    }
                })
                .collect();

            let mut worst = 0;
            for chunk in configs.chunks(jobs.max(1)) {
                let codes: Vec<i32> = std::thread::scope(|scope| {
                    let handles: Vec<_> = chunk
                        .iter()
                        .map(|config| scope.spawn(move || run_command(config)))
                        .collect();
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                });
                worst = worst.max(codes.into_iter().max().unwrap_or(0));
            }
            ExitCode::from(worst as u8)
        }
    }
}
