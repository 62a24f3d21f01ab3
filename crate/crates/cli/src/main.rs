use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rjv_cli::error::{CliError, Result};
use rjv_cli::oracle_run::run_oracle;
use rjv_cli::report::analyze;
use rjv_cli::scenario::{load, policy, read_value};
use rjv_cli::svg;
use rjv_cli::sweep::{run_sweep, write_csv, Axis, LabelMode, SweepSpec};
use rjv_core::oracle::SolveMode;

#[derive(Parser)]
#[command(
    name = "rjv",
    version,
    about = "R&D competition versus research joint ventures under financing constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one scenario and write a JSON report.
    Analyze {
        scenario: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compute despite failed assumptions and list them in the report.
        #[arg(long)]
        allow_violations: bool,
    },
    /// Sweep two scenario parameters and label each grid point.
    Sweep {
        scenario: PathBuf,
        /// `path:min:max:steps`, e.g. `market.alpha:0.05:3:200`.
        #[arg(long)]
        x: Axis,
        #[arg(long)]
        y: Axis,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
        /// Alternative compared with competition.
        #[arg(long, value_enum, default_value_t = Labels::Rjv)]
        labels: Labels,
        #[arg(long)]
        allow_violations: bool,
    },
    /// Solve the discretised game by brute force.
    Oracle {
        scenario: PathBuf,
        #[arg(long)]
        cells: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_violations: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Bestresponse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    Rjv,
    Merger,
}

fn write_out(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serialisable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            scenario,
            out,
            allow_violations,
        } => {
            let s = load(&scenario)?.resolve()?;
            let report = analyze(&s, policy(allow_violations))?;
            write_out(out.as_deref(), &json_text(&report))
        }
        Command::Sweep {
            scenario,
            x,
            y,
            csv,
            svg: svg_path,
            workers,
            labels,
            allow_violations,
        } => {
            // Parse once from text for positioned diagnostics.
            load(&scenario)?;
            let base = read_value(&scenario)?;
            let spec = SweepSpec {
                x,
                y,
                mode: match labels {
                    Labels::Rjv => LabelMode::Rjv,
                    Labels::Merger => LabelMode::Merger,
                },
                policy: policy(allow_violations),
            };
            if workers == Some(0) {
                return Err(CliError::Invalid("--workers must be at least 1".into()));
            }
            let rows = run_sweep(&scenario, &base, &spec, workers)?;
            let file = File::create(&csv).map_err(|e| CliError::io(&csv, e))?;
            write_csv(&rows, BufWriter::new(file))?;
            if let Some(p) = svg_path {
                fs::write(&p, svg::render(&rows, &spec.x, &spec.y))
                    .map_err(|e| CliError::io(&p, e))?;
            }
            Ok(())
        }
        Command::Oracle {
            scenario,
            cells,
            mode,
            out,
            allow_violations,
        } => {
            let s = load(&scenario)?.resolve()?;
            let mode = match mode {
                Mode::Exhaustive => SolveMode::Exhaustive,
                Mode::Bestresponse => SolveMode::BestResponse,
            };
            let report = run_oracle(&s, cells, mode, policy(allow_violations))?;
            write_out(out.as_deref(), &json_text(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rjv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
