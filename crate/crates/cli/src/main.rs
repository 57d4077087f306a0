use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ftrisk::input::ColumnSpec;
use ftrisk::{run_pipeline, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "ftrisk", version)]
#[command(about = "Fermat-Torricelli smoothing and dispersion reports for numerical series")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the per-point smoothing table
    Smooth(Opts),
    /// Classical vs Fermat-Torricelli statistics, coverage and displacements
    Report(Opts),
    /// Write an SVG chart of the data and its smoothed points
    Plot(Opts),
}

#[derive(Args)]
struct Opts {
    /// CSV file with a header row, or @czech2011
    input: String,

    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Multiplier of sigma for the classical interval
    #[arg(long, default_value_t = 3.0)]
    k_sigma: f64,

    /// Multiplier of S for the Fermat-Torricelli interval
    #[arg(long, default_value_t = 4.0)]
    s_multiplier: f64,

    /// Scale applied to the time axis before smoothing
    #[arg(long, default_value_t = 1.0)]
    t_scale: f64,

    /// Number of smoothing passes
    #[arg(long, default_value_t = 1)]
    repeat: u32,

    /// Output file (required for plot)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Name of the time column
    #[arg(long)]
    t_column: Option<String>,

    /// Name of the value column
    #[arg(long)]
    value_column: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, opts) = match cli.command {
        Cmd::Smooth(o) => (Command::Smooth, o),
        Cmd::Report(o) => (Command::Report, o),
        Cmd::Plot(o) => (Command::Plot, o),
    };
    let config = RunConfig {
        input: opts.input,
        columns: ColumnSpec {
            t_column: opts.t_column,
            v_column: opts.value_column,
        },
        k_sigma: opts.k_sigma,
        s_multiplier: opts.s_multiplier,
        t_scale: opts.t_scale,
        repeat: opts.repeat,
        format: opts.format,
        out: opts.out,
    };
    match run_pipeline(command, &config) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ftrisk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
