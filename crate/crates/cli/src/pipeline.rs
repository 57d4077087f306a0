use std::path::Path;

use ftrisk_core::interpolant::eq10_coefficients;

use crate::config::{OutputFormat, RunConfig};
use crate::dataset;
use crate::error::{CliError, Result};
use crate::input::load_csv;
use crate::plot::emit_plot;
use crate::report::{
    build_report, build_smooth_report, render_smooth_text, render_text, smooth_series,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Smooth,
    Report,
    Plot,
}

fn write_or_return(text: String, out: Option<&Path>) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Runs one subcommand and returns what should go to stdout.
pub fn run_pipeline(command: Command, config: &RunConfig) -> Result<String> {
    config.validate()?;
    let series = load_csv(&config.input, &config.columns)?;
    match command {
        Command::Smooth => {
            let report = build_smooth_report(&series, config)?;
            let text = match config.format {
                OutputFormat::Text => render_smooth_text(&report),
                OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            write_or_return(text, config.out.as_deref())
        }
        Command::Report => {
            let report = build_report(&series, config)?;
            let text = match config.format {
                OutputFormat::Text => render_text(&report),
                OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            write_or_return(text, config.out.as_deref())
        }
        Command::Plot => {
            let path = config
                .out
                .as_deref()
                .ok_or_else(|| CliError::Config("plot needs --out <file.svg>".into()))?;
            let smoothed = smooth_series(&series, config)?;
            let curve = (config.input == dataset::CZECH2011_TAG).then(eq10_coefficients);
            emit_plot(&series, &smoothed, curve.as_ref(), path)?;
            Ok(format!("wrote {}\n", path.display()))
        }
    }
}
