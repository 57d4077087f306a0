use std::path::PathBuf;

use ftrisk_core::smoothing::SmoothOptions;
use ftrisk_core::stats::{DEFAULT_K_SIGMA, DEFAULT_S_MULTIPLIER};

use crate::error::{CliError, Result};
use crate::input::ColumnSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// CSV path or `@czech2011`.
    pub input: String,
    pub columns: ColumnSpec,
    pub k_sigma: f64,
    pub s_multiplier: f64,
    pub t_scale: f64,
    pub repeat: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<String>) -> Self {
        RunConfig {
            input: input.into(),
            columns: ColumnSpec::default(),
            k_sigma: DEFAULT_K_SIGMA,
            s_multiplier: DEFAULT_S_MULTIPLIER,
            t_scale: 1.0,
            repeat: 1,
            format: OutputFormat::Text,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.k_sigma) {
            return Err(CliError::Config(format!("--k-sigma must be > 0, got {}", self.k_sigma)));
        }
        if !positive(self.s_multiplier) {
            return Err(CliError::Config(format!(
                "--s-multiplier must be > 0, got {}",
                self.s_multiplier
            )));
        }
        if !positive(self.t_scale) {
            return Err(CliError::Config(format!("--t-scale must be > 0, got {}", self.t_scale)));
        }
        if self.repeat < 1 {
            return Err(CliError::Config("--repeat must be at least 1".into()));
        }
        Ok(())
    }

    pub fn smooth_options(&self) -> SmoothOptions {
        SmoothOptions {
            t_scale: self.t_scale,
            repeat: self.repeat,
            ..SmoothOptions::default()
        }
    }
}
