//! CSV/JSON/SVG front end for `ftrisk-core`.

pub mod config;
pub mod dataset;
pub mod error;
pub mod input;
pub mod pipeline;
pub mod plot;
pub mod report;

pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, Result};
pub use pipeline::{run_pipeline, Command};
