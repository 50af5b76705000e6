//! Experiment runner for sparse-grid sampling recovery: configuration,
//! commands and CSV/JSON artifacts on top of `hypercross-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Outcome};
pub use config::ExperimentConfig;
pub use error::CliError;
