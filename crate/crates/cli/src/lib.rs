//! Command-line front end for `winterres-core`: run configuration, pole
//! tables (CSV), momentum-plane plots (SVG) and asymptotic comparisons.

pub mod cli;
pub mod commands;
pub mod complex;
pub mod config;
pub mod error;
pub mod report;

pub use commands::{cmd_classify, cmd_compare, cmd_poles, compute_poles, PolesReport};
pub use config::{InteractionConfig, Overrides, RunConfig};
pub use error::CliError;
pub use report::{read_csv, write_csv, PoleRow, Series};
