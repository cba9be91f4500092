//! File formats, sweeps and the command-line front end for `slabshift-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod sweep;
pub mod table;

pub use error::{CliError, CliResult};
