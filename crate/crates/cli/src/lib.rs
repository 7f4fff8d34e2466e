//! Command-line front end for `liecurv`.

pub mod commands;
pub mod config;
pub mod verify;

pub use commands::{run, CliError, Outcome};
pub use config::CliConfig;
