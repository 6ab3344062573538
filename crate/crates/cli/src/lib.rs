//! Command-line front end: file formats, command dispatch, the fixture ledger
//! and the random-automaton experiment.

pub mod args;
pub mod commands;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod formats;

pub use args::{normalize_args, Cli, Command};
pub use commands::{run, Outcome, Status};
pub use error::{CliError, CliResult};
