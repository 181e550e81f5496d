//! Library side of the `ulam` command-line tool.

pub mod commands;
pub mod document;
pub mod error;
pub mod format;

pub use commands::{run, Cli, Output};
pub use error::{CliError, Result};
