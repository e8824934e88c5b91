//! Command-line front end: expression parsing, evaluation in each algebra,
//! and the `qalg` commands.

pub mod commands;
pub mod error;
pub mod eval;
pub mod expr;

pub use commands::{run, Output};
pub use error::{CliError, CliResult};
