//! Command-line front end for the infrared field calculations.

pub mod args;
pub mod config;
pub mod error;
pub mod goldens;
pub mod grid;
pub mod run;
pub mod table;

pub use args::{Cli, CommandKind, Format};
pub use config::RunConfig;
pub use error::{exit, CliError};
pub use run::{run, RunReport};
