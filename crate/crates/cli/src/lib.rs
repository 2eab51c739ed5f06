//! Command-line front end for `surgeon-core`: JSON diagram files, report
//! generation and the `surgeon` subcommands.

pub mod app;
pub mod files;
pub mod report;

pub use app::{execute, Cli, CliError, Command, Format, Outcome, Style};
