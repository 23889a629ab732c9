//! Command-line front end for `trussmerge-core`: edge-list ingestion,
//! subcommands and machine-readable reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;

pub use error::{CliError, Result};
