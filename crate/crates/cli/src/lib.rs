//! File formats and subcommands of the `mannheim` tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod expr;
pub mod output;
pub mod report;
pub mod spec_file;

pub use error::{CliError, CliResult, ErrorKind};
