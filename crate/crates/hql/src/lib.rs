//! Front end for `hql-core`: TOML spec files, JSON reports and CSV sweeps.

pub mod args;
pub mod commands;
pub mod error;
pub mod pool;
pub mod report;
pub mod spec_file;

pub use commands::Output;
pub use error::{CliError, Result};
