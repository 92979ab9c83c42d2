//! Command-line harness for `qcliff-core`: JSON formats, seeded sampling,
//! duality scans and verification suites.

pub mod appendix;
pub mod commands;
pub mod config;
pub mod duality;
pub mod io;
pub mod error;
pub mod sampling;
pub mod suites;
pub mod singular;

pub use error::{CliError, Result};
