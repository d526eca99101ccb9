//! Experiment harness for the LCHS emulator: configuration files, scans over
//! the method parameters, CSV output, phase caching and fit reports.

pub mod cache;
pub mod config;
mod error;
pub mod fits;
pub mod records;
pub mod report;
pub mod scans;

pub use error::{HarnessError, Result};
