//! Command-line front end for `interleavings-core`: exact JSON formats,
//! subcommand dispatch, ASCII progression timelines and the parallel
//! `verify` sweeps.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification
//! discrepancy.

pub mod app;
pub mod format;
pub mod report;
pub mod timeline;

pub use app::{run, Outcome};
