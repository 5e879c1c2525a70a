//! File formats, reports and the `crosscut` command line on top of
//! `crosscut-core`.

pub mod app;
pub mod dot;
pub mod fixtures;
pub mod format;
pub mod report;

pub use app::{run, Outcome, GUARD_ENV};
