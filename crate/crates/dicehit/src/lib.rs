//! Command-line front end and file formats for `dicehit-core`.

pub mod cli;
pub mod report;
pub mod target;

pub use dicehit_core as core;
