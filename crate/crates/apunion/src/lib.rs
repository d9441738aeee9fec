//! Reports, audit suites and the command-line front end for `apunion-core`.
//!
//! Every command produces an [`report::ExperimentReport`]; identical inputs
//! and seed give byte-identical output.

pub mod analytics;
pub mod audit;
pub mod oracle;
pub mod report;
