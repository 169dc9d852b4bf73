//! Batch front end: `analyze`, `factor`, `simulate` and `verify` jobs producing
//! versioned JSON or CSV reports.

pub mod commands;
pub mod config;
pub mod report;
