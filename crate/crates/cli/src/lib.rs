//! Batch front end: configuration, engine dispatch and output writers.

pub mod config;
pub mod run;
pub mod svg;
