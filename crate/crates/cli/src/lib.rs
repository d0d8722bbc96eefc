//! Experiment runner around `specdim-core`: strict JSON run configs, a
//! deterministic orchestrator, and artifact emission (reports, CSV tables,
//! SVG figures).

// `!(x > 0.0)` guards reject NaN, which `x <= 0.0` would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod presets;
pub mod report;
pub mod runner;
pub mod svg;

pub use config::RunConfig;
pub use report::Report;
pub use runner::{outcome_exit_code, run, RunError};
