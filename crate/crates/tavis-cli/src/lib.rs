//! Library half of the `tavis` command line tool: scenario configuration,
//! figure presets, series rendering, and the closed-form diagnostic report.
//! The binary in `main.rs` is a thin argument-parsing shell over these.

pub mod config;
pub mod presets;
pub mod run;
pub mod validate;
