//! Configuration parsing and experiment orchestration for the `otto` binary.

pub mod config;
pub mod error;
pub mod run;

pub use config::{parse_config, Axis, LdfGrid, Mode, RunSpec, Sweep, ValidationLevel};
pub use error::CliError;
pub use run::{render, run, strict_check, sweep_header};

/// Caps the worker pool at `OTTO_THREADS` when it is set.
pub fn configure_threads(var: Option<&str>) -> Result<(), CliError> {
    let Some(v) = var else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::schema("OTTO_THREADS", format!("`{v}` is not a positive integer"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::schema("OTTO_THREADS", e.to_string()))
}
