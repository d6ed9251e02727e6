//! Configuration loading, exports and the `alcove-lab` command line driver.

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod config;
pub mod export;
mod par;
pub mod report;

pub use cli::{dispatch, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Clap(String, bool),
    #[error("configuration: {0}")]
    Schema(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] alcove_core::Error),
}

/// Exit status: 0 when every check passed, 1 when a check failed, 2 for usage
/// and input errors.
pub fn run(argv: &[String]) -> (i32, String, String) {
    match dispatch(argv) {
        Ok(o) => (i32::from(!o.passed), o.text, String::new()),
        Err(LabError::Clap(msg, true)) => (2, String::new(), msg),
        Err(LabError::Clap(msg, false)) => (0, msg, String::new()),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
