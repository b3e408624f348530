//! Batch runs behind the `abelcheck` binary.
//!
//! Every command writes a deterministic JSON body and a separate header
//! holding the tool version, seed and timings. The acceptance criteria live
//! in [`acceptance`] so the binary and the test suite run the same code.

pub mod acceptance;
pub mod bounds_cmd;
pub mod covers_cmd;
pub mod naive;
pub mod report;
pub mod verify_cmd;

use std::path::PathBuf;

use thiserror::Error;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "ABELCHECK_OUT";

pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 2;
    pub const USAGE: i32 = 64;
    pub const INVALID_DATA: i32 = 65;
    pub const IO: i32 = 74;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Invalid(_) => exit::INVALID_DATA,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<lemma_lab::LabError> for CliError {
    fn from(e: lemma_lab::LabError) -> Self {
        use lemma_lab::LabError::*;
        match e {
            UnknownLemma(_) | Parse(_) => CliError::Usage(e.to_string()),
            Io(m) => CliError::Io(m),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<covers::CoverError> for CliError {
    fn from(e: covers::CoverError) -> Self {
        match e {
            covers::CoverError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<bounds::BoundsError> for CliError {
    fn from(e: bounds::BoundsError) -> Self {
        match e {
            bounds::BoundsError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

/// Result of a command: exit code plus the lines printed to stdout.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub lines: Vec<String>,
}

/// `--out`, else `$ABELCHECK_OUT`, else `./abelcheck-out`.
pub fn output_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("abelcheck-out"))
}
