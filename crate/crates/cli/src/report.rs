//! Versioned report files.
//!
//! `<name>.json` is the body and depends only on the command and its
//! arguments. `<name>.header.json` carries what varies between runs.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Header {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub created_unix_s: u64,
    pub timings_ms: Value,
}

impl Header {
    pub fn new(command: &str, seed: Option<u64>, timings_ms: Value) -> Self {
        Header {
            schema_version: SCHEMA_VERSION,
            tool: "abelcheck",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            created_unix_s: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            timings_ms,
        }
    }
}

#[derive(Serialize)]
struct Body<'a, T: Serialize> {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    data: &'a T,
}

/// Pretty JSON body with a trailing newline.
pub fn body_json<T: Serialize>(command: &str, data: &T) -> String {
    let body = Body { schema_version: SCHEMA_VERSION, tool: "abelcheck", version: env!("CARGO_PKG_VERSION"), command, data };
    let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
    s.push('\n');
    s
}

pub struct Written {
    pub body: PathBuf,
    pub header: PathBuf,
}

pub fn write<T: Serialize>(dir: &Path, name: &str, header: &Header, data: &T) -> Result<Written, CliError> {
    std::fs::create_dir_all(dir)?;
    let body = dir.join(format!("{name}.json"));
    let head = dir.join(format!("{name}.header.json"));
    std::fs::write(&body, body_json(&header.command, data))?;
    let mut h = serde_json::to_string_pretty(header).expect("header serializes");
    h.push('\n');
    std::fs::write(&head, h)?;
    Ok(Written { body, header: head })
}

/// Writes an auxiliary file next to the report.
pub fn write_text(dir: &Path, file: &str, text: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let p = dir.join(file);
    std::fs::write(&p, text)?;
    Ok(p)
}
