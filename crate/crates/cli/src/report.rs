use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const REPORT_SCHEMA: u32 = 1;

/// Anchor for checks that only guard the plumbing between commands.
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input or an unmet hypothesis; exit status 2.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn input(e: impl ToString) -> Self {
        Self::Input(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub anchor: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, anchor: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            anchor: anchor.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, checks: Vec<Check>) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            command: command.into(),
            inputs,
            results,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

/// Reads JSON from a file, or from standard input for `None` or `-`.
pub fn read_json(path: Option<&Path>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid JSON input: {e}")))
}

pub fn write_report(report: &RunReport, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text)?,
        _ => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The payload under `results.<key>` when `v` is a report of `command`.
pub fn unwrap_report<'a>(v: &'a Value, command: &str, key: &str) -> Option<&'a Value> {
    (v.get("command")?.as_str()? == command).then(|| v.get("results")?.get(key))?
}
