use std::fs;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::config::{Failure, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Flat rows for the delimited-text format.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Result of one command. `result` and `table` are the two output forms;
/// `summary` goes to the terminal.
#[derive(Debug)]
pub struct Report {
    pub ok: bool,
    pub summary: Vec<String>,
    pub result: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Document<'a> {
    schema_version: u32,
    command: &'a str,
    seed: u64,
    status: &'static str,
    config: &'a RunConfig,
    result: &'a Value,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "violation"
    }
}

pub fn render(cfg: &RunConfig, report: &Report) -> Result<Vec<u8>, Failure> {
    let io_err = |e: &dyn std::fmt::Display| Failure::usage(format!("cannot render output: {e}"));
    match cfg.format_kind {
        Format::Json => {
            let doc = Document {
                schema_version: SCHEMA_VERSION,
                command: &cfg.command,
                seed: cfg.seed,
                status: status(report.ok),
                config: cfg,
                result: &report.result,
            };
            let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| io_err(&e))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let config = serde_json::to_string(cfg).map_err(|e| io_err(&e))?;
            let mut out = format!(
                "# schema_version: {SCHEMA_VERSION}\n# command: {}\n# seed: {}\n# status: {}\n# config: {config}\n",
                cfg.command,
                cfg.seed,
                status(report.ok)
            )
            .into_bytes();
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&report.table.columns)
                .map_err(|e| io_err(&e))?;
            for row in &report.table.rows {
                w.write_record(row).map_err(|e| io_err(&e))?;
            }
            w.flush().map_err(|e| io_err(&e))?;
            drop(w);
            Ok(out)
        }
    }
}

/// Writes the rendered report to the configured file, or to standard output.
pub fn emit(cfg: &RunConfig, report: &Report) -> Result<(), Failure> {
    let bytes = render(cfg, report)?;
    match &cfg.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| {
                    Failure::usage(format!("cannot create {}: {e}", parent.display()))
                })?;
            }
            fs::write(path, bytes)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(&bytes)
            .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}"))),
    }
}
