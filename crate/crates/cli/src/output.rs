use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::args::Format;
use crate::error::CliError;

/// A command's result, renderable as CSV or JSON.
#[derive(Debug, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// Appended to the stderr summary line.
    pub note: Option<String>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }
}

/// Empty for a missing value so CSV readers see a blank cell.
pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn num(x: f64) -> String {
    dwell_core::io::fmt_energy(x)
}

pub fn render(report: &Report, format: Format, args: &[String]) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("# dwell {} {}\n", env!("CARGO_PKG_VERSION"), args.join(" "));
            out.push_str(&report.columns.join(","));
            out.push('\n');
            for row in &report.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "provenance": {
                    "tool": "dwell",
                    "version": env!("CARGO_PKG_VERSION"),
                    "args": args,
                },
                "data": report.json,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

/// Writes through a temporary file in the target directory so readers
/// never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: PathBuf::from(path),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
