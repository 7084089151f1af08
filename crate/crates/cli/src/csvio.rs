//! Numeric CSV in and out.
//!
//! Comma separated, mandatory header, `.` decimal separator. Values are
//! written in shortest round-trip form, so reading a written file gives back
//! the exact same `f64`s.

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// A parsed CSV file held column-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    /// SHA-256 of the raw file bytes, lower-case hex.
    pub sha256: String,
}

impl Table {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.index_of(name).map(|k| self.columns[k].as_slice())
    }
}

pub fn read_csv(path: &Path) -> Result<Table> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path.display(), e))?;
    parse_csv(&bytes, &path.display().to_string())
}

/// Parses CSV bytes; `origin` labels error messages.
pub fn parse_csv(bytes: &[u8], origin: &str) -> Result<Table> {
    let malformed = |line: u64, message: String| CliError::Malformed {
        path: origin.to_string(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().any(String::is_empty) {
        return Err(malformed(1, "empty column name in header".into()));
    }
    for (k, h) in header.iter().enumerate() {
        if header[..k].contains(h) {
            return Err(malformed(1, format!("duplicate column '{h}'")));
        }
    }
    let mut columns = vec![Vec::new(); header.len()];
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != header.len() {
            return Err(malformed(
                line,
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        for (k, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                malformed(
                    line,
                    format!("column '{}': not a number: '{field}'", header[k]),
                )
            })?;
            if !v.is_finite() {
                return Err(malformed(
                    line,
                    format!("column '{}': non-finite value", header[k]),
                ));
            }
            columns[k].push(v);
        }
    }
    Ok(Table {
        header,
        columns,
        sha256: hex::encode(Sha256::digest(bytes)),
    })
}

/// Renders columns with a header line.
pub fn render_csv(header: &[String], columns: &[Vec<f64>]) -> Vec<u8> {
    let rows = columns.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(24 * (rows + 1) * header.len().max(1));
    writeln!(out, "{}", header.join(",")).unwrap();
    for i in 0..rows {
        for (k, col) in columns.iter().enumerate() {
            if k > 0 {
                out.push(b',');
            }
            write!(out, "{:?}", col[i]).unwrap();
        }
        out.push(b'\n');
    }
    out
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir.display(), e))?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.flush())
        .map_err(|e| CliError::io(path.display(), e))?;
    tmp.persist(path)
        .map_err(|e| CliError::io(path.display(), e.error))?;
    Ok(())
}
