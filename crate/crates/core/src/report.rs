//! Deterministic CSV reports: fixed row ordering, no timestamps in data
//! rows, floats printed with 17 significant digits so identical configs
//! produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::Result;

/// 17 significant digits round-trip f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// A CSV file under construction.
pub struct CsvReport {
    header: String,
    rows: Vec<String>,
}

impl CsvReport {
    pub fn new(columns: &[&str]) -> Self {
        CsvReport {
            header: columns.join(","),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, fields: &[String]) {
        self.rows.push(fields.join(","));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "{}", self.header)?;
        for row in &self.rows {
            writeln!(out, "{row}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_string(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 1));
        s.push_str(&self.header);
        s.push('\n');
        for row in &self.rows {
            s.push_str(row);
            s.push('\n');
        }
        s
    }
}
