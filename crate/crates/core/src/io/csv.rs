//! Plain CSV output with locale-independent 17-significant-digit numbers.

use std::fmt::Write as _;
use std::path::Path;

use crate::diagnostics::DiagnosticsRecord;
use crate::error::{Error, Result};

/// Scientific notation with 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.push(row.iter().map(|x| fmt_num(*x)).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })
    }
}

pub const TRAJECTORY_HEADER: [&str; 7] = ["t", "h0", "h1", "h2", "h3", "energy_residual", "noise_scalar"];

pub fn trajectory_table(records: &[DiagnosticsRecord]) -> CsvTable {
    let mut t = CsvTable::new(&TRAJECTORY_HEADER);
    for r in records {
        t.push_numbers(&[r.t, r.h0, r.h1, r.h2, r.h3, r.energy_residual, r.noise_scalar]);
    }
    t
}
