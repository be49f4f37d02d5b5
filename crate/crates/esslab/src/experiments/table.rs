//! Numeric result tables with lossless CSV round-tripping.
//!
//! Values are canonicalized to 6 significant digits when a row is pushed, so
//! the CSV form (shortest decimal representation of the canonical value) and
//! the in-memory form are the same numbers.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - magnitude);
    (x * factor).round() / factor
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row, canonicalizing each value to 6 significant digits.
    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row.into_iter().map(|v| round_sig(v, 6)).collect());
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Vec<f64> {
        let idx = self.column_index(name).unwrap_or_else(|| panic!("no column `{name}`"));
        self.rows.iter().map(|r| r[idx]).collect()
    }

    /// Keeps only the given row (1-based), preserving the header.
    pub fn select_row(&self, row1: usize) -> Option<Self> {
        if row1 == 0 || row1 > self.rows.len() {
            return None;
        }
        Some(Self { columns: self.columns.clone(), rows: vec![self.rows[row1 - 1].clone()] })
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), Error> {
        // atomic per-file write: temp file in the same directory, then rename
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".{}.tmp",
            path.file_name().map(|s| s.to_string_lossy().to_string()).unwrap_or_default()
        ));
        fs::write(&tmp, self.to_csv_string())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn from_csv_str(s: &str) -> Result<Self, Error> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Csv("empty file".into()))?;
        let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<f64>, _> = line.split(',').map(|c| c.trim().parse::<f64>()).collect();
            let row = row.map_err(|e| Error::Csv(format!("line {}: {e}", i + 2)))?;
            if row.len() != columns.len() {
                return Err(Error::Csv(format!("line {}: width mismatch", i + 2)));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn read_csv(path: &Path) -> Result<Self, Error> {
        Self::from_csv_str(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_six_significant_digits() {
        assert_eq!(round_sig(0.8333333333, 6), 0.833333);
        assert_eq!(round_sig(-174.23456, 6), -174.235);
        assert_eq!(round_sig(123456789.0, 6), 123457000.0);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(round_sig(17.0, 6), 17.0);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut t = ResultTable::new(&["m", "ess", "sd"]);
        t.push_row(vec![1.0, 0.93333333333, 0.456789123]);
        t.push_row(vec![30.0, -174.2345678, 12.0]);
        t.push_row(vec![2.0, 1e-7 / 3.0, 0.0]);
        let s = t.to_csv_string();
        let back = ResultTable::from_csv_str(&s).unwrap();
        assert_eq!(t, back);
        assert_eq!(s, back.to_csv_string());
    }

    #[test]
    fn file_round_trip_via_atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested").join("t.csv");
        let mut t = ResultTable::new(&["x", "y"]);
        t.push_row(vec![1.0, -0.123456789]);
        t.write_csv(&path).unwrap();
        let back = ResultTable::read_csv(&path).unwrap();
        assert_eq!(t, back);
        // no temp file left behind
        assert_eq!(std::fs::read_dir(path.parent().unwrap()).unwrap().count(), 1);
    }

    #[test]
    fn row_selection_is_one_based() {
        let mut t = ResultTable::new(&["a"]);
        t.push_row(vec![10.0]);
        t.push_row(vec![20.0]);
        assert_eq!(t.select_row(2).unwrap().rows, vec![vec![20.0]]);
        assert!(t.select_row(0).is_none());
        assert!(t.select_row(3).is_none());
    }
}
