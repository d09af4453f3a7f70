// SPDX-License-Identifier: MIT OR Apache-2.0

//! Reading a numeric column from a CSV file or stdin.

use std::fs::File;
use std::io::{self, Read};
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Which CSV column holds the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    /// Zero-based field index.
    Index(usize),
    /// Header name; requires a header row.
    Name(String),
}

impl std::str::FromStr for Column {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.is_empty() {
            return Err("column must not be empty".into());
        }
        Ok(s.parse().map_or_else(|_| Self::Name(s.to_string()), Self::Index))
    }
}

fn open(path: &Path) -> CliResult<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path)
        .map(|f| Box::new(f) as Box<dyn Read>)
        .map_err(|e| CliError::Unreadable(format!("{}: {e}", path.display())))
}

/// Read one column of numbers. The first row is treated as a header when
/// its selected field is not a number. Blank lines are skipped.
pub fn read_series(path: &Path, column: Option<&Column>) -> CliResult<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut values = Vec::new();
    let mut bad = Vec::new();
    let mut index = match column {
        Some(Column::Index(i)) => Some(*i),
        _ => None,
    };
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Unreadable(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if first {
            first = false;
            let idx = match (column, index) {
                (_, Some(i)) => i,
                (Some(Column::Name(name)), None) => {
                    let found = record.iter().position(|h| h == name).ok_or_else(|| {
                        CliError::Unreadable(format!("no column named '{name}' in the header"))
                    })?;
                    index = Some(found);
                    continue;
                }
                (_, None) => {
                    index = Some(0);
                    0
                }
            };
            let is_number = record.get(idx).is_some_and(|f| f.parse::<f64>().is_ok());
            if !is_number {
                continue;
            }
        }
        let idx = index.expect("column resolved on the first row");
        let field = record
            .get(idx)
            .ok_or_else(|| CliError::Unreadable(format!("line {line}: no field {idx}")))?;
        let value: f64 = field
            .parse()
            .map_err(|_| CliError::Unreadable(format!("line {line}: '{field}' is not a number")))?;
        if value.is_finite() {
            values.push(value);
        } else {
            bad.push(line);
        }
    }
    if !bad.is_empty() {
        return Err(CliError::NonFinite(bad));
    }
    if values.is_empty() {
        return Err(CliError::Unreadable(format!("{}: no values", path.display())));
    }
    Ok(values)
}
