//! Table ingestion: delimited text to integer-coded columns.

use std::collections::HashMap;
use std::path::Path;

use mdlcausa::PairedSample;

use crate::CliError;

/// A loaded table: integer-coded columns plus the bookkeeping to map codes
/// back to the original labels.
pub struct Dataset {
    pub names: Vec<String>,
    pub sample: PairedSample,
    /// `levels[col][code]` is the original label, in first-appearance order.
    pub levels: Vec<Vec<String>>,
}

impl Dataset {
    /// Resolves a column by name, falling back to a zero-based index.
    pub fn resolve_column(&self, key: &str) -> Result<usize, CliError> {
        if let Some(idx) = self.names.iter().position(|n| n == key) {
            return Ok(idx);
        }
        if let Ok(idx) = key.parse::<usize>() {
            if idx < self.names.len() {
                return Ok(idx);
            }
        }
        Err(CliError::usage(format!(
            "unknown column '{key}' (columns: {})",
            self.names.join(", ")
        )))
    }
}

/// Splits one line, returning owned fields.
fn split_line(line: &str, delimiter: char) -> Vec<String> {
    line.split(delimiter).map(|f| f.to_owned()).collect()
}

/// Reads a delimited table, factorizing every column to integer codes in
/// first-appearance order. `delimiter = None` auto-detects comma or tab
/// from the first line.
pub fn load_table(
    path: &Path,
    delimiter: Option<char>,
    has_header: bool,
) -> Result<Dataset, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines: Vec<&str> = raw.lines().collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(CliError::usage(format!("{} is empty", path.display())));
    }

    let delimiter = delimiter.unwrap_or_else(|| if lines[0].contains('\t') { '\t' } else { ',' });
    let width = split_line(lines[0], delimiter).len();

    let (names, first_data_line) = if has_header {
        if lines.len() == 1 {
            return Err(CliError::usage(format!(
                "{} has a header but no data rows",
                path.display()
            )));
        }
        (split_line(lines[0], delimiter), 1)
    } else {
        ((0..width).map(|i| i.to_string()).collect(), 0)
    };

    let mut codes: Vec<HashMap<String, usize>> = vec![HashMap::new(); width];
    let mut levels: Vec<Vec<String>> = vec![Vec::new(); width];
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); width];
    for (line_idx, line) in lines.iter().enumerate().skip(first_data_line) {
        let fields = split_line(line, delimiter);
        if fields.len() != width {
            return Err(CliError::usage(format!(
                "line {}: expected {width} fields, found {}",
                line_idx + 1,
                fields.len()
            )));
        }
        for (col, field) in fields.into_iter().enumerate() {
            if field.is_empty() {
                return Err(CliError::usage(format!(
                    "line {}, column {}: empty cell",
                    line_idx + 1,
                    names[col]
                )));
            }
            let next = codes[col].len();
            let code = *codes[col].entry(field.clone()).or_insert_with(|| {
                levels[col].push(field);
                next
            });
            columns[col].push(code);
        }
    }

    let alphabet_sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let sample =
        PairedSample::new(columns, alphabet_sizes).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(Dataset {
        names,
        sample,
        levels,
    })
}

/// Reads a numeric probability matrix (one row of the joint per line).
pub fn load_joint(path: &Path, delimiter: Option<char>) -> Result<mdlcausa::JointTable, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<&str> = raw.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(CliError::usage(format!("{} is empty", path.display())));
    }
    let delimiter = delimiter.unwrap_or_else(|| if lines[0].contains('\t') { '\t' } else { ',' });
    let mut rows = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let row = line
            .split(delimiter)
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| {
                    CliError::usage(format!("line {}: '{f}' is not a probability", i + 1))
                })
            })
            .collect::<Result<Vec<f64>, CliError>>()?;
        rows.push(row);
    }
    mdlcausa::JointTable::new(rows).map_err(CliError::from)
}
