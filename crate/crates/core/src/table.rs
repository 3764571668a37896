//! Numeric CSV tables with `#` comment lines.

use crate::error::{Error, Result};

/// Parses a headed numeric CSV, requiring the exact column names.
pub(crate) fn read_numeric_table(text: &str, origin: &str, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let parse_err = |message: String| Error::Parse { path: origin.to_string(), message };

    let found = reader.headers().map_err(|e| parse_err(e.to_string()))?;
    let found: Vec<&str> = found.iter().collect();
    if found != header {
        return Err(parse_err(format!(
            "expected header '{}', found '{}'",
            header.join(","),
            found.join(",")
        )));
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        if record.len() != header.len() {
            return Err(parse_err(format!("row {}: expected {} columns", i + 1, header.len())));
        }
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| parse_err(format!("row {}: cannot parse '{s}' as a number", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}
