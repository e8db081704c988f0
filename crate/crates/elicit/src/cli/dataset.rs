//! CSV ingestion for forecast comparison: header `id,y,<name>[.component]...`
//! with dotted component columns for multi-dimensional forecasts.

use std::path::Path;

use crate::error::{ElicitError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DataRow {
    pub id: String,
    pub y: f64,
    /// One point per forecaster, in [`Dataset::forecasters`] order.
    pub forecasts: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub forecasters: Vec<String>,
    /// Forecast dimension, shared by every forecaster.
    pub dim: usize,
    pub rows: Vec<DataRow>,
}

pub fn parse_dataset(path: &Path) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| ElicitError::UsageError(format!("cannot open {}: {e}", path.display())))?;

    let headers = reader
        .headers()
        .map_err(|e| parse_err(1, format!("unreadable header: {e}")))?
        .clone();
    let layout = parse_header(&headers)?;

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row_no = i + 2; // header is row 1
        let record = record.map_err(|e| parse_err(row_no, format!("unreadable row: {e}")))?;
        if record.len() != headers.len() {
            return Err(parse_err(
                row_no,
                format!("expected {} cells, got {}", headers.len(), record.len()),
            ));
        }
        let id = record[0].to_string();
        let y = parse_cell(&record[1], row_no, "y")?;
        let mut forecasts = Vec::with_capacity(layout.groups.len());
        let mut col = 2;
        for (name, dim) in &layout.groups {
            let mut point = Vec::with_capacity(*dim);
            for _ in 0..*dim {
                point.push(parse_cell(&record[col], row_no, name)?);
                col += 1;
            }
            forecasts.push(point);
        }
        rows.push(DataRow { id, y, forecasts });
    }
    if rows.is_empty() {
        return Err(ElicitError::UsageError(format!(
            "{} contains no data rows",
            path.display()
        )));
    }
    Ok(Dataset {
        forecasters: layout.groups.iter().map(|(n, _)| n.clone()).collect(),
        dim: layout.dim,
        rows,
    })
}

struct HeaderLayout {
    groups: Vec<(String, usize)>,
    dim: usize,
}

fn parse_header(headers: &csv::StringRecord) -> Result<HeaderLayout> {
    if headers.len() < 3 || &headers[0] != "id" || &headers[1] != "y" {
        return Err(parse_err(
            1,
            "header must start with 'id,y' followed by forecaster columns".into(),
        ));
    }
    let mut groups: Vec<(String, usize)> = Vec::new();
    for col in headers.iter().skip(2) {
        let name = col.split_once('.').map_or(col, |(n, _)| n).to_string();
        match groups.last_mut() {
            Some((last, dim)) if *last == name => *dim += 1,
            _ => {
                if groups.iter().any(|(n, _)| *n == name) {
                    return Err(parse_err(
                        1,
                        format!("component columns of {name:?} are not contiguous"),
                    ));
                }
                groups.push((name, 1));
            }
        }
    }
    let dim = groups[0].1;
    if groups.iter().any(|(_, d)| *d != dim) {
        return Err(parse_err(
            1,
            "all forecasters must have the same dimension".into(),
        ));
    }
    Ok(HeaderLayout { groups, dim })
}

fn parse_cell(cell: &str, row: usize, what: &str) -> Result<f64> {
    cell.parse::<f64>()
        .map_err(|_| parse_err(row, format!("non-numeric {what} cell {cell:?}")))
}

fn parse_err(row: usize, detail: String) -> ElicitError {
    ElicitError::ParseError { row, detail }
}

/// Inverse of [`parse_dataset`] up to float formatting.
pub fn write_dataset(dataset: &Dataset) -> String {
    let mut out = String::from("id,y");
    for name in &dataset.forecasters {
        if dataset.dim == 1 {
            out.push(',');
            out.push_str(name);
        } else {
            for c in 1..=dataset.dim {
                out.push_str(&format!(",{name}.c{c}"));
            }
        }
    }
    out.push('\n');
    for row in &dataset.rows {
        out.push_str(&row.id);
        out.push_str(&format!(",{}", row.y));
        for point in &row.forecasts {
            for v in point {
                out.push_str(&format!(",{v}"));
            }
        }
        out.push('\n');
    }
    out
}
