use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointCloud};

/// Reads a CSV point cloud with `d` columns per row.
pub fn load_points(path: impl AsRef<Path>, d: usize) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    parse_points(&text, d)
}

/// Parses CSV text, one point per row. A first row that does not parse as
/// numbers is treated as a header and skipped. Blank lines are ignored.
pub fn parse_points(text: &str, d: usize) -> Result<PointCloud> {
    let mut cloud = PointCloud::empty(d)?;
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Vec<std::result::Result<f64, _>> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let header = first && parsed.iter().all(|p| p.is_err());
        first = false;
        if header {
            continue;
        }
        if fields.len() != d {
            return Err(Error::Parse {
                row,
                column: fields.len().min(d) + 1,
                message: format!("expected {d} columns, found {}", fields.len()),
            });
        }
        let mut coords = Vec::with_capacity(d);
        for (c, (field, value)) in fields.iter().zip(parsed).enumerate() {
            let column = c + 1;
            let v = value.map_err(|_| Error::Parse {
                row,
                column,
                message: format!("not a number: {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column,
                    message: format!("non-finite value {field:?}"),
                });
            }
            coords.push(v);
        }
        cloud.push(Point::new(coords)?)?;
    }
    if cloud.is_empty() {
        return Err(Error::EmptyInput("no points in input"));
    }
    Ok(cloud)
}

/// Formats a cloud as CSV with full round-trip precision.
pub fn write_points(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for p in cloud.points() {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c:?}")).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
