//! Point-cloud CSV files: a two-column header, then one `x,y` row per point
//! with 17 significant digits so every `f64` survives a round trip.

use std::fmt::Write as _;
use std::path::Path;

use crate::transforms::{Dataset, Label, Point2};

use super::RunError;

pub fn format_cloud(d: &Dataset) -> String {
    let (c1, c2) = d.label().columns();
    let mut out = String::with_capacity(48 * (d.len() + 1));
    let _ = writeln!(out, "{c1},{c2}");
    for p in d.points() {
        let _ = writeln!(out, "{:.16e},{:.16e}", p.x1, p.x2);
    }
    out
}

pub fn write_cloud(path: &Path, d: &Dataset) -> Result<(), RunError> {
    std::fs::write(path, format_cloud(d)).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a two-column point cloud. The header names are not interpreted.
pub fn read_cloud(path: &Path, label: Label) -> Result<Dataset, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let malformed = |line: usize, message: String| RunError::Malformed {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.split(',').count() == 2 => {}
        Some((_, header)) => {
            return Err(malformed(
                1,
                format!("expected a two-column header, got `{header}`"),
            ))
        }
        None => return Err(malformed(1, "missing header".into())),
    }

    let mut points = Vec::new();
    for (idx, row) in lines {
        let line = idx + 1;
        if row.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 2 {
            return Err(malformed(
                line,
                format!("expected 2 columns, found {}", fields.len()),
            ));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| malformed(line, format!("`{}` is not a finite number", s.trim())))
        };
        points.push(Point2::new(parse(fields[0])?, parse(fields[1])?));
    }
    Ok(Dataset::new(points, label, 0)?)
}
