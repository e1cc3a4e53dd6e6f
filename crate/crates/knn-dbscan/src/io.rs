//! Point and label file formats plus the per-run metrics record.
//!
//! Point files: a header line `N d`, then `N` whitespace-separated rows
//! of `d` decimal reals. Label files: `N` lines of one integer, -1 for
//! noise. Floats are written in shortest round-trip form, so write /
//! read / write is byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::points::PointSet;

pub fn format_points(points: &PointSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", points.n_points(), points.dim());
    for i in 0..points.n_points() {
        let row = points.point(i);
        for (k, x) in row.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{x}");
        }
        out.push('\n');
    }
    out
}

pub fn write_points(path: &Path, points: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(points))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_points(&text).map_err(|e| match e {
        Error::InvalidData(msg) => Error::invalid_data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::invalid_data("empty point file"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::invalid_data("header must start with the point count"))?;
    let d: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::invalid_data("header must give the dimension"))?;
    if parts.next().is_some() {
        return Err(Error::invalid_data("header has trailing tokens"));
    }
    let mut coords = Vec::with_capacity(n * d);
    for token in lines.flat_map(|l| l.split_whitespace()) {
        let x: f64 = token
            .parse()
            .map_err(|_| Error::invalid_data(format!("bad coordinate {token:?}")))?;
        coords.push(x);
    }
    if coords.len() != n * d {
        return Err(Error::invalid_data(format!(
            "expected {} coordinates, found {}",
            n * d,
            coords.len()
        )));
    }
    PointSet::new(coords, d)
}

pub fn format_labels(labels: &[i64]) -> String {
    let mut out = String::with_capacity(labels.len() * 3);
    for l in labels {
        let _ = writeln!(out, "{l}");
    }
    out
}

pub fn write_labels(path: &Path, labels: &[i64]) -> Result<()> {
    std::fs::write(path, format_labels(labels))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn read_labels(path: &Path) -> Result<Vec<i64>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    text.split_whitespace()
        .map(|token| {
            token
                .parse::<i64>()
                .map_err(|_| Error::invalid_data(format!("{}: bad label {token:?}", path.display())))
        })
        .collect()
}

/// One structured record per clustering run. Phase timings are seconds;
/// the graph-construction entry is present only when the run built the
/// graph itself.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsRecord {
    #[serde(rename = "knng", skip_serializing_if = "Option::is_none")]
    pub knng_seconds: Option<f64>,
    #[serde(rename = "local")]
    pub local_seconds: f64,
    #[serde(rename = "min-edges")]
    pub min_edges_seconds: f64,
    #[serde(rename = "pointer jumping")]
    pub pointer_jumping_seconds: f64,
    #[serde(rename = "update E_cut")]
    pub update_cut_seconds: f64,
    pub clusters: usize,
    pub core: usize,
    pub border: usize,
    pub noise: usize,
    pub cut_edges: usize,
}

impl MetricsRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("metrics record serializes")
    }
}

/// Per-round cut-phase trace, one JSON object per line under --trace.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceRecord {
    pub round: usize,
    pub active_cut_edges: usize,
    pub messages: usize,
    pub n_root: usize,
}

impl TraceRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip_losslessly() {
        let points = PointSet::new(vec![0.1, -2.5e-17, 3.0, 1.0 / 3.0], 2).unwrap();
        let text = format_points(&points);
        let back = parse_points(&text).unwrap();
        assert_eq!(points, back);
        assert_eq!(format_points(&back), text);
    }

    #[test]
    fn labels_round_trip() {
        let dir = std::env::temp_dir().join("knn_dbscan_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("labels.txt");
        let labels = vec![0i64, -1, 17, 3];
        write_labels(&path, &labels).unwrap();
        assert_eq!(read_labels(&path).unwrap(), labels);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn bad_point_files_are_invalid_data() {
        assert!(matches!(parse_points(""), Err(Error::InvalidData(_))));
        assert!(matches!(parse_points("2 2\n1 2\n3"), Err(Error::InvalidData(_))));
        assert!(matches!(parse_points("1 1\nfoo"), Err(Error::InvalidData(_))));
        assert!(matches!(parse_points("1 1 9\n1"), Err(Error::InvalidData(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = read_points(Path::new("/definitely/not/here.pts")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn metrics_record_uses_the_phase_names() {
        let record = MetricsRecord {
            knng_seconds: Some(0.5),
            local_seconds: 0.1,
            min_edges_seconds: 0.2,
            pointer_jumping_seconds: 0.3,
            update_cut_seconds: 0.4,
            clusters: 2,
            core: 10,
            border: 3,
            noise: 1,
            cut_edges: 7,
        };
        let json = record.to_json();
        for key in ["\"knng\"", "\"local\"", "\"min-edges\"", "\"pointer jumping\"", "\"update E_cut\""] {
            assert!(json.contains(key), "{json}");
        }
        let without = MetricsRecord {
            knng_seconds: None,
            ..record
        };
        assert!(!without.to_json().contains("knng"));
    }
}
