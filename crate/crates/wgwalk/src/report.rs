//! Deterministic file output: RFC-4180-style CSV tables and binary P6
//! pixmap heatmaps. Values are printed with 17 significant digits so a
//! round trip through the file recovers every f64 bit-exactly, and both
//! writers produce byte-identical files for identical inputs.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("refusing to write non-finite value {value} in column {column} of {path}")]
    NonFinite { path: String, column: String, value: f64 },
    #[error("row length {got} does not match header length {want}")]
    RowShape { got: usize, want: usize },
    #[error("heatmap needs a nonnegative matrix, found {0}")]
    NegativeCell(f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Formats one value with 17 significant digits, enough for exact f64
/// round-tripping.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a CSV table: header row, then one row per record, LF endings.
/// All values are validated finite before anything is created on disk.
pub fn emit_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<(), ReportError> {
    let mut body = String::with_capacity(rows.len() * header.len() * 24 + 64);
    body.push_str(&header.join(","));
    body.push('\n');
    for row in rows {
        if row.len() != header.len() {
            return Err(ReportError::RowShape { got: row.len(), want: header.len() });
        }
        for (c, v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(ReportError::NonFinite {
                    path: path.display().to_string(),
                    column: header[c].to_string(),
                    value: *v,
                });
            }
            if c > 0 {
                body.push(',');
            }
            body.push_str(&format_value(*v));
        }
        body.push('\n');
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, body.as_bytes())?;
    Ok(())
}

/// Reads back a CSV written by [`emit_csv`]: (header, rows).
pub fn parse_csv(content: &str) -> Option<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = content.lines();
    let header: Vec<String> = lines.next()?.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for line in lines {
        let row: Option<Vec<f64>> = line.split(',').map(|v| v.parse().ok()).collect();
        rows.push(row?);
    }
    Some((header, rows))
}

/// Colour table used for heatmaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colormap {
    Gray,
    Viridis,
}

impl Colormap {
    /// 256-entry RGB table. The viridis-like map interpolates linearly
    /// between five fixed anchor colours.
    fn table(self) -> Vec<[u8; 3]> {
        match self {
            Colormap::Gray => (0..256).map(|v| [v as u8; 3]).collect(),
            Colormap::Viridis => {
                const ANCHORS: [[f64; 3]; 5] = [
                    [68.0, 1.0, 84.0],
                    [59.0, 82.0, 139.0],
                    [33.0, 145.0, 140.0],
                    [94.0, 201.0, 98.0],
                    [253.0, 231.0, 37.0],
                ];
                (0..256)
                    .map(|v| {
                        let x = v as f64 / 255.0 * (ANCHORS.len() - 1) as f64;
                        let i = (x.floor() as usize).min(ANCHORS.len() - 2);
                        let t = x - i as f64;
                        let mut rgb = [0u8; 3];
                        for c in 0..3 {
                            rgb[c] = (ANCHORS[i][c] * (1.0 - t) + ANCHORS[i + 1][c] * t)
                                .round() as u8;
                        }
                        rgb
                    })
                    .collect()
            }
        }
    }
}

/// Pixels drawn per matrix cell.
const CELL_PX: usize = 24;

/// Renders a nonnegative matrix as a binary P6 pixmap, one CELL_PX-square
/// block per cell, scaled linearly from zero to the matrix maximum. An
/// all-zero matrix renders at the bottom of the colour table.
pub fn emit_heatmap(
    path: &Path,
    matrix: &DMatrix<f64>,
    colormap: Colormap,
) -> Result<(), ReportError> {
    for &v in matrix.iter() {
        if !(v >= 0.0) {
            return Err(ReportError::NegativeCell(v));
        }
    }
    let table = colormap.table();
    let max = matrix.iter().fold(0.0f64, |m, &v| m.max(v));
    let (rows, cols) = (matrix.nrows(), matrix.ncols());
    let (w, h) = (cols * CELL_PX, rows * CELL_PX);
    let mut data = Vec::with_capacity(w * h * 3 + 32);
    data.extend_from_slice(format!("P6\n{w} {h}\n255\n").as_bytes());
    for py in 0..h {
        for px in 0..w {
            let v = matrix[(py / CELL_PX, px / CELL_PX)];
            let level = if max > 0.0 {
                ((v / max) * 255.0).round().min(255.0) as usize
            } else {
                0
            };
            data.extend_from_slice(&table[level]);
        }
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(&data)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpdir() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn csv_round_trips_exactly() {
        let dir = tmpdir();
        let path = dir.path().join("t.csv");
        let rows = vec![
            vec![1.0 / 3.0, 2.0f64.sqrt()],
            vec![std::f64::consts::PI, 1e-300],
        ];
        emit_csv(&path, &["a", "b"], &rows).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        assert!(!content.contains('\r'));
        let (header, parsed) = parse_csv(&content).unwrap();
        assert_eq!(header, vec!["a", "b"]);
        assert_eq!(parsed, rows);
    }

    #[test]
    fn csv_reruns_are_byte_identical() {
        let dir = tmpdir();
        let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        let rows = vec![vec![0.1, 0.2], vec![0.3, 0.4]];
        emit_csv(&p1, &["x", "y"], &rows).unwrap();
        emit_csv(&p2, &["x", "y"], &rows).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    }

    #[test]
    fn identity_csv_has_three_lines() {
        let dir = tmpdir();
        let path = dir.path().join("id.csv");
        emit_csv(&path, &["c0", "c1"], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        assert_eq!(content.lines().count(), 3);
    }

    #[test]
    fn nan_refused_without_creating_file() {
        let dir = tmpdir();
        let path = dir.path().join("bad.csv");
        let err = emit_csv(&path, &["v"], &[vec![f64::NAN]]);
        assert!(matches!(err, Err(ReportError::NonFinite { .. })));
        assert!(!path.exists());
    }

    #[test]
    fn zero_matrix_renders_black() {
        let dir = tmpdir();
        let path = dir.path().join("zero.ppm");
        emit_heatmap(&path, &DMatrix::zeros(2, 2), Colormap::Gray).unwrap();
        let data = std::fs::read(&path).unwrap();
        let header = b"P6\n48 48\n255\n";
        assert_eq!(&data[..header.len()], header);
        assert!(data[header.len()..].iter().all(|&b| b == 0));
    }

    #[test]
    fn identity_matrix_has_bright_diagonal() {
        let dir = tmpdir();
        let path = dir.path().join("id.ppm");
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_element(3, 1.0));
        emit_heatmap(&path, &m, Colormap::Gray).unwrap();
        let data = std::fs::read(&path).unwrap();
        let offset = b"P6\n72 72\n255\n".len();
        let px = |x: usize, y: usize| data[offset + 3 * (y * 72 + x)];
        assert_eq!(px(12, 12), 255); // centre of cell (0,0)
        assert_eq!(px(36, 12), 0); // cell (0,1)
        assert_eq!(px(36, 36), 255);
    }

    #[test]
    fn heatmaps_are_deterministic_and_negative_rejected() {
        let dir = tmpdir();
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.25, 1.0]);
        let (p1, p2) = (dir.path().join("a.ppm"), dir.path().join("b.ppm"));
        emit_heatmap(&p1, &m, Colormap::Viridis).unwrap();
        emit_heatmap(&p2, &m, Colormap::Viridis).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
        let neg = DMatrix::from_row_slice(1, 2, &[0.1, -0.1]);
        assert!(matches!(
            emit_heatmap(&dir.path().join("n.ppm"), &neg, Colormap::Gray),
            Err(ReportError::NegativeCell(_))
        ));
    }
}
