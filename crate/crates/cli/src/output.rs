//! Output plumbing: 9-significant-digit CSV tables, JSON records, and
//! atomic file writes (temp file + rename) so an interrupted run never
//! leaves a half-written table behind.

use std::io::Write;
use std::path::{Path, PathBuf};

/// Formats a float with 9 significant digits, the fixed CSV convention.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".into();
    }
    format!("{x:.8e}")
}

/// A CSV table with a `#`-prefixed header comment naming the columns.
pub struct Csv {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(columns: &[&str]) -> Self {
        Csv {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes to `path` atomically, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let tmp: PathBuf = {
                let mut name = path.as_os_str().to_owned();
                name.push(".tmp");
                PathBuf::from(name)
            };
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, path)
        }
    }
}

/// JSON view of a complex number.
#[derive(serde::Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<cosserat_waves::algebra::C64> for Cx {
    fn from(z: cosserat_waves::algebra::C64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

/// 3x3 complex matrix as nested [re, im] pairs, row-major.
pub fn matrix_json(m: &cosserat_waves::algebra::Mat3C) -> serde_json::Value {
    serde_json::json!((0..3)
        .map(|i| (0..3)
            .map(|j| serde_json::json!({ "re": m.0[i][j].re, "im": m.0[i][j].im }))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}
