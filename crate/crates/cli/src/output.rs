//! CSV formatting and file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// Shortest round-trip decimal form; scientific notation for very small or
/// very large magnitudes.
pub fn fmt_float(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Evenly spaced grid with exact endpoints.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|j| {
                if j + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * j as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

pub struct Csv {
    columns: Vec<&'static str>,
    text: String,
    rows: usize,
}

impl Csv {
    pub fn new(columns: &[&'static str]) -> Self {
        let mut text = columns.join(",");
        text.push('\n');
        Csv {
            columns: columns.to_vec(),
            text,
            rows: 0,
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        debug_assert_eq!(values.len(), self.columns.len());
        let line: Vec<String> = values.iter().map(|&v| fmt_float(v)).collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
        self.rows += 1;
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Destination for command output: a directory, or stdout when none is given.
pub struct Output {
    pub dir: Option<PathBuf>,
    pub force: bool,
}

impl Output {
    /// Writes all files, or none if any already exists without `force`.
    pub fn write_all(&self, files: &[(&str, String)]) -> Result<()> {
        let Some(dir) = &self.dir else {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for (_, contents) in files {
                lock.write_all(contents.as_bytes())
                    .map_err(|e| CliError::io("<stdout>", e))?;
            }
            return Ok(());
        };
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        if !self.force {
            if let Some(path) = files.iter().map(|(name, _)| dir.join(name)).find(|p| p.exists()) {
                return Err(CliError::OutputExists { path });
            }
        }
        for (name, contents) in files {
            write_file(&dir.join(name), contents)?;
        }
        Ok(())
    }

    pub fn require_dir(&self, command: &str) -> Result<&Path> {
        self.dir
            .as_deref()
            .ok_or_else(|| CliError::validation("--out", format!("required by `{command}`")))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.5), "1.5");
        assert_eq!(fmt_float(0.1), "0.1");
        assert_eq!(fmt_float(2.5e-5), "2.5e-5");
        assert_eq!(fmt_float(-3e20), "-3e20");
        assert_eq!(fmt_float(1234.5678), "1234.5678");
        for v in [std::f64::consts::PI, 1.0 / 3.0, 6.02e23, 1.1e-17] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn grid_endpoints() {
        let g = linspace(0.1, 3.0, 581);
        assert_eq!(g.len(), 581);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[580], 3.0);
        assert_eq!(linspace(-15.0, 15.0, 2001)[1000], 0.0);
    }

    #[test]
    fn csv_layout() {
        let mut csv = Csv::new(&["a", "b"]);
        csv.row(&[1.0, 2e-7]);
        assert_eq!(csv.rows(), 1);
        assert_eq!(csv.into_string(), "a,b\n1,2e-7\n");
    }

    #[test]
    fn refuses_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let out = Output {
            dir: Some(dir.path().to_path_buf()),
            force: false,
        };
        out.write_all(&[("x.csv", "1\n".into())]).unwrap();
        assert!(matches!(
            out.write_all(&[("y.csv", "2\n".into()), ("x.csv", "3\n".into())]),
            Err(CliError::OutputExists { .. })
        ));
        assert!(!dir.path().join("y.csv").exists());
        let forced = Output {
            dir: Some(dir.path().to_path_buf()),
            force: true,
        };
        forced.write_all(&[("x.csv", "3\n".into())]).unwrap();
        assert_eq!(fs::read_to_string(dir.path().join("x.csv")).unwrap(), "3\n");
    }
}
