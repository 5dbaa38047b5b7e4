//! Two-column complex CSV input and the emitted plot-data files.

use std::path::Path;

use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected two numeric columns re,im")]
    BadRow { path: String, line: usize },
}

fn io_err(path: &Path, source: std::io::Error) -> IoError {
    IoError::Io { path: path.display().to_string(), source }
}

/// Reads complex points from a CSV with columns `re,im`; a non-numeric first
/// line is treated as a header.
pub fn read_points_csv(path: &Path) -> Result<Vec<Complex64>, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let (a, b) = (cols.next(), cols.next());
        let parsed = match (a, b) {
            (Some(a), Some(b)) => a.parse::<f64>().ok().zip(b.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some((re, im)) => out.push(Complex64::new(re, im)),
            None if k == 0 => continue, // header
            None => return Err(IoError::BadRow { path: path.display().to_string(), line: k + 1 }),
        }
    }
    Ok(out)
}

pub fn write_poles_csv(path: &Path, poles: &[Complex64]) -> Result<(), IoError> {
    let mut text = String::from("re,im\n");
    for p in poles {
        text.push_str(&format!("{},{}\n", p.re, p.im));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn write_pole_residue_csv(
    path: &Path,
    rows: &[(Complex64, Complex64)],
) -> Result<(), IoError> {
    let mut text = String::from("pole_re,pole_im,residue_re,residue_im\n");
    for (p, r) in rows {
        text.push_str(&format!("{},{},{},{}\n", p.re, p.im, r.re, r.im));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn write_history_csv(path: &Path, history: &[crate::schema::HistoryEntry]) -> Result<(), IoError> {
    let mut text = String::from("iteration,n,max_err,allowed\n");
    for (k, rec) in history.iter().enumerate() {
        let allowed = match rec.allowed {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        text.push_str(&format!("{},{},{},{}\n", k, rec.n, rec.max_err, allowed));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn write_errors_csv(path: &Path, rows: &[(Complex64, f64)]) -> Result<(), IoError> {
    let mut text = String::from("re,im,abs_err\n");
    for (p, e) in rows {
        text.push_str(&format!("{},{},{}\n", p.re, p.im, e));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Sibling path for the convergence file emitted next to a poles CSV:
/// `poles.csv` becomes `poles.history.csv`.
pub fn history_sibling(path: &Path) -> std::path::PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("emit");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}.history.{ext}"))
}
