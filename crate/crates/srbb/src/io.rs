//! File formats: CMAT matrices, parameter sets, atomic writes.

use crate::error::{Result, SrbbError};
use crate::linalg::{CMat, C64};
use crate::synthesis::LayerParams;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// Parses CMAT v1: first line `d`, then `d` rows of `d` entries `re,im`.
/// `#` starts a comment.
pub fn parse_cmat(text: &str) -> Result<CMat> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let head = lines.next().ok_or_else(|| SrbbError::Parse("empty matrix file".into()))?;
    let d: usize = head.parse().map_err(|_| SrbbError::Parse(format!("bad dimension line '{head}'")))?;
    if d == 0 {
        return Err(SrbbError::InvalidDimension("d = 0".into()));
    }
    let mut data = Vec::with_capacity(d * d);
    for r in 0..d {
        let line = lines.next().ok_or_else(|| SrbbError::Parse(format!("missing row {}", r + 1)))?;
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != d {
            return Err(SrbbError::Parse(format!("row {} has {} entries, expected {d}", r + 1, row.len())));
        }
        for e in row {
            let (re, im) = e.split_once(',').ok_or_else(|| SrbbError::Parse(format!("bad entry '{e}'")))?;
            let p = |s: &str| s.parse::<f64>().map_err(|_| SrbbError::Parse(format!("bad number '{s}'")));
            data.push(C64::new(p(re)?, p(im)?));
        }
    }
    if let Some(extra) = lines.next() {
        return Err(SrbbError::Parse(format!("trailing content '{extra}'")));
    }
    Ok(CMat::from_rows(d, data))
}

pub fn format_cmat(m: &CMat) -> String {
    let d = m.dim();
    let mut s = format!("{d}\n");
    for r in 0..d {
        let row: Vec<String> = (0..d).map(|c| format!("{:e},{:e}", m[(r, c)].re, m[(r, c)].im)).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn read_cmat(path: &Path) -> Result<CMat> {
    parse_cmat(&std::fs::read_to_string(path)?)
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| SrbbError::Parse(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    atomic_write(path, s.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// Plain product over the basis order of a generic dimension.
    Generic,
    /// `zeta * Psi * Phi` layers on `n` qubits.
    Zpf,
}

/// Optimized parameters of a layered approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub mode: Ordering,
    pub dim: usize,
    pub global_phase: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layers: Vec<LayerParams>,
    /// Generic mode: angle of basis element `j` at position `j - 1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generic_layers: Vec<Vec<f64>>,
}

impl ParamSet {
    pub fn validate(&self) -> Result<()> {
        match self.mode {
            Ordering::Zpf => {
                if self.layers.is_empty() {
                    return Err(SrbbError::Parse("parameter set has no layers".into()));
                }
                for l in &self.layers {
                    l.validate()?;
                    if 1usize << l.n != self.dim {
                        return Err(SrbbError::Parse("layer size disagrees with dim".into()));
                    }
                }
            }
            Ordering::Generic => {
                if self.generic_layers.is_empty() {
                    return Err(SrbbError::Parse("parameter set has no layers".into()));
                }
                for l in &self.generic_layers {
                    if l.len() != self.dim * self.dim - 1 {
                        return Err(SrbbError::LengthMismatch { expected: self.dim * self.dim - 1, got: l.len() });
                    }
                }
            }
        }
        if !self.global_phase.is_finite() {
            return Err(SrbbError::Parse("non-finite global phase".into()));
        }
        Ok(())
    }
}
