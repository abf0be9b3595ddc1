//! File formats: density matrices as `{"dims": [...], "data": [[re, im], ...]}`
//! (row-major) and CSV tables with a header row and 12 significant digits.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dielectric::ScanPoint;
use crate::entanglement::SweepRow;
use crate::error::{invalid, Result};
use crate::hilbert::{ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityJson {
    pub dims: Vec<usize>,
    pub data: Vec<[f64; 2]>,
}

impl From<&DensityMatrix> for DensityJson {
    fn from(rho: &DensityMatrix) -> Self {
        Self {
            dims: rho.dims().to_vec(),
            data: rho.matrix().data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl DensityJson {
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let n: usize = self.dims.iter().product();
        let entries = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let m = ComplexMatrix::from_vec(n, n, entries)?;
        DensityMatrix::new(self.dims.clone(), m)
    }
}

/// Shortest round-trip float formatting, so every `f64` is reproduced exactly.
pub fn density_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&DensityJson::from(rho)).expect("density serialises")
}

pub fn density_from_json(text: &str) -> Result<DensityMatrix> {
    let parsed: DensityJson = serde_json::from_str(text)
        .map_err(|e| invalid("input", format!("malformed density-matrix JSON: {e}")))?;
    parsed.to_density()
}

/// 12 significant digits in scientific notation.
pub fn csv_float(x: f64) -> String {
    format!("{x:.11e}")
}

pub const DIELECTRIC_HEADER: &str = "eps_r,frequency_hz,shift_hz";
pub const ENTANGLEMENT_HEADER: &str =
    "theta,n_a_bc,n_b_ac,n_t_ab,n_ab,n_at,n_bt,pi_tangle_raw,pi_tangle";

pub fn dielectric_csv(points: &[ScanPoint]) -> String {
    let mut out = String::from(DIELECTRIC_HEADER);
    out.push('\n');
    for p in points {
        let row = [p.eps_r, p.frequency_hz, p.shift_hz].map(csv_float);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn entanglement_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(ENTANGLEMENT_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.report;
        let fields = [
            row.theta,
            r.n_a_bc,
            r.n_b_ac,
            r.n_c_ab,
            r.n_ab,
            r.n_ac,
            r.n_bc,
            r.pi_tangle,
            r.pi_tangle_floored(),
        ]
        .map(csv_float);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tomography::ideal_density;

    #[test]
    fn density_json_layout() {
        let text = density_to_json(&ideal_density());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dims"], serde_json::json!([2, 2]));
        assert_eq!(v["data"].as_array().unwrap().len(), 16);
        assert_eq!(v["data"][5].as_array().unwrap().len(), 2);
    }

    #[test]
    fn rejects_unphysical_json() {
        let text = r#"{"dims": [2], "data": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}"#;
        assert!(density_from_json(text).is_err());
        assert!(density_from_json("{not json").is_err());
    }

    #[test]
    fn csv_precision() {
        assert_eq!(csv_float(3.271e9), "3.27100000000e9");
        assert_eq!(csv_float(-8e6), "-8.00000000000e6");
        assert_eq!(csv_float(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
