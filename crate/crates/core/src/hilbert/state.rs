use num_complex::Complex64;

use super::eigen::{eigh, CLIP_TOL, HERMITIAN_TOL};
use super::ComplexMatrix;
use crate::error::{Error, Result};

const KET_NORM_TOL: f64 = 1e-12;

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Dimension("empty ket".into()));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn kron(&self, other: &Ket) -> Ket {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ket { amplitudes }
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        m
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Result<Ket> {
        if op.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "operator with {} columns on a {}-dim ket",
                op.cols(),
                self.dim()
            )));
        }
        let out = (0..op.rows())
            .map(|i| {
                (0..op.cols())
                    .map(|j| op[(i, j)] * self.amplitudes[j])
                    .sum()
            })
            .collect();
        Ket::normalized(out)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, unit-trace, positive semi-definite matrix on a tensor product
/// of subsystems. Subsystem 0 is the leftmost (most significant) factor.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all within `1e-10`).
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(
                "subsystem dimensions must be positive".into(),
            ));
        }
        if matrix.rows() != total || matrix.cols() != total {
            return Err(Error::Dimension(format!(
                "dims {dims:?} need a {total}x{total} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > CLIP_TOL {
            return Err(Error::Trace(tr));
        }
        let min = eigh(&matrix)?.values.last().copied().unwrap_or(0.0);
        if min < -CLIP_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { dims, matrix })
    }

    /// Symmetrises and renormalises the trace before validating. Use for
    /// matrices that are physical up to floating-point noise.
    pub fn new_tidy(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let herm = matrix.hermitian_part();
        let tr = herm.trace().re;
        if !(tr > 0.0) {
            return Err(Error::Trace(tr));
        }
        Self::new(dims, herm.scale_real(1.0 / tr))
    }

    pub fn from_ket(dims: Vec<usize>, ket: &Ket) -> Result<Self> {
        Self::new(dims, ket.projector())
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self {
            dims,
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `ρ_A ⊗ ρ_B` with concatenated subsystem lists.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix {
            dims,
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Half the trace norm of the difference.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::Dimension(format!(
                "trace distance between dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(0.5 * super::trace_norm(&(&self.matrix - &other.matrix))?)
    }

    /// `(1 - weight) ρ + weight I/d`
    pub fn depolarize(&self, weight: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(crate::error::invalid(
                "noise",
                format!("{weight} not in [0, 1]"),
            ));
        }
        let mixed = Self::maximally_mixed(self.dims.clone());
        let m = &self.matrix.scale_real(1.0 - weight) + &mixed.matrix.scale_real(weight);
        Ok(DensityMatrix {
            dims: self.dims.clone(),
            matrix: m,
        })
    }

    /// `U ρ U†` for a unitary `U`.
    pub fn conjugate(&self, unitary: &ComplexMatrix) -> Result<DensityMatrix> {
        if unitary.rows() != self.dim() || unitary.cols() != self.dim() {
            return Err(Error::Dimension("unitary does not match state".into()));
        }
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Ok(DensityMatrix {
            dims: self.dims.clone(),
            matrix: m.hermitian_part(),
        })
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        Self { dims, matrix }
    }
}
