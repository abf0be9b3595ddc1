use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::{eigh, ComplexMatrix};

/// Single-qubit pre-measurement rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gate {
    I,
    X90,
    Y90,
    X180,
}

impl Gate {
    pub const ALL: [Gate; 4] = [Gate::I, Gate::X90, Gate::Y90, Gate::X180];

    /// `exp(-i φ σ/2)` for the named axis and angle.
    pub fn unitary(self) -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        let i = |x: f64| Complex64::new(0.0, x);
        let data = match self {
            Gate::I => vec![r(1.0), z, z, r(1.0)],
            Gate::X90 => vec![r(s), i(-s), i(-s), r(s)],
            Gate::Y90 => vec![r(s), r(-s), r(s), r(s)],
            Gate::X180 => vec![z, i(-1.0), i(-1.0), z],
        };
        ComplexMatrix::from_vec(2, 2, data).expect("2x2 gate")
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Gate::I => "I",
            Gate::X90 => "X90",
            Gate::Y90 => "Y90",
            Gate::X180 => "X180",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementSetting {
    pub gate_a: Gate,
    pub gate_b: Gate,
}

impl MeasurementSetting {
    pub fn unitary(&self) -> ComplexMatrix {
        self.gate_a.unitary().kron(&self.gate_b.unitary())
    }
}

/// The 16 gate pairs, `gate_a` major.
pub fn all_settings() -> Vec<MeasurementSetting> {
    Gate::ALL
        .iter()
        .flat_map(|&gate_a| {
            Gate::ALL
                .iter()
                .map(move |&gate_b| MeasurementSetting { gate_a, gate_b })
        })
        .collect()
}

/// `U† |k⟩⟨k| U` for the four outcomes of a setting.
pub fn povm_elements(setting: MeasurementSetting) -> [ComplexMatrix; 4] {
    let u = setting.unitary();
    std::array::from_fn(|k| {
        let mut proj = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                proj[(i, j)] = u[(k, i)].conj() * u[(k, j)];
            }
        }
        proj
    })
}

/// Rank of the Hilbert-Schmidt Gram matrix of all 64 POVM elements; 16 means
/// the settings are informationally complete.
pub fn povm_gram_rank() -> usize {
    let elements: Vec<ComplexMatrix> = all_settings().into_iter().flat_map(povm_elements).collect();
    // Expand each Hermitian element in the real 16-dim operator space.
    let vectors: Vec<Vec<f64>> = elements
        .iter()
        .map(|e| {
            let mut v = Vec::with_capacity(16);
            for i in 0..4 {
                for j in 0..4 {
                    v.push(if i <= j { e[(i, j)].re } else { e[(i, j)].im });
                }
            }
            v
        })
        .collect();
    let mut gram = ComplexMatrix::zeros(16, 16);
    for a in 0..16 {
        for b in 0..16 {
            let s: f64 = vectors.iter().map(|v| v[a] * v[b]).sum();
            gram[(a, b)] = Complex64::new(s, 0.0);
        }
    }
    let values = eigh(&gram).expect("Gram matrix is symmetric").values;
    let top = values[0];
    values.iter().filter(|&&l| l > 1e-10 * top).count()
}
