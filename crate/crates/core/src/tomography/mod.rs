//! Two-qubit state tomography over the `{|0g⟩, |0e⟩, |1g⟩, |1e⟩}` subspace:
//! ideal state preparation, synthetic counts for 16 local-rotation settings,
//! maximum-likelihood reconstruction and Jozsa fidelity.

mod mle;
mod settings;

pub use mle::{mle_from_observations, mle_reconstruct, MleOptions, MleResult};
pub use settings::{all_settings, povm_elements, povm_gram_rank, Gate, MeasurementSetting};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hilbert::{eigh, ComplexMatrix, DensityMatrix, Ket, NEGATIVE_EIGEN_TOL};

/// Outcome labels in count order.
pub const OUTCOMES: [&str; 4] = ["00", "01", "10", "11"];

/// `(|0e⟩ + |1g⟩)/√2`: qubit B–T prepared in `|e⟩`, then H on A and CNOT
/// with A as control.
pub fn ideal_state() -> Ket {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).expect("2x2");
    let not = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2");
    let cnot = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4");
    let start = Ket::basis(4, 0);
    let prepare = ComplexMatrix::identity(2).kron(&not);
    let layer = hadamard.kron(&ComplexMatrix::identity(2));
    start
        .apply(&prepare)
        .and_then(|k| k.apply(&layer))
        .and_then(|k| k.apply(&cnot))
        .expect("unitary circuit on a normalized ket")
}

pub fn ideal_density() -> DensityMatrix {
    DensityMatrix::from_ket(vec![2, 2], &ideal_state()).expect("pure state")
}

/// Counts for one setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SettingCounts {
    pub gate_a: Gate,
    pub gate_b: Gate,
    pub counts: [u64; 4],
}

impl SettingCounts {
    pub fn setting(&self) -> MeasurementSetting {
        MeasurementSetting {
            gate_a: self.gate_a,
            gate_b: self.gate_b,
        }
    }
}

/// Outcome counts for all 16 settings, serialised as
/// `{"shots": n, "settings": [{"gate_a", "gate_b", "counts": [n00, n01, n10, n11]}, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TomographyRecord {
    pub shots: u64,
    pub settings: Vec<SettingCounts>,
}

impl TomographyRecord {
    pub fn new(shots: u64, settings: Vec<SettingCounts>) -> Result<Self> {
        let record = Self { shots, settings };
        record.validate()?;
        Ok(record)
    }

    /// Checks per-setting totals and that all 16 gate pairs appear once.
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(invalid("shots", "must be at least 1"));
        }
        for s in &self.settings {
            let total: u64 = s.counts.iter().sum();
            if total != self.shots {
                return Err(invalid(
                    "counts",
                    format!(
                        "setting ({}, {}) sums to {total}, expected {}",
                        s.gate_a, s.gate_b, self.shots
                    ),
                ));
            }
        }
        let mut seen: Vec<MeasurementSetting> = self.settings.iter().map(|s| s.setting()).collect();
        seen.sort();
        seen.dedup();
        if seen.len() != self.settings.len() || seen != all_settings() {
            return Err(invalid(
                "settings",
                "record must contain each of the 16 gate pairs exactly once",
            ));
        }
        Ok(())
    }

    pub fn observations(&self) -> Vec<Observation> {
        self.settings
            .iter()
            .map(|s| Observation {
                setting: s.setting(),
                counts: s.counts.map(|c| c as f64),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: Self = serde_json::from_str(text)
            .map_err(|e| invalid("record", format!("malformed tomography JSON: {e}")))?;
        record.validate()?;
        Ok(record)
    }
}

/// Possibly fractional counts for one setting; expected (infinite-shot)
/// counts are not integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub setting: MeasurementSetting,
    pub counts: [f64; 4],
}

fn outcome_probabilities(rho: &DensityMatrix, setting: MeasurementSetting) -> [f64; 4] {
    let u = setting.unitary();
    let rotated = &(&u * rho.matrix()) * &u.adjoint();
    let mut p = [0.0; 4];
    for (k, slot) in p.iter_mut().enumerate() {
        *slot = rotated[(k, k)].re.max(0.0);
    }
    let total: f64 = p.iter().sum();
    p.map(|x| x / total)
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::Dimension(format!(
            "tomography needs dims [2, 2], got {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Expected counts `shots · p` for every setting, after depolarising with
/// weight `noise`.
pub fn expected_counts(rho: &DensityMatrix, shots: f64, noise: f64) -> Result<Vec<Observation>> {
    check_two_qubit(rho)?;
    let noisy = rho.depolarize(noise)?;
    Ok(all_settings()
        .into_iter()
        .map(|setting| Observation {
            setting,
            counts: outcome_probabilities(&noisy, setting).map(|p| p * shots),
        })
        .collect())
}

/// Multinomial samples of the 16 settings. Deterministic for a given seed.
pub fn simulate_counts(
    rho: &DensityMatrix,
    shots: u64,
    seed: u64,
    noise: f64,
) -> Result<TomographyRecord> {
    check_two_qubit(rho)?;
    if shots == 0 {
        return Err(invalid("shots", "must be at least 1"));
    }
    let noisy = rho.depolarize(noise)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let settings = all_settings()
        .into_iter()
        .map(|setting| {
            let p = outcome_probabilities(&noisy, setting);
            let counts = sample_multinomial(&mut rng, shots, &p);
            SettingCounts {
                gate_a: setting.gate_a,
                gate_b: setting.gate_b,
                counts,
            }
        })
        .collect();
    TomographyRecord::new(shots, settings)
}

/// Conditional-binomial multinomial draw.
fn sample_multinomial(rng: &mut ChaCha8Rng, shots: u64, p: &[f64; 4]) -> [u64; 4] {
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut mass = 1.0;
    for k in 0..3 {
        if remaining == 0 {
            break;
        }
        let q = if mass > 0.0 {
            (p[k] / mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let n = Binomial::new(remaining, q)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        counts[k] = n;
        remaining -= n;
        mass -= p[k];
    }
    counts[3] = remaining;
    counts
}

/// Jozsa fidelity `(Tr √(√ρ σ √ρ))²`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dims() != sigma.dims() {
        return Err(Error::Dimension(format!(
            "fidelity between dims {:?} and {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    let sqrt_rho = denoised_sqrt(rho.matrix())?;
    let inner = &(&sqrt_rho * sigma.matrix()) * &sqrt_rho;
    let tr: f64 = denoised_sqrt_eigenvalues(&inner.hermitian_part())?
        .iter()
        .sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

/// Eigenvalues at round-off level relative to the largest one count as zero;
/// otherwise `√ε` noise from a rank-deficient input leaks into the fidelity.
const SPECTRAL_NOISE: f64 = 64.0 * f64::EPSILON;

fn denoised_sqrt_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let values = eigh(m)?.values;
    let top = values.first().copied().unwrap_or(0.0).max(0.0);
    check_psd(&values)?;
    Ok(values
        .iter()
        .map(|&l| {
            if l > SPECTRAL_NOISE * top {
                l.sqrt()
            } else {
                0.0
            }
        })
        .collect())
}

fn denoised_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dec = eigh(m)?;
    check_psd(&dec.values)?;
    let top = dec.values.first().copied().unwrap_or(0.0).max(0.0);
    Ok(dec.reassemble(|l| {
        if l > SPECTRAL_NOISE * top {
            l.sqrt()
        } else {
            0.0
        }
    }))
}

fn check_psd(values: &[f64]) -> Result<()> {
    match values.last() {
        Some(&min) if min < -NEGATIVE_EIGEN_TOL => Err(Error::NotPositive(min)),
        _ => Ok(()),
    }
}

/// `⟨ψ|σ|ψ⟩`, the fidelity against a pure state.
pub fn pure_fidelity(psi: &Ket, sigma: &DensityMatrix) -> Result<f64> {
    if psi.dim() != sigma.dim() {
        return Err(Error::Dimension("ket and state differ in dimension".into()));
    }
    let v: Complex64 = sigma.matrix().expectation(psi.amplitudes());
    Ok(v.re.clamp(0.0, 1.0))
}
