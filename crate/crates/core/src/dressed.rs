//! Qubit coupled to N harmonic oscillators in the rotating-wave approximation.
//!
//! The ground state `|0⟩|0…0⟩` is decoupled and sits at energy zero. The
//! single-excitation block is spanned by `|1⟩|0…0⟩` and `|0⟩|1_j⟩`, with the
//! bare frequencies on the diagonal and `g/2` linking the qubit state to each
//! oscillator state. All angular frequencies are in rad/s; every `*_hz`
//! quantity is an ordinary frequency.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::hilbert::{eigh, ComplexMatrix};

/// Relative eigenvalue separation below which the dressed level is ambiguous.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Relative bracket width at which the coupling bisection stops.
pub const COUPLING_BISECTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DressedModel {
    omega_q: f64,
    omegas: Vec<f64>,
    g: f64,
}

impl DressedModel {
    /// Zero detunings are allowed here; operations that need them reject
    /// resonance themselves.
    pub fn new(omega_q: f64, omegas: Vec<f64>, g: f64) -> Result<Self> {
        if !(omega_q.is_finite() && omega_q > 0.0) {
            return Err(invalid("omega_q", "qubit frequency must be positive"));
        }
        if omegas.is_empty() {
            return Err(invalid("omegas", "need at least one oscillator"));
        }
        if let Some(w) = omegas.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(invalid(
                "omegas",
                format!("oscillator frequency {w} must be positive"),
            ));
        }
        if !(g.is_finite() && g >= 0.0) {
            return Err(invalid("g", "coupling must be non-negative"));
        }
        Ok(Self { omega_q, omegas, g })
    }

    /// Same model built from ordinary frequencies in Hz.
    pub fn from_hz(f_q: f64, f_oscillators: &[f64], g_hz: f64) -> Result<Self> {
        Self::new(
            2.0 * PI * f_q,
            f_oscillators.iter().map(|f| 2.0 * PI * f).collect(),
            2.0 * PI * g_hz,
        )
    }

    pub fn omega_q(&self) -> f64 {
        self.omega_q
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn oscillator_count(&self) -> usize {
        self.omegas.len()
    }

    pub fn with_coupling(&self, g: f64) -> Result<Self> {
        Self::new(self.omega_q, self.omegas.clone(), g)
    }

    /// `δ_j = ω_q − ω_j`
    pub fn detunings(&self) -> Vec<f64> {
        self.omegas.iter().map(|w| self.omega_q - w).collect()
    }

    pub fn min_abs_detuning(&self) -> f64 {
        self.detunings()
            .iter()
            .map(|d| d.abs())
            .fold(f64::INFINITY, f64::min)
    }

    fn require_detuned(&self) -> Result<Vec<f64>> {
        let deltas = self.detunings();
        match deltas.iter().position(|&d| d == 0.0) {
            Some(index) => Err(Error::Resonance { index }),
            None => Ok(deltas),
        }
    }

    pub fn bare_frequency_hz(&self) -> f64 {
        self.omega_q / (2.0 * PI)
    }
}

/// First excited state `cos(θ/2)|1⟩|0…0⟩ + sin(θ/2)|0⟩|ψ₁⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedState {
    pub theta: f64,
    /// Amplitudes of `|ψ₁⟩` on the single-oscillator excitations.
    pub psi1_coeffs: Vec<Complex64>,
    pub energy_gap_hz: f64,
}

impl DressedState {
    /// Amplitudes in the single-excitation basis `[|1⟩|0…0⟩, |0⟩|1_1⟩, …]`.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let (s, c) = (self.theta / 2.0).sin_cos();
        std::iter::once(Complex64::new(c, 0.0))
            .chain(self.psi1_coeffs.iter().map(|z| z * s))
            .collect()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `(N+1)×(N+1)` single-excitation Hamiltonian (divided by ħ).
pub fn build_single_excitation_hamiltonian(model: &DressedModel) -> ComplexMatrix {
    let n = model.oscillator_count();
    let mut diag = Vec::with_capacity(n + 1);
    diag.push(model.omega_q);
    diag.extend_from_slice(&model.omegas);
    let mut h = ComplexMatrix::from_diag(&diag);
    let coupling = Complex64::new(model.g / 2.0, 0.0);
    for j in 1..=n {
        h[(0, j)] = coupling;
        h[(j, 0)] = coupling;
    }
    h
}

/// Second-order gap `(ω_q + (g²/4) Σ 1/δ_j) / 2π` in Hz.
pub fn perturbative_gap(model: &DressedModel) -> Result<f64> {
    let deltas = model.require_detuned()?;
    let sum: f64 = deltas.iter().map(|d| 1.0 / d).sum();
    Ok((model.omega_q + model.g * model.g / 4.0 * sum) / (2.0 * PI))
}

/// Lowest single-excitation eigenvalue over 2π, in Hz.
pub fn exact_gap(model: &DressedModel) -> Result<f64> {
    let dec = eigh(&build_single_excitation_hamiltonian(model))?;
    let lowest = *dec.values.last().expect("non-empty spectrum");
    Ok(lowest / (2.0 * PI))
}

/// Perturbative qubit amplitude `1 − (g²/8) Σ 1/δ_j²`.
pub fn perturbative_qubit_amplitude(model: &DressedModel) -> Result<f64> {
    let deltas = model.require_detuned()?;
    let sum: f64 = deltas.iter().map(|d| 1.0 / (d * d)).sum();
    Ok(1.0 - model.g * model.g / 8.0 * sum)
}

/// Dressed excited state from exact diagonalisation.
///
/// Picks the eigenvector with the largest `|1⟩|0…0⟩` weight (lowest energy on
/// a tie), fixes its phase so that weight is real positive, and reads `θ` and
/// `c_j` off the amplitudes. `energy_gap_hz` is the selected eigenvalue, which
/// coincides with [`exact_gap`] whenever the qubit-like level is the lowest.
pub fn dressed_excited_state(model: &DressedModel) -> Result<DressedState> {
    let dec = eigh(&build_single_excitation_hamiltonian(model))?;
    let n = dec.values.len();

    let mut best = 0usize;
    let mut best_overlap = -1.0_f64;
    // eigenvalues are descending, so scanning from the back prefers lower energy on ties
    for k in (0..n).rev() {
        let overlap = dec.vectors[(0, k)].norm();
        if overlap > best_overlap + 1e-12 {
            best = k;
            best_overlap = overlap;
        }
    }

    let selected = dec.values[best];
    let gap_tol = DEGENERACY_TOL * model.omega_q;
    if let Some(other) = (0..n).find(|&k| k != best && (dec.values[k] - selected).abs() < gap_tol) {
        return Err(Error::Degenerate(format!(
            "levels {} and {} rad/s are within {gap_tol:e}",
            selected, dec.values[other]
        )));
    }

    let amp0 = dec.vectors[(0, best)];
    let phase = if amp0.norm() > 0.0 {
        amp0.conj() / amp0.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let cos_half = amp0.norm().min(1.0);
    let theta = 2.0 * cos_half.acos();

    let rest: Vec<Complex64> = (1..n).map(|i| dec.vectors[(i, best)] * phase).collect();
    let rest_norm = rest.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi1_coeffs = if rest_norm > 1e-300 {
        rest.into_iter().map(|z| z / rest_norm).collect()
    } else {
        // Decoupled limit: use the first-order direction c_j ∝ 1/δ_j.
        first_order_direction(model)
    };

    Ok(DressedState {
        theta,
        psi1_coeffs,
        energy_gap_hz: selected / (2.0 * PI),
    })
}

fn first_order_direction(model: &DressedModel) -> Vec<Complex64> {
    let deltas = model.detunings();
    let raw: Vec<f64> = if deltas.iter().all(|&d| d != 0.0) {
        deltas.iter().map(|d| 1.0 / d).collect()
    } else {
        vec![1.0; deltas.len()]
    };
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.iter().map(|x| Complex64::new(x / norm, 0.0)).collect()
}

/// Coupling and mixing angle that reproduce an observed frequency shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftFit {
    /// Coupling in rad/s.
    pub g: f64,
    pub theta: f64,
    pub state: DressedState,
}

/// Finds `g` such that `perturbative_gap − ω_q/2π` equals `observed_shift_hz`
/// by bisection on `[0, min|δ_j|/2]`, then returns the matching dressed state.
/// The coupling stored in `template` is ignored.
pub fn theta_from_shift(observed_shift_hz: f64, template: &DressedModel) -> Result<ShiftFit> {
    if !observed_shift_hz.is_finite() {
        return Err(invalid("observed_shift_hz", "must be finite"));
    }
    let deltas = template.require_detuned()?;
    if observed_shift_hz == 0.0 {
        let model = template.with_coupling(0.0)?;
        let state = dressed_excited_state(&model)?;
        return Ok(ShiftFit {
            g: 0.0,
            theta: state.theta,
            state,
        });
    }
    let inverse_sum: f64 = deltas.iter().map(|d| 1.0 / d).sum();
    if inverse_sum == 0.0 || inverse_sum.signum() != observed_shift_hz.signum() {
        return Err(Error::NoCouplingSolution(format!(
            "shift {observed_shift_hz} Hz has the wrong sign for the template detunings"
        )));
    }

    let base = template.bare_frequency_hz();
    let residual = |g: f64| -> Result<f64> {
        let m = template.with_coupling(g)?;
        Ok(perturbative_gap(&m)? - base - observed_shift_hz)
    };
    let mut lo = 0.0;
    let mut hi = 0.5 * template.min_abs_detuning();
    let r_lo = residual(lo)?;
    let r_hi = residual(hi)?;
    if r_lo.signum() == r_hi.signum() {
        return Err(Error::NoCouplingSolution(format!(
            "shift {observed_shift_hz} Hz exceeds the reach of g <= min|δ|/2"
        )));
    }
    while hi - lo > COUPLING_BISECTION_TOL * hi {
        let mid = 0.5 * (lo + hi);
        let r_mid = residual(mid)?;
        if r_mid.signum() == r_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g = 0.5 * (lo + hi);
    let state = dressed_excited_state(&template.with_coupling(g)?)?;
    Ok(ShiftFit {
        g,
        theta: state.theta,
        state,
    })
}
