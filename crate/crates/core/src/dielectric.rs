//! Transmon level structure and the frequency shift caused by a dielectric
//! body that raises the shunt capacitance.
//!
//! `ħω = √(E_c E_j) − E_c` with `E_c = e²/2C`. A dielectric of relative
//! permittivity `ε_r` that affects a fraction `p` of the shunt capacitance
//! gives `C' = C (1 + p (ε_r − 1))`; `p = 1` is full replacement `C' = ε_r C`.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// Elementary charge in coulombs (exact, SI 2019).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054571817e-34;

const PARTICIPATION_BISECTION_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmonParams {
    /// Charging energy in joules.
    pub e_c: f64,
    /// Josephson energy in joules.
    pub e_j: f64,
    /// Anharmonicity in rad/s.
    pub delta_anharm: f64,
    /// Shunt capacitance in farads.
    pub capacitance: f64,
}

pub fn charging_energy(capacitance: f64) -> f64 {
    ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * capacitance)
}

impl TransmonParams {
    pub fn from_capacitance(capacitance: f64, e_j: f64, delta_anharm: f64) -> Result<Self> {
        if !(capacitance.is_finite() && capacitance > 0.0) {
            return Err(invalid("capacitance", "must be positive"));
        }
        if !delta_anharm.is_finite() {
            return Err(invalid("delta_anharm", "must be finite"));
        }
        let p = Self {
            e_c: charging_energy(capacitance),
            e_j,
            delta_anharm,
            capacitance,
        };
        p.check_regime()?;
        Ok(p)
    }

    /// Chooses `E_j` so that the qubit frequency equals `f0_hz` for the given
    /// capacitance: `E_j = (hf₀ + E_c)² / E_c`.
    pub fn from_frequency(f0_hz: f64, capacitance: f64, delta_anharm: f64) -> Result<Self> {
        if !(f0_hz.is_finite() && f0_hz > 0.0) {
            return Err(invalid("f0", "frequency must be positive"));
        }
        if !(capacitance.is_finite() && capacitance > 0.0) {
            return Err(invalid("capacitance", "must be positive"));
        }
        let e_c = charging_energy(capacitance);
        let hbar_omega = HBAR * 2.0 * PI * f0_hz;
        let e_j = (hbar_omega + e_c).powi(2) / e_c;
        Self::from_capacitance(capacitance, e_j, delta_anharm)
    }

    /// Rebuilds the parameters with a new capacitance, keeping `E_j` and `δ`.
    pub fn with_capacitance(&self, capacitance: f64) -> Result<Self> {
        Self::from_capacitance(capacitance, self.e_j, self.delta_anharm)
    }

    fn check_regime(&self) -> Result<()> {
        if !(self.e_c > 0.0 && self.e_c.is_finite()) {
            return Err(Error::Regime(format!(
                "E_c = {} J must be positive",
                self.e_c
            )));
        }
        if !(self.e_j.is_finite() && self.e_j > self.e_c) {
            return Err(Error::Regime(format!(
                "need E_j > E_c, got E_j = {:e} J, E_c = {:e} J",
                self.e_j, self.e_c
            )));
        }
        Ok(())
    }
}

/// Qubit frequency in Hz.
pub fn qubit_frequency(p: &TransmonParams) -> Result<f64> {
    p.check_regime()?;
    Ok(((p.e_c * p.e_j).sqrt() - p.e_c) / HBAR / (2.0 * PI))
}

/// Level frequencies `ω_j/2π` for `j = 0..=j_max`, with
/// `ω_j = (ω − δ/2) j + (δ/2) j²`.
pub fn transmon_levels(p: &TransmonParams, j_max: usize) -> Result<Vec<f64>> {
    if j_max < 1 {
        return Err(invalid("j_max", "need at least one excited level"));
    }
    let omega = 2.0 * PI * qubit_frequency(p)?;
    let half = p.delta_anharm / 2.0;
    Ok((0..=j_max)
        .map(|j| {
            let j = j as f64;
            ((omega - half) * j + half * j * j) / (2.0 * PI)
        })
        .collect())
}

fn check_scan_inputs(eps_r: f64, participation: f64) -> Result<()> {
    if !(eps_r.is_finite() && eps_r >= 1.0) {
        return Err(invalid("eps_r", format!("{eps_r} must be >= 1")));
    }
    if !(0.0..=1.0).contains(&participation) {
        return Err(invalid(
            "participation",
            format!("{participation} not in [0, 1]"),
        ));
    }
    Ok(())
}

pub fn effective_capacitance(capacitance: f64, eps_r: f64, participation: f64) -> f64 {
    capacitance * (1.0 + participation * (eps_r - 1.0))
}

/// Qubit frequency (Hz) after the dielectric raises the shunt capacitance.
pub fn shifted_frequency(p: &TransmonParams, eps_r: f64, participation: f64) -> Result<f64> {
    check_scan_inputs(eps_r, participation)?;
    let c_eff = effective_capacitance(p.capacitance, eps_r, participation);
    qubit_frequency(&p.with_capacitance(c_eff)?)
}

/// Participation that makes `shifted_frequency(p, eps_r, ·) − f0` equal
/// `observed_shift` (both in Hz). `f0` must be the frequency of `p`.
pub fn fit_participation(
    f0: f64,
    observed_shift: f64,
    eps_r: f64,
    p: &TransmonParams,
) -> Result<f64> {
    let own = qubit_frequency(p)?;
    if ((own - f0) / f0).abs() > 1e-9 {
        return Err(invalid(
            "f0",
            format!("{f0} Hz does not match the transmon frequency {own} Hz"),
        ));
    }
    if !(eps_r.is_finite() && eps_r > 1.0) {
        return Err(invalid("eps_r", format!("{eps_r} must be > 1")));
    }
    if observed_shift == 0.0 {
        return Ok(0.0);
    }
    if !(observed_shift < 0.0) {
        return Err(Error::NoParticipationSolution(format!(
            "shift {observed_shift} Hz must be negative"
        )));
    }
    let residual =
        |x: f64| -> Result<f64> { Ok(shifted_frequency(p, eps_r, x)? - f0 - observed_shift) };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let r_lo = residual(lo)?;
    let r_hi = residual(hi)?;
    if r_lo.signum() == r_hi.signum() {
        return Err(Error::NoParticipationSolution(format!(
            "full participation at eps_r = {eps_r} only reaches {:.6e} Hz",
            r_hi + observed_shift
        )));
    }
    for _ in 0..PARTICIPATION_BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * mid.max(f64::MIN_POSITIVE) {
            break;
        }
        let r = residual(mid)?;
        if r == 0.0 {
            return Ok(mid);
        }
        if r.signum() == r_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Permittivities swept at a fixed participation.
#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityScan {
    pub eps_values: Vec<f64>,
    pub participation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub eps_r: f64,
    pub frequency_hz: f64,
    pub shift_hz: f64,
}

impl PermittivityScan {
    pub fn new(eps_values: Vec<f64>, participation: f64) -> Result<Self> {
        for &e in &eps_values {
            check_scan_inputs(e, participation)?;
        }
        Ok(Self {
            eps_values,
            participation,
        })
    }

    /// Evenly spaced permittivities on `[eps_min, eps_max]`.
    pub fn linspace(eps_min: f64, eps_max: f64, points: usize, participation: f64) -> Result<Self> {
        if points < 2 {
            return Err(invalid("points", "need at least two points"));
        }
        if !(eps_max >= eps_min) {
            return Err(invalid("eps_max", "must be >= eps_min"));
        }
        let step = (eps_max - eps_min) / (points - 1) as f64;
        Self::new(
            (0..points).map(|i| eps_min + step * i as f64).collect(),
            participation,
        )
    }

    pub fn evaluate(&self, p: &TransmonParams) -> Result<Vec<ScanPoint>> {
        let f0 = qubit_frequency(p)?;
        self.eps_values
            .iter()
            .map(|&eps_r| {
                let f = shifted_frequency(p, eps_r, self.participation)?;
                Ok(ScanPoint {
                    eps_r,
                    frequency_hz: f,
                    shift_hz: f - f0,
                })
            })
            .collect()
    }
}
