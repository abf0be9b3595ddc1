//! Doubled negativities and the π-tangle of a qubit A / qubit B / tardigrade
//! state. Subsystems are A = 0, B = 1, T = 2.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{partial_trace, partial_transpose_many, trace_norm, DensityMatrix, CLIP_TOL};
use crate::tripartite::{expand, TripartiteState};

pub const A: usize = 0;
pub const B: usize = 1;
pub const T: usize = 2;

/// Default number of θ samples on `[0, π]`; odd so `π/2` is included.
pub const DEFAULT_SWEEP_POINTS: usize = 101;

/// `‖ρ^{T_X}‖₁ − 1` for the cut `X | rest`. Values within `1e-10` below zero
/// are reported as zero.
pub fn negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    let n = rho.dims().len();
    let mut cut: Vec<usize> = cut.to_vec();
    cut.sort_unstable();
    cut.dedup();
    if cut.is_empty() || cut.len() >= n {
        return Err(Error::InvalidSelection(format!(
            "cut {cut:?} must be a non-empty proper subset of {n} subsystems"
        )));
    }
    if let Some(&bad) = cut.iter().find(|&&k| k >= n) {
        return Err(Error::SubsystemOutOfRange {
            index: bad,
            count: n,
        });
    }
    let pt = partial_transpose_many(rho, &cut)?;
    let value = trace_norm(&pt)? - 1.0;
    Ok(clip(value))
}

fn clip(value: f64) -> f64 {
    if (-CLIP_TOL..0.0).contains(&value) {
        0.0
    } else {
        value.max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub n_a_bc: f64,
    pub n_b_ac: f64,
    pub n_c_ab: f64,
    pub n_ab: f64,
    pub n_ac: f64,
    pub n_bc: f64,
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_c: f64,
    /// `(π_A + π_B + π_C)/3`, possibly slightly negative for mixed states.
    pub pi_tangle: f64,
}

impl EntanglementReport {
    /// π-tangle floored at zero.
    pub fn pi_tangle_floored(&self) -> f64 {
        self.pi_tangle.max(0.0)
    }

    pub fn negativities(&self) -> [f64; 6] {
        [
            self.n_a_bc,
            self.n_b_ac,
            self.n_c_ab,
            self.n_ab,
            self.n_ac,
            self.n_bc,
        ]
    }
}

/// All six negativities and residual tangles of a three-qubit state in
/// lexicographic order.
pub fn report_for(rho: &DensityMatrix) -> Result<EntanglementReport> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::Dimension(format!(
            "π-tangle needs dims [2, 2, 2], got {:?}",
            rho.dims()
        )));
    }
    let n_a_bc = negativity(rho, &[A])?;
    let n_b_ac = negativity(rho, &[B])?;
    let n_c_ab = negativity(rho, &[T])?;
    let pair = |keep: [usize; 2]| -> Result<f64> {
        let reduced = partial_trace(rho, &keep)?;
        negativity(&reduced, &[0])
    };
    let n_ab = pair([A, B])?;
    let n_ac = pair([A, T])?;
    let n_bc = pair([B, T])?;

    let pi_a = n_a_bc.powi(2) - n_ab.powi(2) - n_ac.powi(2);
    let pi_b = n_b_ac.powi(2) - n_ab.powi(2) - n_bc.powi(2);
    let pi_c = n_c_ab.powi(2) - n_ac.powi(2) - n_bc.powi(2);
    Ok(EntanglementReport {
        n_a_bc,
        n_b_ac,
        n_c_ab,
        n_ab,
        n_ac,
        n_bc,
        pi_a,
        pi_b,
        pi_c,
        pi_tangle: (pi_a + pi_b + pi_c) / 3.0,
    })
}

pub fn pi_tangle(state: &TripartiteState) -> Result<EntanglementReport> {
    report_for(&state.to_lexicographic()?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub report: EntanglementReport,
}

/// Expands `rho4` at every θ and reports all quantifiers, ordered by θ.
/// Points are evaluated in parallel; results do not depend on scheduling.
pub fn theta_sweep(rho4: &DensityMatrix, thetas: &[f64]) -> Result<Vec<SweepRow>> {
    let mut rows = thetas
        .par_iter()
        .map(|&theta| {
            let state = expand(rho4, theta)?;
            Ok(SweepRow {
                theta,
                report: pi_tangle(&state)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    Ok(rows)
}

/// `points` evenly spaced angles from `start` to `end` inclusive.
pub fn theta_grid(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        end
                    } else if 2 * i == points - 1 {
                        0.5 * (start + end)
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{ComplexMatrix, Ket};
    use crate::tomography::ideal_density;
    use std::f64::consts::PI;

    fn bell() -> DensityMatrix {
        DensityMatrix::from_ket(vec![2, 2], &Ket::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap())
            .unwrap()
    }

    #[test]
    fn product_state_has_no_negativity() {
        let a = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_real_rows(&[&[0.6, 0.3], &[0.3, 0.4]]).unwrap(),
        )
        .unwrap();
        let ab = a.tensor(&a);
        assert_eq!(negativity(&ab, &[0]).unwrap(), 0.0);
    }

    #[test]
    fn bell_negativity_is_one() {
        assert!((negativity(&bell(), &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((negativity(&bell(), &[1]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_cuts() {
        assert!(negativity(&bell(), &[]).is_err());
        assert!(negativity(&bell(), &[0, 1]).is_err());
        assert!(negativity(&bell(), &[4]).is_err());
    }

    #[test]
    fn ghz_tangle() {
        let mut amps = [0.0; 8];
        amps[0] = 1.0;
        amps[7] = 1.0;
        let ghz = DensityMatrix::from_ket(vec![2, 2, 2], &Ket::from_real(&amps).unwrap()).unwrap();
        let r = report_for(&ghz).unwrap();
        for n in [r.n_ab, r.n_ac, r.n_bc] {
            assert!(n < 1e-12);
        }
        for n in [r.n_a_bc, r.n_b_ac, r.n_c_ab] {
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert!((r.pi_tangle - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_endpoints_for_ideal_input() {
        let rows = theta_sweep(&ideal_density(), &[0.0, PI]).unwrap();
        let start = rows[0].report;
        assert!(start.n_c_ab.abs() < 1e-12);
        assert!(start.pi_tangle.abs() < 1e-10);
        let end = rows[1].report;
        assert!(end.n_b_ac.abs() < 1e-12);
        assert!((end.n_a_bc - 1.0).abs() < 1e-12);
        assert!((end.n_ac - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_includes_half_pi() {
        let g = theta_grid(0.0, PI, DEFAULT_SWEEP_POINTS);
        assert_eq!(g.len(), 101);
        assert_eq!(g[50], PI / 2.0);
        assert_eq!(*g.last().unwrap(), PI);
    }
}
