//! Expansion of a two-qubit state over `{|0g⟩, |0e⟩, |1g⟩, |1e⟩}` into the
//! qubit A ⊗ qubit B ⊗ tardigrade space, using `|g⟩ = |0,0̲⟩` and
//! `|e⟩ = cos(θ/2)|1,0̲⟩ + sin(θ/2)|0,1̲⟩`.
//!
//! [`TripartiteState`] stores the 8×8 matrix in the display order
//! `|000⟩, |010⟩, |001⟩, |011⟩, |100⟩, |110⟩, |101⟩, |111⟩` (labels A, B, T).
//! [`TripartiteState::to_lexicographic`] permutes it into the usual
//! `4a + 2b + t` order used by the partial operations in `hilbert`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::hilbert::{ComplexMatrix, DensityMatrix};

/// Lexicographic index of each display-order slot.
pub const DISPLAY_TO_LEX: [usize; 8] = [0, 2, 1, 3, 4, 6, 5, 7];
/// Display-order slots that can never be populated (`|011⟩`, `|111⟩`).
pub const FORBIDDEN_SLOTS: [usize; 2] = [3, 7];
/// Number of entries forced to zero by the forbidden slots.
pub const STRUCTURAL_ZEROS: usize = 28;
const ZERO_TOL: f64 = 1e-12;
const ROUTE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteState {
    pub theta: f64,
    rho_abt: ComplexMatrix,
}

/// Row factor of each display slot: which 4×4 index it draws from and the
/// trigonometric weight (`None` for forbidden slots).
fn slot_source(slot: usize, c: f64, s: f64) -> Option<(usize, f64)> {
    match slot {
        0 => Some((0, 1.0)), // |000⟩ ← |0g⟩
        1 => Some((1, c)),   // |010⟩ ← |0e⟩ cos
        2 => Some((1, s)),   // |001⟩ ← |0e⟩ sin
        3 => None,           // |011⟩
        4 => Some((2, 1.0)), // |100⟩ ← |1g⟩
        5 => Some((3, c)),   // |110⟩ ← |1e⟩ cos
        6 => Some((3, s)),   // |101⟩ ← |1e⟩ sin
        7 => None,           // |111⟩
        _ => unreachable!(),
    }
}

fn check_input(rho: &DensityMatrix, theta: f64) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::Dimension(format!(
            "expansion needs a [2, 2] state, got {:?}",
            rho.dims()
        )));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid("theta", format!("{theta} not in [0, π]")));
    }
    Ok(())
}

/// Display-order matrix from the closed-form entries `ρ_ij · w_i · w_j`.
pub fn expand_entrywise(rho: &DensityMatrix, theta: f64) -> Result<ComplexMatrix> {
    check_input(rho, theta)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(8, 8);
    for row in 0..8 {
        let Some((i, wi)) = slot_source(row, c, s) else {
            continue;
        };
        for col in 0..8 {
            let Some((j, wj)) = slot_source(col, c, s) else {
                continue;
            };
            out[(row, col)] = m[(i, j)] * (wi * wj);
        }
    }
    Ok(out)
}

/// The 8×4 isometry `V = I_A ⊗ W` in lexicographic order, where `W` maps
/// `|g⟩ → |00⟩` and `|e⟩ → cos(θ/2)|10⟩ + sin(θ/2)|01⟩` on B ⊗ T.
pub fn isometry(theta: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let mut w = ComplexMatrix::zeros(4, 2);
    w[(0, 0)] = Complex64::new(1.0, 0.0);
    w[(2, 1)] = Complex64::new(c, 0.0);
    w[(1, 1)] = Complex64::new(s, 0.0);
    ComplexMatrix::identity(2).kron(&w)
}

/// Lexicographic-order matrix `V ρ V†`.
pub fn expand_isometry(rho: &DensityMatrix, theta: f64) -> Result<ComplexMatrix> {
    check_input(rho, theta)?;
    let v = isometry(theta);
    Ok(&(&v * rho.matrix()) * &v.adjoint())
}

pub fn display_to_lexicographic(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(8, 8);
    for r in 0..8 {
        for c in 0..8 {
            out[(DISPLAY_TO_LEX[r], DISPLAY_TO_LEX[c])] = m[(r, c)];
        }
    }
    out
}

pub fn lexicographic_to_display(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(8, 8);
    for r in 0..8 {
        for c in 0..8 {
            out[(r, c)] = m[(DISPLAY_TO_LEX[r], DISPLAY_TO_LEX[c])];
        }
    }
    out
}

/// Expands `rho` at mixing angle `theta`, building the matrix by both routes
/// and refusing if they disagree by more than `1e-12` in any entry.
pub fn expand(rho: &DensityMatrix, theta: f64) -> Result<TripartiteState> {
    let entrywise = expand_entrywise(rho, theta)?;
    let via_isometry = lexicographic_to_display(&expand_isometry(rho, theta)?);
    let gap = entrywise.max_abs_diff(&via_isometry);
    if gap > ROUTE_TOL {
        return Err(Error::Dimension(format!(
            "entry formula and isometry disagree by {gap:e}"
        )));
    }
    let state = TripartiteState {
        theta,
        rho_abt: entrywise,
    };
    // validates physicality of the embedded state
    state.to_lexicographic()?;
    Ok(state)
}

impl TripartiteState {
    /// Wraps a display-order matrix without checking the zero pattern.
    pub fn from_display_matrix(theta: f64, rho_abt: ComplexMatrix) -> Result<Self> {
        if rho_abt.rows() != 8 || rho_abt.cols() != 8 {
            return Err(Error::Dimension("tripartite state must be 8x8".into()));
        }
        Ok(Self { theta, rho_abt })
    }

    /// Display-order matrix.
    pub fn display_matrix(&self) -> &ComplexMatrix {
        &self.rho_abt
    }

    /// The same state as a `[2, 2, 2]` density matrix in lexicographic order.
    pub fn to_lexicographic(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(vec![2, 2, 2], display_to_lexicographic(&self.rho_abt))
    }

    pub fn zero_count(&self) -> usize {
        self.rho_abt
            .data()
            .iter()
            .filter(|z| z.norm() < ZERO_TOL)
            .count()
    }
}

/// True iff every entry in the `|011⟩` and `|111⟩` rows and columns is below `1e-12`.
pub fn verify_zero_pattern(state: &TripartiteState) -> bool {
    let m = &state.rho_abt;
    (0..8).all(|k| {
        FORBIDDEN_SLOTS
            .iter()
            .all(|&f| m[(f, k)].norm() < ZERO_TOL && m[(k, f)].norm() < ZERO_TOL)
    })
}
