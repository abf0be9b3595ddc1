//! Maximum-likelihood reconstruction with `ρ = T†T / Tr(T†T)`, `T` lower
//! triangular with a real diagonal (16 real parameters), minimised by L-BFGS
//! with an analytic gradient and Armijo backtracking.

use std::collections::VecDeque;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::settings::povm_elements;
use super::{Observation, TomographyRecord};
use crate::error::{invalid, Result};
use crate::hilbert::{ComplexMatrix, DensityMatrix};

const DIM: usize = 4;
const PARAMS: usize = 16;
const PROBABILITY_FLOOR: f64 = 1e-12;
const RESTART_SEED: u64 = 0x5eed_7011;

#[derive(Debug, Clone)]
pub struct MleOptions {
    pub max_iterations: usize,
    /// Perturbed restarts in addition to the maximally mixed start.
    pub restarts: usize,
    pub restart_spread: f64,
    pub history: usize,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            restarts: 3,
            restart_spread: 0.2,
            history: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MleResult {
    pub rho: DensityMatrix,
    /// `Σ n ln p` at the optimum.
    pub log_likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective value after every accepted step of the winning run.
    pub objective_history: Vec<f64>,
}

pub fn mle_reconstruct(record: &TomographyRecord) -> Result<MleResult> {
    record.validate()?;
    mle_from_observations(&record.observations(), &MleOptions::default())
}

/// One measured outcome: its POVM element and (possibly fractional) count.
struct Term {
    povm: ComplexMatrix,
    count: f64,
    shots: f64,
}

struct Objective {
    terms: Vec<Term>,
    /// Weight of the `(Tr A − 1)²` scale penalty; does not affect `ρ`.
    scale_weight: f64,
}

fn lower_triangular(t: &[f64]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        m[(i, i)] = Complex64::new(t[i], 0.0);
    }
    let mut k = DIM;
    for i in 1..DIM {
        for j in 0..i {
            m[(i, j)] = Complex64::new(t[k], t[k + 1]);
            k += 2;
        }
    }
    m
}

fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    acc
}

impl Objective {
    fn new(observations: &[Observation]) -> Self {
        let mut terms = Vec::with_capacity(observations.len() * 4);
        let mut total = 0.0;
        for obs in observations {
            let shots: f64 = obs.counts.iter().sum();
            total += shots;
            for (povm, &count) in povm_elements(obs.setting).into_iter().zip(&obs.counts) {
                terms.push(Term { povm, count, shots });
            }
        }
        Self {
            terms,
            scale_weight: total.max(1.0),
        }
    }

    fn state(t: &[f64]) -> (ComplexMatrix, f64) {
        let tm = lower_triangular(t);
        let a = &tm.adjoint() * &tm;
        let s = a.trace().re;
        (a, s)
    }

    /// Poissonian negative log-likelihood `Σ [N p − n ln(N p)]` plus the scale penalty.
    fn value(&self, t: &[f64]) -> f64 {
        let (a, s) = Self::state(t);
        if !(s > 0.0) {
            return f64::INFINITY;
        }
        let rho = a.scale_real(1.0 / s);
        let mut f = 0.0;
        for term in &self.terms {
            let p = trace_product(&term.povm, &rho).max(PROBABILITY_FLOOR);
            f += term.shots * p;
            if term.count > 0.0 {
                f -= term.count * (term.shots * p).ln();
            }
        }
        f + self.scale_weight * (s - 1.0).powi(2)
    }

    fn value_and_gradient(&self, t: &[f64]) -> (f64, [f64; PARAMS]) {
        let tm = lower_triangular(t);
        let a = &tm.adjoint() * &tm;
        let s = a.trace().re;
        let rho = a.scale_real(1.0 / s);

        let mut f = 0.0;
        let mut g_rho = ComplexMatrix::zeros(DIM, DIM);
        for term in &self.terms {
            let raw = trace_product(&term.povm, &rho);
            let p = raw.max(PROBABILITY_FLOOR);
            f += term.shots * p;
            let mut weight = term.shots;
            if term.count > 0.0 {
                f -= term.count * (term.shots * p).ln();
                weight -= term.count / p;
            }
            g_rho = &g_rho + &term.povm.scale_real(weight);
        }
        f += self.scale_weight * (s - 1.0).powi(2);

        // d/dA of f(A/s) plus the penalty
        let shift = trace_product(&g_rho, &rho);
        let mut g_a = g_rho.scale_real(1.0 / s);
        let diag = -shift / s + 2.0 * self.scale_weight * (s - 1.0);
        for i in 0..DIM {
            g_a[(i, i)] += Complex64::new(diag, 0.0);
        }
        // δf = 2 Re Tr(G_A T† δT)
        let m = &g_a * &tm.adjoint();
        let mut grad = [0.0; PARAMS];
        for i in 0..DIM {
            grad[i] = 2.0 * m[(i, i)].re;
        }
        let mut k = DIM;
        for i in 1..DIM {
            for j in 0..i {
                grad[k] = 2.0 * m[(j, i)].re;
                grad[k + 1] = -2.0 * m[(j, i)].im;
                k += 2;
            }
        }
        (f, grad)
    }

    fn log_likelihood(&self, rho: &ComplexMatrix) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.count > 0.0)
            .map(|t| t.count * trace_product(&t.povm, rho).max(PROBABILITY_FLOOR).ln())
            .sum()
    }
}

struct Run {
    params: [f64; PARAMS],
    value: f64,
    iterations: usize,
    converged: bool,
    history: Vec<f64>,
}

fn dot(a: &[f64; PARAMS], b: &[f64; PARAMS]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn lbfgs(objective: &Objective, start: [f64; PARAMS], options: &MleOptions) -> Run {
    let mut x = start;
    let (mut f, mut g) = objective.value_and_gradient(&x);
    let mut memory: VecDeque<([f64; PARAMS], [f64; PARAMS], f64)> = VecDeque::new();
    let mut history = vec![f];
    let mut stalled = 0;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < options.max_iterations {
        let gnorm = dot(&g, &g).sqrt();
        if gnorm <= 1e-10 * (1.0 + f.abs()) {
            converged = true;
            break;
        }

        // two-loop recursion
        let mut q = g;
        let mut alphas = Vec::with_capacity(memory.len());
        for (s, y, rho) in memory.iter().rev() {
            let alpha = rho * dot(s, &q);
            for i in 0..PARAMS {
                q[i] -= alpha * y[i];
            }
            alphas.push(alpha);
        }
        let gamma = memory
            .back()
            .map(|(s, y, _)| dot(s, y) / dot(y, y))
            .unwrap_or(1.0 / gnorm);
        for v in q.iter_mut() {
            *v *= gamma;
        }
        for ((s, y, rho), alpha) in memory.iter().zip(alphas.iter().rev()) {
            let beta = rho * dot(y, &q);
            for i in 0..PARAMS {
                q[i] += s[i] * (alpha - beta);
            }
        }
        let mut direction = q.map(|v| -v);
        let mut slope = dot(&direction, &g);
        if !(slope < 0.0) {
            memory.clear();
            direction = g.map(|v| -v / gnorm);
            slope = dot(&direction, &g);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = x;
            for i in 0..PARAMS {
                trial[i] += step * direction[i];
            }
            let ft = objective.value(&trial);
            if ft.is_finite() && ft <= f + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        let Some((x_new, _)) = accepted else {
            // no descent possible at machine precision
            converged = memory.is_empty();
            if converged {
                break;
            }
            memory.clear();
            continue;
        };
        let (f_new, g_new) = objective.value_and_gradient(&x_new);
        let s: [f64; PARAMS] = std::array::from_fn(|i| x_new[i] - x[i]);
        let y: [f64; PARAMS] = std::array::from_fn(|i| g_new[i] - g[i]);
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            if memory.len() == options.history {
                memory.pop_front();
            }
            memory.push_back((s, y, 1.0 / sy));
        }
        let decrease = f - f_new;
        x = x_new;
        g = g_new;
        f = f_new;
        history.push(f);
        if decrease <= 1e-15 * (1.0 + f.abs()) {
            stalled += 1;
            if stalled >= 10 {
                converged = true;
                break;
            }
        } else {
            stalled = 0;
        }
    }

    Run {
        params: x,
        value: f,
        iterations,
        converged,
        history,
    }
}

/// Reconstructs a physical two-qubit state from per-setting counts. The best
/// of the maximally mixed start and `options.restarts` perturbed starts wins.
pub fn mle_from_observations(
    observations: &[Observation],
    options: &MleOptions,
) -> Result<MleResult> {
    if observations.is_empty() {
        return Err(invalid("observations", "no settings to fit"));
    }
    if observations
        .iter()
        .flat_map(|o| o.counts.iter())
        .any(|&c| !(c.is_finite() && c >= 0.0))
    {
        return Err(invalid("counts", "must be finite and non-negative"));
    }
    let objective = Objective::new(observations);

    let mut base = [0.0; PARAMS];
    base[..DIM].fill(0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
    let mut starts = vec![base];
    for _ in 0..options.restarts {
        let mut s = base;
        for v in s.iter_mut() {
            let noise: f64 = StandardNormal.sample(&mut rng);
            *v += options.restart_spread * noise;
        }
        starts.push(s);
    }

    let best = starts
        .into_iter()
        .map(|s| lbfgs(&objective, s, options))
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one start");

    let (a, s) = Objective::state(&best.params);
    let rho = DensityMatrix::new_tidy(vec![2, 2], a.scale_real(1.0 / s))?;
    let log_likelihood = objective.log_likelihood(rho.matrix());
    Ok(MleResult {
        rho,
        log_likelihood,
        iterations: best.iterations,
        converged: best.converged,
        objective_history: best.history,
    })
}
