//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p qtangle --test acceptance -- --nocapture --test-threads 1`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qtangle::dielectric::{self, TransmonParams};
use qtangle::dressed::{exact_gap, perturbative_gap, DressedModel};
use qtangle::entanglement::{negativity, report_for, theta_grid, theta_sweep};
use qtangle::hilbert::random::{random_density, random_ket};
use qtangle::hilbert::{eigh, partial_transpose, ComplexMatrix, DensityMatrix, Ket};
use qtangle::tomography::{
    expected_counts, fidelity, ideal_density, mle_from_observations, mle_reconstruct,
    pure_fidelity, simulate_counts, MleOptions,
};
use qtangle::tripartite::{
    expand_entrywise, expand_isometry, lexicographic_to_display, verify_zero_pattern,
    STRUCTURAL_ZEROS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: &str, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] {id}: {title}");
    } else {
        println!("[FAIL] {id}: {title}");
        for f in failures.iter().take(10) {
            println!("       - {f}");
        }
        panic!("{id} failed with {} violation(s)", failures.len());
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn within(elapsed: Duration, limit: Duration, failures: &mut Vec<String>) {
    // Runtime limits assume an optimised build; debug builds only report.
    if cfg!(debug_assertions) {
        if elapsed > limit {
            println!("       (debug build: {elapsed:?} exceeds the {limit:?} release budget)");
        }
        return;
    }
    check(failures, elapsed <= limit, || {
        format!("runtime {elapsed:?} exceeds {limit:?}")
    });
}

const GHZ: f64 = 2.0 * PI * 1e9;

#[test]
fn perturbation_theory_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();
    for case in 0..100 {
        let n = rng.random_range(1..=8);
        let omega_q = rng.random_range(3.0..6.0) * GHZ;
        let omegas: Vec<f64> = (0..n)
            .map(|_| omega_q + rng.random_range(0.5..3.0) * GHZ)
            .collect();
        let template = DressedModel::new(omega_q, omegas, 0.0).unwrap();
        let ratio = rng.random_range(0.01..=0.05);
        let g = ratio * template.min_abs_detuning();
        let model = template.with_coupling(g).unwrap();
        let half = template.with_coupling(g / 2.0).unwrap();

        let pert = perturbative_gap(&model).unwrap();
        let exact = exact_gap(&model).unwrap();
        let rel = (pert - exact).abs() / exact;
        check(&mut failures, rel < 1e-4, || {
            format!("case {case}: relative error {rel:e}")
        });

        let err_full = (pert - exact).abs();
        let err_half = (perturbative_gap(&half).unwrap() - exact_gap(&half).unwrap()).abs();
        let reduction = err_full / err_half;
        check(&mut failures, reduction >= 15.0, || {
            format!("case {case}: halving g reduced the error only {reduction:.3}x")
        });
    }
    within(start.elapsed(), Duration::from_secs(1), &mut failures);
    report(
        "weak-coupling",
        "perturbative gap vs exact diagonalisation (rel < 1e-4, 4th-order scaling)",
        &failures,
    );
}

#[test]
fn tripartite_routes_and_zero_pattern() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for case in 0..50 {
        let rho = random_density(&mut rng, &[2, 2], 4);
        for _ in 0..10 {
            let theta = rng.random_range(0.0..PI);
            let entry = expand_entrywise(&rho, theta).unwrap();
            let iso = lexicographic_to_display(&expand_isometry(&rho, theta).unwrap());
            let gap = entry.max_abs_diff(&iso);
            check(&mut failures, gap <= 1e-12, || {
                format!("case {case}, θ={theta}: routes differ by {gap:e}")
            });
            let state = qtangle::tripartite::expand(&rho, theta).unwrap();
            check(&mut failures, verify_zero_pattern(&state), || {
                format!("case {case}: zero pattern violated")
            });
            let zeros = state.zero_count();
            check(&mut failures, zeros == STRUCTURAL_ZEROS, || {
                format!("case {case}, θ={theta}: {zeros} zero entries, expected 28")
            });
        }
    }
    within(start.elapsed(), Duration::from_secs(1), &mut failures);
    report(
        "expansion",
        "entry formula == isometry within 1e-12, exactly 28 structural zeros",
        &failures,
    );
}

fn werner(p: f64) -> DensityMatrix {
    let bell = Ket::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap().projector();
    let mixed = ComplexMatrix::identity(4).scale_real(0.25);
    DensityMatrix::new(vec![2, 2], &bell.scale_real(p) + &mixed.scale_real(1.0 - p)).unwrap()
}

#[test]
fn negativity_oracles() {
    let mut failures = Vec::new();
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
        let rho = werner(p);
        // Oracle: partial transpose of the Werner state has eigenvalues
        // (1+p)/4 (three times) and (1-3p)/4.
        let mut spectrum = eigh(&partial_transpose(&rho, 0).unwrap()).unwrap().values;
        spectrum.sort_by(f64::total_cmp);
        let mut predicted = [
            (1.0 - 3.0 * p) / 4.0,
            (1.0 + p) / 4.0,
            (1.0 + p) / 4.0,
            (1.0 + p) / 4.0,
        ];
        predicted.sort_by(f64::total_cmp);
        for (got, want) in spectrum.iter().zip(predicted) {
            check(&mut failures, (got - want).abs() < 1e-12, || {
                format!("p={p}: PT eigenvalue {got} vs {want}")
            });
        }
        let from_spectrum: f64 = spectrum.iter().map(|l| l.abs()).sum::<f64>() - 1.0;
        let analytic = f64::max(0.0, (3.0 * p - 1.0) / 2.0);
        check(
            &mut failures,
            (from_spectrum.max(0.0) - analytic).abs() < 1e-12,
            || format!("p={p}: eigenvalue-derived {from_spectrum} vs closed form {analytic}"),
        );
        let n = negativity(&rho, &[0]).unwrap();
        check(&mut failures, (n - analytic).abs() <= 1e-9, || {
            format!("p={p}: negativity {n} vs {analytic}")
        });
    }

    let bell = werner(1.0);
    let nb = negativity(&bell, &[0]).unwrap();
    check(&mut failures, (nb - 1.0).abs() <= 1e-10, || {
        format!("Bell negativity {nb}")
    });

    let mut amps = [0.0; 8];
    amps[0] = 1.0;
    amps[7] = 1.0;
    let ghz = DensityMatrix::from_ket(vec![2, 2, 2], &Ket::from_real(&amps).unwrap()).unwrap();
    let r = report_for(&ghz).unwrap();
    check(&mut failures, (r.pi_tangle - 1.0).abs() <= 1e-9, || {
        format!("GHZ π-tangle {}", r.pi_tangle)
    });
    for (name, v) in [("N_AB", r.n_ab), ("N_AC", r.n_ac), ("N_BC", r.n_bc)] {
        check(&mut failures, v < 1e-9, || format!("GHZ {name} = {v}"));
    }
    report(
        "negativity-oracles",
        "Werner/Bell/GHZ negativity and π-tangle oracles",
        &failures,
    );
}

#[test]
fn theta_sweep_all_curves_monotone() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let grid = theta_grid(0.0, PI / 2.0, 50);
    let rows = theta_sweep(&ideal_density(), &grid).unwrap();
    let names = [
        "N_A:(BT)",
        "N_B:(AT)",
        "N_T:(AB)",
        "N_AB",
        "N_AT",
        "N_BT",
        "π-tangle",
    ];
    let series = |k: usize| -> Vec<f64> {
        rows.iter()
            .map(|r| {
                let n = r.report.negativities();
                if k < 6 {
                    n[k]
                } else {
                    r.report.pi_tangle
                }
            })
            .collect()
    };
    for (k, name) in names.iter().enumerate() {
        let values = series(k);
        if let Some(i) = (1..values.len()).find(|&i| values[i] < values[i - 1] - 1e-12) {
            failures.push(format!(
                "{name} decreases between θ={:.4} ({:.6}) and θ={:.4} ({:.6})",
                rows[i - 1].theta,
                values[i - 1],
                rows[i].theta,
                values[i]
            ));
        }
    }
    for r in &rows {
        check(&mut failures, (r.report.n_a_bc - 1.0).abs() <= 1e-9, || {
            format!("N_A:(BT) = {} at θ={}", r.report.n_a_bc, r.theta)
        });
    }
    let p0 = rows[0].report.pi_tangle;
    check(&mut failures, p0.abs() <= 1e-10, || {
        format!("π-tangle at θ=0 is {p0}")
    });
    within(start.elapsed(), Duration::from_secs(5), &mut failures);
    report(
        "sweep-all-curves",
        "all six negativities and π-tangle non-decreasing on [0, π/2]",
        &failures,
    );
}

/// The curves that involve the tardigrade, plus the π-tangle.
#[test]
fn theta_sweep_tardigrade_curves_monotone() {
    let mut failures = Vec::new();
    let grid = theta_grid(0.0, PI / 2.0, 50);
    let rows = theta_sweep(&ideal_density(), &grid).unwrap();
    for w in rows.windows(2) {
        let (a, b) = (&w[0].report, &w[1].report);
        for (name, x, y) in [
            ("N_T:(AB)", a.n_c_ab, b.n_c_ab),
            ("N_AT", a.n_ac, b.n_ac),
            ("N_BT", a.n_bc, b.n_bc),
            ("π-tangle", a.pi_tangle, b.pi_tangle),
        ] {
            check(&mut failures, y >= x - 1e-12, || {
                format!("{name} decreases at θ={:.4}", w[1].theta)
            });
        }
    }
    report(
        "sweep-oscillator-curves",
        "tardigrade-involving negativities and π-tangle non-decreasing on [0, π/2]",
        &failures,
    );
}

#[test]
fn mle_recovery() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 1.0_f64;
    for case in 0..200 {
        let truth = random_density(&mut rng, &[2, 2], 4);
        let obs = expected_counts(&truth, 10_000.0, 0.0).unwrap();
        let res = mle_from_observations(&obs, &MleOptions::default()).unwrap();
        let f = fidelity(&res.rho, &truth).unwrap();
        worst = worst.min(f);
        check(&mut failures, f >= 1.0 - 1e-5, || {
            format!("(a) case {case}: fidelity {f}")
        });
    }
    println!("       (a) worst fidelity over 200 states: {worst:.12}");

    let ideal = ideal_density();
    let rec = simulate_counts(&ideal, 10_000, 42, 0.0).unwrap();
    let f = fidelity(&mle_reconstruct(&rec).unwrap().rho, &ideal).unwrap();
    println!("       (b) sampled Bell fidelity: {f:.6}");
    check(&mut failures, f >= 0.98, || format!("(b) fidelity {f}"));

    let noisy = ideal.depolarize(0.1).unwrap();
    let rec = simulate_counts(&ideal, 10_000, 43, 0.1).unwrap();
    let d = mle_reconstruct(&rec)
        .unwrap()
        .rho
        .trace_distance(&noisy)
        .unwrap();
    println!("       (c) trace distance to noisy truth: {d:.6}");
    check(&mut failures, d <= 0.03, || {
        format!("(c) trace distance {d}")
    });

    within(start.elapsed(), Duration::from_secs(60), &mut failures);
    report(
        "mle-recovery",
        "MLE recovery (exact ≥ 1-1e-5, sampled Bell ≥ 0.98, noisy within 0.03)",
        &failures,
    );
}

#[test]
fn fidelity_identities() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rho = random_density(&mut rng, &[2, 2], 4);
    let f = fidelity(&rho, &rho).unwrap();
    check(&mut failures, (f - 1.0).abs() < 1e-9, || {
        format!("F(ρ,ρ) = {f}")
    });

    let zero = DensityMatrix::from_ket(vec![2], &Ket::basis(2, 0)).unwrap();
    let one = DensityMatrix::from_ket(vec![2], &Ket::basis(2, 1)).unwrap();
    let f = fidelity(&zero, &one).unwrap();
    check(&mut failures, f.abs() < 1e-12, || {
        format!("orthogonal fidelity {f}")
    });

    for case in 0..100 {
        let psi = random_ket(&mut rng, 4);
        let rank = rng.random_range(1..=4);
        let sigma = random_density(&mut rng, &[2, 2], rank);
        let pure = DensityMatrix::from_ket(vec![2, 2], &psi).unwrap();
        let general = fidelity(&pure, &sigma).unwrap();
        let shortcut = pure_fidelity(&psi, &sigma).unwrap();
        check(&mut failures, (general - shortcut).abs() <= 1e-9, || {
            format!("case {case}: general {general} vs ⟨ψ|σ|ψ⟩ {shortcut}")
        });
    }
    report(
        "fidelity",
        "fidelity identities (self, orthogonal, pure-state shortcut)",
        &failures,
    );
}

#[test]
fn dielectric_model() {
    let mut failures = Vec::new();
    let params = TransmonParams::from_frequency(3.271e9, 80e-15, -2.0 * PI * 200e6).unwrap();
    let f0 = dielectric::qubit_frequency(&params).unwrap();
    check(
        &mut failures,
        dielectric::shifted_frequency(&params, 1.0, 0.6).unwrap() - f0 == 0.0,
        || "eps_r = 1 changes the frequency".into(),
    );
    check(
        &mut failures,
        dielectric::shifted_frequency(&params, 17.0, 0.0).unwrap() - f0 == 0.0,
        || "participation = 0 changes the frequency".into(),
    );

    for (shift, eps) in [(-8e6, 4.0), (-1e5, 2.5), (-5e7, 30.0)] {
        let p = dielectric::fit_participation(f0, shift, eps, &params).unwrap();
        let back = dielectric::shifted_frequency(&params, eps, p).unwrap() - f0;
        let rel = ((back - shift) / shift).abs();
        check(&mut failures, rel <= 1e-9, || {
            format!("round trip at shift {shift}: relative error {rel:e}")
        });
    }

    let p = dielectric::fit_participation(f0, -8e6, 4.0, &params).unwrap();
    let at30 = dielectric::shifted_frequency(&params, 30.0, p).unwrap() - f0;
    println!(
        "       calibrated participation {p:.9}; shift at eps_r = 30: {:.6} MHz",
        at30 / 1e6
    );
    check(&mut failures, at30 < -8e6, || {
        format!("shift at eps_r = 30 is {at30}")
    });
    report(
        "dielectric",
        "dielectric identities, calibration round trip, monotone shift",
        &failures,
    );
}

#[test]
fn reference_fidelity_reported_not_asserted() {
    let mut failures = Vec::new();
    let rep = qtangle::cli::build_report(7, 2_000, 0.24, 11).unwrap();
    let summary = &rep
        .files
        .iter()
        .find(|(n, _)| *n == "summary.txt")
        .unwrap()
        .1;
    check(
        &mut failures,
        summary.contains("reference hardware fidelity: 0.82"),
        || "summary does not report the reference fidelity".into(),
    );
    println!(
        "       noise 0.24 fidelity (reported only): {:.4}",
        rep.fidelity
    );
    report(
        "reference-fidelity",
        "reference fidelity is reported for comparison, not asserted",
        &failures,
    );
}
