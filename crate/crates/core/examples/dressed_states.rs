//! Qubit dressed by a few oscillator modes: perturbative versus exact gap,
//! the mixing angle, and inverting an observed shift for the coupling.

use std::f64::consts::PI;

use qtangle::dressed::{self, DressedModel};

fn main() -> qtangle::Result<()> {
    let oscillators = [5.0e9, 5.8e9, 7.1e9];
    println!(
        "{:>10} {:>16} {:>16} {:>10} {:>8}",
        "g/2π [MHz]", "exact [GHz]", "perturb. [GHz]", "rel. err", "θ"
    );
    for g_mhz in [0.0, 10.0, 25.0, 50.0, 100.0, 200.0] {
        let model = DressedModel::from_hz(3.271e9, &oscillators, g_mhz * 1e6)?;
        let exact = dressed::exact_gap(&model)?;
        let pert = dressed::perturbative_gap(&model)?;
        let state = dressed::dressed_excited_state(&model)?;
        println!(
            "{g_mhz:>10.1} {:>16.9} {:>16.9} {:>10.2e} {:>8.5}",
            exact / 1e9,
            pert / 1e9,
            ((pert - exact) / exact).abs(),
            state.theta
        );
    }

    // qubit amplitude against its second-order estimate
    let model = DressedModel::from_hz(3.271e9, &oscillators, 1e8)?;
    let state = dressed::dressed_excited_state(&model)?;
    println!(
        "\ncos(θ/2) = {:.9}, perturbative {:.9}",
        (state.theta / 2.0).cos(),
        dressed::perturbative_qubit_amplitude(&model)?
    );
    for (k, c) in state.psi1_coeffs.iter().enumerate() {
        println!("  oscillator {k}: {:+.6} {:+.6}i", c.re, c.im);
    }

    // coupling that reproduces a −8 MHz shift against a single 5 GHz mode
    let template = DressedModel::from_hz(3.271e9, &[5.0e9], 0.0)?;
    let fit = dressed::theta_from_shift(-8e6, &template)?;
    println!(
        "\n−8 MHz shift: g/2π = {:.3} MHz, θ = {:.5} rad",
        fit.g / (2.0 * PI) / 1e6,
        fit.theta
    );
    Ok(())
}
