//! Sampled two-qubit tomography of the prepared Bell-type state, followed
//! by maximum-likelihood reconstruction at several noise levels.

use qtangle::tomography::{self, mle_reconstruct, povm_gram_rank, simulate_counts};

fn main() -> qtangle::Result<()> {
    println!(
        "measurement settings span {} real dimensions",
        povm_gram_rank()
    );
    let ideal = tomography::ideal_density();

    println!(
        "{:>6} {:>8} {:>10} {:>10} {:>6}",
        "noise", "shots", "fidelity", "purity", "iters"
    );
    for (noise, shots) in [
        (0.0, 1_000),
        (0.0, 100_000),
        (0.1, 100_000),
        (0.24, 100_000),
    ] {
        let record = simulate_counts(&ideal, shots, 2024, noise)?;
        let result = mle_reconstruct(&record)?;
        println!(
            "{noise:>6.2} {shots:>8} {:>10.6} {:>10.6} {:>6}",
            tomography::fidelity(&result.rho, &ideal)?,
            result.rho.purity(),
            result.iterations
        );
    }

    let record = simulate_counts(&ideal, 10_000, 1, 0.0)?;
    let first = &record.settings[0];
    println!(
        "\nfirst setting {}⊗{}: counts {:?}",
        first.gate_a, first.gate_b, first.counts
    );
    Ok(())
}
