//! Expands the two-qubit state into qubit ⊗ qubit ⊗ oscillator and prints
//! the 8×8 matrix in the display ordering, plus its structural zeros.

use qtangle::tomography::ideal_density;
use qtangle::tripartite::{expand, STRUCTURAL_ZEROS};

const LABELS: [&str; 8] = ["000", "010", "001", "011", "100", "110", "101", "111"];

fn main() -> qtangle::Result<()> {
    let theta = std::f64::consts::FRAC_PI_3;
    let state = expand(&ideal_density(), theta)?;
    let m = state.display_matrix();

    println!("θ = {theta:.4}, real parts:");
    print!("{:>5}", "");
    for l in LABELS {
        print!("{l:>8}");
    }
    println!();
    for (i, l) in LABELS.iter().enumerate() {
        print!("{l:>5}");
        for j in 0..8 {
            print!("{:>8.4}", m[(i, j)].re);
        }
        println!();
    }
    println!(
        "\nzeros: {} (structural {STRUCTURAL_ZEROS})",
        state.zero_count()
    );

    let lex = state.to_lexicographic()?;
    println!(
        "trace {:.12}, purity {:.12}",
        lex.matrix().trace().re,
        lex.purity()
    );
    Ok(())
}
