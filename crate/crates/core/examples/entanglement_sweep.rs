//! Negativities and residual π-tangle over the mixing angle, for the ideal
//! state and for a depolarised copy.

use qtangle::entanglement::{theta_grid, theta_sweep};
use qtangle::tomography::ideal_density;

fn main() -> qtangle::Result<()> {
    let thetas = theta_grid(0.0, std::f64::consts::PI, 9);
    for noise in [0.0, 0.2] {
        let rho = ideal_density().depolarize(noise)?;
        println!("noise {noise}");
        println!(
            "{:>7} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7} {:>8}",
            "θ", "A|BT", "B|AT", "T|AB", "AB", "AT", "BT", "π"
        );
        for row in theta_sweep(&rho, &thetas)? {
            let n = row.report.negativities();
            print!("{:>7.4}", row.theta);
            for v in n {
                print!(" {v:>7.4}");
            }
            println!(" {:>8.4}", row.report.pi_tangle);
        }
        println!();
    }
    Ok(())
}
