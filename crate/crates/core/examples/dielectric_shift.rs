//! Transmon frequency as the surrounding medium's permittivity grows.
//! The participation is calibrated from one observed shift and then
//! used for the whole sweep.

use qtangle::dielectric::{self, PermittivityScan, TransmonParams};

fn main() -> qtangle::Result<()> {
    let f0 = 3.271e9;
    let params = TransmonParams::from_frequency(f0, 80e-15, -200e6)?;
    println!(
        "E_c/h = {:.1} MHz, E_j/E_c = {:.1}",
        params.e_c / 6.62607015e-34 / 1e6,
        params.e_j / params.e_c
    );

    let levels = dielectric::transmon_levels(&params, 3)?;
    let spacings: Vec<String> = levels
        .windows(2)
        .map(|w| format!("{:.4}", (w[1] - w[0]) / 1e9))
        .collect();
    println!("level spacings [GHz]: {}", spacings.join(", "));

    let participation = dielectric::fit_participation(f0, -8e6, 4.0, &params)?;
    println!("participation from −8 MHz at ε = 4: {participation:.6e}\n");

    let scan = PermittivityScan::linspace(1.0, 80.0, 9, participation)?;
    println!("{:>6} {:>14} {:>12}", "ε_r", "f [GHz]", "shift [MHz]");
    for p in scan.evaluate(&params)? {
        println!(
            "{:>6.1} {:>14.6} {:>12.3}",
            p.eps_r,
            p.frequency_hz / 1e9,
            p.shift_hz / 1e6
        );
    }
    Ok(())
}
