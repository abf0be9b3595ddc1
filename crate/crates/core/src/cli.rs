//! `qtangle` command-line front end.
//!
//! Frequencies on the command line are ordinary frequencies in Hz; they are
//! converted to angular frequencies (rad/s) before reaching the library.
//! Exit codes: 0 success, 1 numerical/runtime failure, 2 usage or validation
//! error.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::dielectric::{self, PermittivityScan, TransmonParams};
use crate::dressed::{self, DressedModel};
use crate::entanglement::{theta_grid, theta_sweep, DEFAULT_SWEEP_POINTS};
use crate::error::Error;
use crate::hilbert::DensityMatrix;
use crate::io::{self, density_from_json, density_to_json, write_atomic};
use crate::tomography::{
    self, fidelity, ideal_density, mle_reconstruct, simulate_counts, TomographyRecord,
};
use crate::tripartite::expand;

/// Environment variable supplying the default seed; `--seed` overrides it.
pub const SEED_ENV: &str = "QTANGLE_SEED";
pub const DEFAULT_SEED: u64 = 20211215;

/// Hardware fidelity quoted for the experiment; reported for comparison only.
pub const REFERENCE_FIDELITY: f64 = 0.82;

#[derive(Debug, Parser)]
#[command(
    name = "qtangle",
    version,
    about = "Dressed states, two-qubit tomography and tripartite entanglement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Perturbative and exact dressed gap of a qubit coupled to oscillators; prints JSON.
    Dressed(DressedArgs),
    /// Transmon frequency versus dielectric permittivity; writes CSV.
    DielectricSweep(DielectricArgs),
    /// Synthetic tomography counts for a two-qubit state; writes record JSON.
    TomoSim(TomoSimArgs),
    /// Maximum-likelihood reconstruction of a tomography record; writes density JSON.
    Reconstruct(ReconstructArgs),
    /// Expands a 4x4 dressed-basis state into the 8x8 three-qubit state; writes density JSON.
    Expand(ExpandArgs),
    /// Negativities and π-tangle versus mixing angle θ; writes CSV.
    EntangleSweep(SweepArgs),
    /// End-to-end run: ideal state, sampled tomography, MLE, fidelity, θ sweep.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct DressedArgs {
    /// Bare qubit frequency in Hz.
    #[arg(long, default_value_t = 3.271e9)]
    pub wq: f64,
    /// Oscillator frequency in Hz; repeat for several oscillators.
    #[arg(long = "osc", num_args = 1.., default_values_t = [5.0e9])]
    pub osc: Vec<f64>,
    /// Coupling g/2π in Hz (illustrative).
    #[arg(long, default_value_t = 1.0e8)]
    pub g: f64,
    /// Solve for the coupling reproducing this gap shift in Hz instead of using --g.
    #[arg(long, allow_hyphen_values = true)]
    pub fit_shift: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DielectricArgs {
    /// Unshifted qubit frequency in Hz; sets E_j unless --ej is given.
    #[arg(long, default_value_t = 3.271e9)]
    pub f0: f64,
    /// Shunt capacitance in F (illustrative default).
    #[arg(long, default_value_t = 80e-15)]
    pub capacitance: f64,
    /// Anharmonicity δ/2π in Hz.
    #[arg(long, default_value_t = -200e6, allow_hyphen_values = true)]
    pub anharmonicity: f64,
    /// Josephson energy in J; overrides the value derived from --f0.
    #[arg(long)]
    pub ej: Option<f64>,
    /// Fixed participation in [0, 1]; otherwise calibrated from --calibrate-shift.
    #[arg(long)]
    pub participation: Option<f64>,
    /// Observed shift in Hz used to calibrate the participation.
    #[arg(long, default_value_t = -8e6, allow_hyphen_values = true)]
    pub calibrate_shift: f64,
    /// Relative permittivity at which --calibrate-shift was observed.
    #[arg(long, default_value_t = 4.0)]
    pub calibrate_eps: f64,
    #[arg(long, default_value_t = 4.0)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 30.0)]
    pub eps_max: f64,
    #[arg(long, default_value_t = 27)]
    pub points: usize,
    /// Output CSV path; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TomoSimArgs {
    /// Density-matrix JSON of the true state; the ideal prepared state if omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Global depolarising weight in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Tomography record JSON.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// 4x4 density-matrix JSON in the {|0g⟩, |0e⟩, |1g⟩, |1e⟩} basis.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Mixing angle θ in radians, in [0, π].
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// 4x4 density-matrix JSON; the ideal prepared state if omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SWEEP_POINTS)]
    pub points: usize,
    /// Smallest θ in radians.
    #[arg(long, default_value_t = 0.0)]
    pub theta_min: f64,
    /// Largest θ in radians.
    #[arg(long, default_value_t = PI)]
    pub theta_max: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Directory for the report files.
    #[arg(long, default_value = "qtangle-report")]
    pub out_dir: PathBuf,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = DEFAULT_SWEEP_POINTS)]
    pub points: usize,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(flag: &str, reason: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: format!("invalid value for {flag}: {reason}"),
        }
    }

    fn runtime(context: &str, err: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: format!("{context}: {err}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: &Command) -> CliResult<()> {
    match command {
        Command::Dressed(a) => cmd_dressed(a),
        Command::DielectricSweep(a) => cmd_dielectric_sweep(a),
        Command::TomoSim(a) => cmd_tomo_sim(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Expand(a) => cmd_expand(a),
        Command::EntangleSweep(a) => cmd_entangle_sweep(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    }
}

fn positive(flag: &str, x: f64) -> CliResult<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(
            flag,
            format!("{x} must be a positive number"),
        ))
    }
}

fn unit_interval(flag: &str, x: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(CliError::usage(flag, format!("{x} must lie in [0, 1]")))
    }
}

fn theta_range(flag: &str, x: f64) -> CliResult<()> {
    if (0.0..=PI).contains(&x) {
        Ok(())
    } else {
        Err(CliError::usage(flag, format!("{x} must lie in [0, π]")))
    }
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, contents)
            .map_err(|e| CliError::runtime(&format!("writing {}", path.display()), e)),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn read_text(flag: &str, path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(flag, format!("{}: {e}", path.display())))
}

fn read_density(flag: &str, path: Option<&Path>) -> CliResult<DensityMatrix> {
    match path {
        None => Ok(ideal_density()),
        Some(p) => density_from_json(&read_text(flag, p)?).map_err(|e| CliError::usage(flag, e)),
    }
}

fn two_qubit(flag: &str, rho: &DensityMatrix) -> CliResult<()> {
    if rho.dims() == [2, 2] {
        Ok(())
    } else {
        Err(CliError::usage(
            flag,
            format!("need a [2, 2] state, got dims {:?}", rho.dims()),
        ))
    }
}

pub fn cmd_dressed(a: &DressedArgs) -> CliResult<()> {
    positive("--wq", a.wq)?;
    for &f in &a.osc {
        positive("--osc", f)?;
        if f == a.wq {
            return Err(CliError::usage(
                "--osc",
                format!("{f} Hz is resonant with --wq (zero detuning)"),
            ));
        }
    }
    if !(a.g.is_finite() && a.g >= 0.0) {
        return Err(CliError::usage("--g", "coupling must be non-negative"));
    }
    let template =
        DressedModel::from_hz(a.wq, &a.osc, a.g).map_err(|e| CliError::usage("--osc", e))?;
    let model = match a.fit_shift {
        Some(shift) => {
            let fit = dressed::theta_from_shift(shift, &template)
                .map_err(|e| CliError::usage("--fit-shift", e))?;
            template
                .with_coupling(fit.g)
                .map_err(|e| CliError::runtime("dressed", e))?
        }
        None => template,
    };
    let rt = |e: Error| CliError::runtime("dressed", e);
    let pert = dressed::perturbative_gap(&model).map_err(rt)?;
    let exact = dressed::exact_gap(&model).map_err(rt)?;
    let state = dressed::dressed_excited_state(&model).map_err(rt)?;
    let pert_cos = dressed::perturbative_qubit_amplitude(&model).map_err(rt)?;
    let out = json!({
        "qubit_frequency_hz": a.wq,
        "oscillator_frequencies_hz": a.osc,
        "coupling_hz": model.g() / (2.0 * PI),
        "perturbative_gap_hz": pert,
        "exact_gap_hz": exact,
        "dressed_level_hz": state.energy_gap_hz,
        "relative_difference": (pert - exact).abs() / exact,
        "shift_hz": pert - a.wq,
        "theta": state.theta,
        "cos_half_theta": (state.theta / 2.0).cos(),
        "perturbative_cos_half_theta": pert_cos,
        "psi1_coeffs": state.psi1_coeffs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

pub fn cmd_dielectric_sweep(a: &DielectricArgs) -> CliResult<()> {
    positive("--f0", a.f0)?;
    positive("--capacitance", a.capacitance)?;
    if a.points < 2 {
        return Err(CliError::usage("--points", "need at least 2"));
    }
    if !(a.eps_min >= 1.0) {
        return Err(CliError::usage(
            "--eps-min",
            "relative permittivity must be >= 1",
        ));
    }
    if !(a.eps_max >= a.eps_min) {
        return Err(CliError::usage("--eps-max", "must be >= --eps-min"));
    }
    let delta = 2.0 * PI * a.anharmonicity;
    let params = match a.ej {
        Some(ej) => TransmonParams::from_capacitance(a.capacitance, ej, delta)
            .map_err(|e| CliError::usage("--ej", e))?,
        None => TransmonParams::from_frequency(a.f0, a.capacitance, delta)
            .map_err(|e| CliError::usage("--f0", e))?,
    };
    let f0 =
        dielectric::qubit_frequency(&params).map_err(|e| CliError::runtime("dielectric", e))?;
    let participation = match a.participation {
        Some(p) => {
            unit_interval("--participation", p)?;
            p
        }
        None => {
            if !(a.calibrate_eps > 1.0) {
                return Err(CliError::usage("--calibrate-eps", "must be > 1"));
            }
            dielectric::fit_participation(f0, a.calibrate_shift, a.calibrate_eps, &params)
                .map_err(|e| CliError::usage("--calibrate-shift", e))?
        }
    };
    let scan = PermittivityScan::linspace(a.eps_min, a.eps_max, a.points, participation)
        .map_err(|e| CliError::usage("--eps-min", e))?;
    let points = scan
        .evaluate(&params)
        .map_err(|e| CliError::runtime("dielectric", e))?;
    eprintln!("participation = {participation:.12}");
    emit(a.out.as_deref(), &io::dielectric_csv(&points))
}

pub fn cmd_tomo_sim(a: &TomoSimArgs) -> CliResult<()> {
    if a.shots == 0 {
        return Err(CliError::usage("--shots", "must be at least 1"));
    }
    unit_interval("--noise", a.noise)?;
    let rho = read_density("--input", a.input.as_deref())?;
    two_qubit("--input", &rho)?;
    let record = simulate_counts(&rho, a.shots, a.seed, a.noise)
        .map_err(|e| CliError::runtime("tomo-sim", e))?;
    emit(a.out.as_deref(), &(record.to_json() + "\n"))
}

pub fn cmd_reconstruct(a: &ReconstructArgs) -> CliResult<()> {
    let record = TomographyRecord::from_json(&read_text("--input", &a.input)?)
        .map_err(|e| CliError::usage("--input", e))?;
    let result = mle_reconstruct(&record).map_err(|e| CliError::runtime("reconstruct", e))?;
    eprintln!(
        "log-likelihood {:.6}, {} iterations, converged: {}",
        result.log_likelihood, result.iterations, result.converged
    );
    emit(a.out.as_deref(), &(density_to_json(&result.rho) + "\n"))
}

pub fn cmd_expand(a: &ExpandArgs) -> CliResult<()> {
    theta_range("--theta", a.theta)?;
    let rho = read_density("--input", a.input.as_deref())?;
    two_qubit("--input", &rho)?;
    let state = expand(&rho, a.theta).map_err(|e| CliError::runtime("expand", e))?;
    let lex = state
        .to_lexicographic()
        .map_err(|e| CliError::runtime("expand", e))?;
    emit(a.out.as_deref(), &(density_to_json(&lex) + "\n"))
}

fn validated_grid(points: usize, lo: f64, hi: f64) -> CliResult<Vec<f64>> {
    if points == 0 {
        return Err(CliError::usage("--points", "need at least 1"));
    }
    theta_range("--theta-min", lo)?;
    theta_range("--theta-max", hi)?;
    if hi < lo {
        return Err(CliError::usage("--theta-max", "must be >= --theta-min"));
    }
    Ok(theta_grid(lo, hi, points))
}

pub fn cmd_entangle_sweep(a: &SweepArgs) -> CliResult<()> {
    let thetas = validated_grid(a.points, a.theta_min, a.theta_max)?;
    let rho = read_density("--input", a.input.as_deref())?;
    two_qubit("--input", &rho)?;
    let rows = theta_sweep(&rho, &thetas).map_err(|e| CliError::runtime("entangle-sweep", e))?;
    emit(a.out.as_deref(), &io::entanglement_csv(&rows))
}

/// Everything `reproduce` writes, keyed by file name.
pub struct Report {
    pub files: Vec<(&'static str, String)>,
    pub fidelity: f64,
}

pub fn build_report(seed: u64, shots: u64, noise: f64, points: usize) -> crate::Result<Report> {
    let ideal = ideal_density();
    let record = simulate_counts(&ideal, shots, seed, noise)?;
    let mle = mle_reconstruct(&record)?;
    let fid = fidelity(&mle.rho, &ideal)?;
    let noisy_truth = ideal.depolarize(noise)?;
    let fid_noisy = fidelity(&mle.rho, &noisy_truth)?;
    let thetas = theta_grid(0.0, PI, points);
    let sweep = theta_sweep(&mle.rho, &thetas)?;
    let ideal_sweep = theta_sweep(&ideal, &thetas)?;

    let mut summary = String::new();
    let _ = writeln!(summary, "qtangle reproduce");
    let _ = writeln!(summary, "seed: {seed}");
    let _ = writeln!(summary, "shots per setting: {shots}");
    let _ = writeln!(summary, "settings: {}", tomography::all_settings().len());
    let _ = writeln!(summary, "depolarizing noise: {noise}");
    let _ = writeln!(
        summary,
        "mle iterations: {} (converged: {})",
        mle.iterations, mle.converged
    );
    let _ = writeln!(summary, "mle log-likelihood: {:.9}", mle.log_likelihood);
    let _ = writeln!(summary, "fidelity to ideal state: {fid:.9}");
    let _ = writeln!(
        summary,
        "fidelity to depolarized true state: {fid_noisy:.9}"
    );
    let _ = writeln!(
        summary,
        "reference hardware fidelity: {REFERENCE_FIDELITY:.2} (comparison only; difference {:+.6})",
        fid - REFERENCE_FIDELITY
    );
    if let Some(mid) = sweep.iter().min_by(|a, b| {
        (a.theta - PI / 2.0)
            .abs()
            .total_cmp(&(b.theta - PI / 2.0).abs())
    }) {
        let _ = writeln!(
            summary,
            "reconstructed state at theta = {:.6}: N_T(AB) = {:.9}, pi-tangle = {:.9}",
            mid.theta,
            mid.report.n_c_ab,
            mid.report.pi_tangle_floored()
        );
    }
    let _ = writeln!(summary, "theta grid: {points} points on [0, pi]");

    Ok(Report {
        files: vec![
            ("ideal_state.json", density_to_json(&ideal) + "\n"),
            ("tomography.json", record.to_json() + "\n"),
            ("reconstructed.json", density_to_json(&mle.rho) + "\n"),
            ("entanglement.csv", io::entanglement_csv(&sweep)),
            ("entanglement_ideal.csv", io::entanglement_csv(&ideal_sweep)),
            ("summary.txt", summary),
        ],
        fidelity: fid,
    })
}

pub fn cmd_reproduce(a: &ReproduceArgs) -> CliResult<()> {
    if a.shots == 0 {
        return Err(CliError::usage("--shots", "must be at least 1"));
    }
    unit_interval("--noise", a.noise)?;
    if a.points == 0 {
        return Err(CliError::usage("--points", "need at least 1"));
    }
    let report = build_report(a.seed, a.shots, a.noise, a.points)
        .map_err(|e| CliError::runtime("reproduce", e))?;
    for (name, contents) in &report.files {
        let path = a.out_dir.join(name);
        write_atomic(&path, contents)
            .map_err(|e| CliError::runtime(&format!("writing {}", path.display()), e))?;
    }
    println!(
        "fidelity {:.6}; report written to {}",
        report.fidelity,
        a.out_dir.display()
    );
    Ok(())
}
