use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qtangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtangle"))
        .args(args)
        .env_remove("QTANGLE_SEED")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = qtangle(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dressed_prints_json_with_close_gaps() {
    let text = ok(&[
        "dressed", "--wq", "3.271e9", "--osc", "5e9", "--osc", "6.2e9", "--g", "5e7",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["relative_difference"].as_f64().unwrap() < 1e-3);
    assert!(v["exact_gap_hz"].as_f64().unwrap() < 3.271e9);
    assert_eq!(v["psi1_coeffs"].as_array().unwrap().len(), 2);
}

#[test]
fn dressed_without_coupling_is_bare() {
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "dressed", "--wq", "3.271e9", "--osc", "5e9", "--g", "0",
    ]))
    .unwrap();
    assert_eq!(v["theta"].as_f64().unwrap(), 0.0);
    assert!((v["exact_gap_hz"].as_f64().unwrap() - 3.271e9).abs() < 1e-3);
}

#[test]
fn resonant_oscillator_is_a_usage_error() {
    let out = qtangle(&[
        "dressed", "--wq", "3.271e9", "--osc", "3.271e9", "--g", "1e7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(qtangle(&["tomo-sim", "--bogus"]).status.code(), Some(2));
}

#[test]
fn pipeline_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("record.json");
    let rho = dir.path().join("rho.json");
    let abt = dir.path().join("abt.json");
    let csv = dir.path().join("sweep.csv");

    ok(&[
        "tomo-sim",
        "--shots",
        "20000",
        "--seed",
        "5",
        "--out",
        path_str(&rec),
    ]);
    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(record["settings"].as_array().unwrap().len(), 16);

    ok(&[
        "reconstruct",
        "--input",
        path_str(&rec),
        "--out",
        path_str(&rho),
    ]);
    let reconstructed = qtangle::io::density_from_json(&fs::read_to_string(&rho).unwrap()).unwrap();
    let f = qtangle::tomography::fidelity(&reconstructed, &qtangle::tomography::ideal_density())
        .unwrap();
    assert!(f > 0.99, "fidelity {f}");

    ok(&[
        "expand",
        "--input",
        path_str(&rho),
        "--theta",
        "0.7",
        "--out",
        path_str(&abt),
    ]);
    let expanded = qtangle::io::density_from_json(&fs::read_to_string(&abt).unwrap()).unwrap();
    assert_eq!(expanded.dims(), &[2, 2, 2]);

    ok(&[
        "entangle-sweep",
        "--input",
        path_str(&rho),
        "--points",
        "11",
        "--out",
        path_str(&csv),
    ]);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), qtangle::io::ENTANGLEMENT_HEADER);
    assert_eq!(lines.count(), 11);
}

#[test]
fn dielectric_sweep_writes_csv() {
    let text = ok(&["dielectric-sweep", "--points", "5"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), qtangle::io::DIELECTRIC_HEADER);
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    // calibrated to −8 MHz at ε = 4 by default
    assert!((rows[0][2] + 8e6).abs() < 1.0);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
}

#[test]
fn reproduce_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |d: &Path| {
        vec![
            "reproduce".to_string(),
            "--out-dir".into(),
            d.to_str().unwrap().into(),
            "--seed".into(),
            "11".into(),
            "--shots".into(),
            "5000".into(),
            "--points".into(),
            "9".into(),
        ]
    };
    for d in [a.path(), b.path()] {
        let owned = args(d);
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        ok(&refs);
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 6);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?} differs");
    }
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, env: Option<&str>, flag: Option<&str>| {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qtangle"));
        cmd.env_remove("QTANGLE_SEED").args([
            "tomo-sim",
            "--shots",
            "500",
            "--out",
            path_str(&out),
        ]);
        if let Some(s) = env {
            cmd.env("QTANGLE_SEED", s);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        assert!(cmd.status().unwrap().success());
        fs::read(out).unwrap()
    };
    assert_eq!(
        run("env.json", Some("3"), None),
        run("flag.json", None, Some("3"))
    );
}

#[test]
fn invalid_arguments_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let status = qtangle(&["tomo-sim", "--noise", "1.5", "--out", path_str(&out)]).status;
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists());

    let rep = dir.path().join("report");
    let status = qtangle(&["reproduce", "--noise", "2", "--out-dir", path_str(&rep)]).status;
    assert_eq!(status.code(), Some(2));
    assert!(!rep.join("summary.txt").exists());

    let missing = dir.path().join("missing.json");
    let status = qtangle(&[
        "reconstruct",
        "--input",
        path_str(&missing),
        "--out",
        path_str(&out),
    ])
    .status;
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn help_states_units() {
    let text = ok(&["dressed", "--help"]);
    assert!(text.contains("Hz"));
}
