use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gkdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkdv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn steady_writes_series_profile_and_report() {
    let dir = TempDir::new().unwrap();
    let out = gkdv(&[
        "steady",
        "--K",
        "40",
        "--grid",
        "-5:5:101",
        "--out",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in ["series.json", "profile.csv", "report.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,eta,closed_form"));
    assert_eq!(lines.count(), 101);
    let report = json_file(&dir.path().join("report.json"));
    assert!(report["residual"].as_f64().unwrap() < 1e-12);
    assert!(report["match"].is_object());
}

#[test]
fn shallow_scheme_matches_closed_form_a1() {
    for (b, h) in [(1.0, 0.1), (2.0, 0.2), (0.5, 0.4)] {
        let out = gkdv(&[
            "--json",
            "steady",
            "--scheme",
            "shallow",
            "--K",
            "40",
            "--B",
            &b.to_string(),
            "--h",
            &h.to_string(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let a1 = stdout_json(&out)["a1"].as_f64().unwrap();
        let expected = -b * b * h * h * h;
        assert!(
            (a1 - expected).abs() <= 1e-6 * expected.abs(),
            "{a1} vs {expected}"
        );
    }
}

#[test]
fn degenerate_bh_exits_with_input_error() {
    let out = gkdv(&[
        "steady",
        "--B",
        "1",
        "--h",
        &std::f64::consts::PI.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("A = -sin(Bh)/(Bh)"), "{err}");
}

#[test]
fn unknown_scheme_lists_available() {
    let out = gkdv(&["steady", "--scheme", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("full") && err.contains("shallow"), "{err}");
}

#[test]
fn residual_check_passes_on_solver_output() {
    for scheme in ["full", "shallow"] {
        let dir = TempDir::new().unwrap();
        let out = gkdv(&[
            "steady",
            "--scheme",
            scheme,
            "--K",
            "60",
            "--h",
            "0.2",
            "--out",
            path(dir.path()),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let series = dir.path().join("series.json");
        let out = gkdv(&["--json", "residual-check", "--from", path(&series)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let s = stdout_json(&out);
        assert_eq!(s["scheme"], scheme);
        assert!(s["q_form_gap"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn residual_check_fails_on_perturbed_series() {
    let dir = TempDir::new().unwrap();
    let out = gkdv(&["steady", "--K", "30", "--out", path(dir.path())]);
    assert!(out.status.success());
    let file = dir.path().join("series.json");
    let mut series = json_file(&file);
    let a3 = series["a"][2].as_f64().unwrap();
    series["a"][2] = Value::from(a3 * (1.0 + 1e-6));
    fs::write(&file, serde_json::to_string(&series).unwrap()).unwrap();
    let out = gkdv(&["residual-check", "--from", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dispersion_csv_matches_gravity_relation() {
    let out = gkdv(&["dispersion", "--h", "0.5", "--k", "0.5:5:10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,omega2"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (k, w) = l.split_once(',').unwrap();
            (k.parse().unwrap(), w.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 10);
    for (k, w2) in rows {
        let expected = 9.81 * k * (k * 0.5_f64).tanh();
        assert!(
            (w2 - expected).abs() <= 1e-12 * expected,
            "{k}: {w2} vs {expected}"
        );
    }
}

#[test]
fn dispersion_writes_file_with_out() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("d.csv");
    let out = gkdv(&[
        "dispersion",
        "--k",
        "1:2:3",
        "--sigma",
        "0.07",
        "--out",
        path(&file),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 4);
}

#[test]
fn evolve_writes_trajectory_and_meta() {
    let dir = TempDir::new().unwrap();
    let out = gkdv(&[
        "evolve",
        "--n",
        "128",
        "--t-end",
        "0.2",
        "--snapshot-every",
        "100",
        "--out",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let meta = json_file(&dir.path().join("meta.json"));
    assert_eq!(meta["diagnostics"]["steps"], 200);
    assert_eq!(meta["snapshots"], 3);
    assert!(meta["diagnostics"]["max_mass_drift"].as_f64().unwrap() < 1e-12);
    let csv = fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,x,eta\n"));
    assert_eq!(csv.lines().count(), 1 + 3 * 128);
}

#[test]
fn evolve_rejects_step_above_stability_bound() {
    let out = gkdv(&["evolve", "--n", "256", "--t-end", "1", "--dt", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evolve_blow_up_exits_3_with_dump() {
    let dir = TempDir::new().unwrap();
    let out = gkdv(&[
        "evolve",
        "--n",
        "256",
        "--t-end",
        "200",
        "--dt",
        "0.5",
        "--cfl",
        "100",
        "--no-filter",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spectrum magnitudes"));
    let dump = json_file(&dir.path().join("instability.json"));
    let spectrum = dump["spectrum"].as_array().unwrap();
    assert_eq!(spectrum.len(), 256);
    assert!(spectrum
        .iter()
        .all(|m| m.as_f64().is_some_and(f64::is_finite)));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let files = [
        "series.json",
        "profile.csv",
        "report.json",
        "evolve/trajectory.csv",
        "evolve/meta.json",
    ];
    let run = || {
        let d = path(dir.path());
        assert!(
            gkdv(&["steady", "--K", "60", "--grid", "-4:4:81", "--out", d])
                .status
                .success()
        );
        let e = dir.path().join("evolve");
        assert!(
            gkdv(&["evolve", "--n", "64", "--t-end", "0.1", "--out", path(&e)])
                .status
                .success()
        );
        files.map(|f| fs::read(dir.path().join(f)).unwrap())
    };
    let first = run();
    let second = run();
    for (f, (a, b)) in files.iter().zip(first.iter().zip(&second)) {
        assert!(a == b, "{f} differs between runs");
    }
}

#[test]
fn flags_override_config_file_over_defaults() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("steady.json");
    fs::write(
        &cfg,
        r#"{"B": 2.0, "h": 0.05, "K": 30, "scheme": "shallow"}"#,
    )
    .unwrap();

    let from_file = stdout_json(&gkdv(&["--json", "steady", "--config", path(&cfg)]));
    assert_eq!(from_file["config"]["B"], 2.0);
    assert_eq!(from_file["config"]["h"], 0.05);
    assert_eq!(from_file["config"]["K"], 30);
    assert_eq!(from_file["config"]["resummation"], "pade");

    let overridden = stdout_json(&gkdv(&[
        "--json",
        "steady",
        "--config",
        path(&cfg),
        "--B",
        "1.5",
    ]));
    assert_eq!(overridden["config"]["B"], 1.5);
    assert_eq!(overridden["config"]["K"], 30);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"Bee": 2.0}"#).unwrap();
    let out = gkdv(&["steady", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_one_directory_per_point() {
    let dir = TempDir::new().unwrap();
    let out = gkdv(&[
        "--json",
        "steady",
        "--scheme",
        "shallow",
        "--K",
        "30",
        "--grid",
        "-2:2:5",
        "--sweep",
        "B=0.5:1.5:3",
        "--out",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports = stdout_json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for (i, b) in [0.5, 1.0, 1.5].iter().enumerate() {
        let sub = dir.path().join(format!("sweep_{i:03}"));
        assert!(sub.join("series.json").exists());
        assert_eq!(reports[i]["config"]["B"], *b);
    }
}

#[test]
fn qcheck_passes() {
    let out = gkdv(&["qcheck", "--trials", "50", "--seed", "7"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("PASS") && !table.contains("FAIL"));
}
