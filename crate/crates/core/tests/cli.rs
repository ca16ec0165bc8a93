use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::c64;

fn qsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsync")).args(args).env_remove("QSYNC_TOL").output().unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"))
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bundled_configs_run_quickly() {
    for name in [
        "l1_antisync",
        "l2_antisync",
        "ltheta_antisync",
        "l1_uncoupled_scenario1",
        "l1_sync_scenario2",
        "l1_antisync_scenario3",
        "swap",
    ] {
        let dir = tempfile::tempdir().unwrap();
        let t0 = Instant::now();
        let out = qsync(&["run", config(name).to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(t0.elapsed() < Duration::from_secs(10), "{name} took {:?}", t0.elapsed());
        assert!(dir.path().join("trajectory.csv").exists());
        let report: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("sync_report.json")).unwrap()).unwrap();
        assert_eq!(report["sync"]["phase_locked"], true, "{name}");
    }
}

#[test]
fn run_refuses_to_overwrite_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("l1_sync_scenario2");
    let args = ["run", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()];
    assert!(qsync(&args).status.success());
    let first = fs::read(dir.path().join("trajectory.csv")).unwrap();
    let again = qsync(&args);
    assert_eq!(again.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&again.stderr).contains("--force"));
    let mut forced = args.to_vec();
    forced.push("--force");
    assert!(qsync(&forced).status.success());
    assert_eq!(first, fs::read(dir.path().join("trajectory.csv")).unwrap());
}

#[test]
fn presets_lists_states_and_mechanisms() {
    let v = stdout_json(&qsync(&["presets"]));
    let names: Vec<&str> =
        v["initial_states"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"psi_in"));
    assert!(!v["mechanisms"].as_array().unwrap().is_empty());
}

#[test]
fn classify_reads_matrix_file() {
    let spec = MechanismSpec::l2(1.1, c64(0.2, 0.5), c64(0.6, -0.3), 0.4, 0.9, 0.7);
    let m = *LindbladOp::from_spec(&spec).unwrap().matrix();
    let rows: Vec<Vec<[f64; 2]>> = (0..4).map(|r| (0..4).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.json");
    fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let v = stdout_json(&qsync(&["classify", path.to_str().unwrap()]));
    assert_eq!(v["class"], "L2");
    assert!((v["phi"].as_f64().unwrap() - 1.1).abs() < 1e-7);

    let mut bad = rows.clone();
    bad[0][1] = [5.0, 0.0];
    fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    assert_eq!(qsync(&["classify", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn attractors_reports_swap_dimension() {
    let v = stdout_json(&qsync(&["attractors", config("swap").to_str().unwrap()]));
    assert_eq!(v["summary"]["dimension_eig"], 10);
    assert_eq!(v["attractors"].as_array().unwrap().len(), 10);
}

#[test]
fn bad_input_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let mut cfg: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(config("l1_uncoupled_scenario1")).unwrap()).unwrap();
    cfg["unexpected"] = serde_json::json!(1);
    fs::write(&path, cfg.to_string()).unwrap();
    assert_eq!(qsync(&["run", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_qsync")).arg("presets").env("QSYNC_TOL", "nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
