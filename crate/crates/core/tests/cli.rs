use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_triplet-walk");

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(config: &str, dir: &Path, extra: &[&str]) -> Output {
    let out = format!("--output.dir={}", dir.display());
    Command::new(BIN)
        .arg(config)
        .arg(out)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn simulate_hbs_writes_all_files() {
    let tmp = TempDir::new().unwrap();
    let cfg = configs().join("simulate_hbs.json");
    let o = run(cfg.to_str().unwrap(), tmp.path(), &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "simulate HBS 1.0000000000000000e0");
    for f in [
        "state.csv",
        "classification.csv",
        "density_matrix.csv",
        "trajectory.csv",
    ] {
        assert!(tmp.path().join(f).exists(), "{f}");
    }
    let mut rdr = csv::Reader::from_path(tmp.path().join("state.csv")).unwrap();
    let probs: Vec<f64> = rdr
        .records()
        .map(|r| r.unwrap()[3].parse().unwrap())
        .collect();
    let want = [0.25, 0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.25];
    for (p, w) in probs.iter().zip(want) {
        assert!((p - w).abs() <= 1e-9);
    }
    let mut rdr = csv::Reader::from_path(tmp.path().join("density_matrix.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap().len(), 16);
    assert_eq!(&rdr.headers().unwrap()[0], "re_000");
    assert_eq!(rdr.records().count(), 8);
}

#[test]
fn classify_inline_ghz() {
    let tmp = TempDir::new().unwrap();
    let cfg = configs().join("classify_ghz.json");
    let o = run(cfg.to_str().unwrap(), tmp.path(), &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "classify GHZ-like 1.0000000000000000e0");
    let rho = read_json(&tmp.path().join("density_matrix.json"));
    let re = &rho["re"];
    for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
        assert!((re[i][j].as_f64().unwrap() - 0.5).abs() < 1e-15);
    }
    assert_eq!(rho["basis"][4], "110");
}

#[test]
fn sweep_dbeta_reports_peaks() {
    let tmp = TempDir::new().unwrap();
    let cfg = configs().join("sweep_dbeta.json");
    let o = run(
        cfg.to_str().unwrap(),
        tmp.path(),
        &["--sweep_dbeta.z_samples=16"],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "sweep-dbeta 3 -2.0000,0.0000,4.0000");
    let o = run(
        cfg.to_str().unwrap(),
        tmp.path(),
        &["--params.c3=1", "--sweep_dbeta.z_samples=16"],
    );
    assert_eq!(stdout(&o), "sweep-dbeta 2 -1.0000,3.0000");
    let mut rdr = csv::Reader::from_path(tmp.path().join("output_norm.csv")).unwrap();
    let flagged = rdr
        .records()
        .filter(|r| &r.as_ref().unwrap()[2] == "true")
        .count();
    assert_eq!(flagged, 2);
}

#[test]
fn simulated_state_round_trips_through_classify() {
    let tmp = TempDir::new().unwrap();
    let sim = configs().join("simulate_hbs.json");
    let o = run(
        sim.to_str().unwrap(),
        tmp.path(),
        &["--output.format=json", "--params.delta_beta=0"],
    );
    assert!(o.status.success());
    let first = read_json(&tmp.path().join("classification.json"));
    assert_eq!(first["label"], "uniform");

    let state = tmp.path().join("state.json");
    let inline = format!(
        r#"{{"command": "classify", "classify": {{"state_file": {}}}, "output": {{"format": "json"}}}}"#,
        serde_json::to_string(&state).unwrap()
    );
    let again = tmp.path().join("again");
    let o = run(&inline, &again, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let second = read_json(&again.join("classification.json"));
    assert_eq!(first["label"], second["label"]);
    assert_eq!(first["probabilities"], second["probabilities"]);
}

#[test]
fn identical_configs_give_identical_files() {
    let cfg = configs().join("search_ghz.json");
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let extra = ["--search.budget=300"];
    let oa = run(cfg.to_str().unwrap(), a.path(), &extra);
    let ob = run(cfg.to_str().unwrap(), b.path(), &extra);
    assert!(oa.status.success());
    assert_eq!(oa.stdout, ob.stdout);
    for f in ["search.json", "best_state.json"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let line = stdout(&oa);
    let fid: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(fid >= 0.75, "{line}");
}

#[test]
fn check_and_enumerate_summaries() {
    let tmp = TempDir::new().unwrap();
    let o = run(
        configs().join("check_hbs.json").to_str().unwrap(),
        tmp.path(),
        &[],
    );
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("check 3 "), "{}", stdout(&o));
    let o = run(
        configs().join("enumerate_hbs1.json").to_str().unwrap(),
        tmp.path(),
        &[],
    );
    assert_eq!(stdout(&o), "enumerate 24 hbs1");
    assert!(tmp.path().join("family_hbs1.csv").exists());
}

fn status_and_error(o: &Output) -> (i32, Value) {
    let err: Value = serde_json::from_slice(&o.stderr).expect("stderr is a JSON record");
    (o.status.code().unwrap(), err)
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let cases: [(&str, &[&str], i32); 7] = [
        ("{not json", &[], 2),
        (r#"{"command": "teleport"}"#, &[], 2),
        (r#"{"command": "simulate"}"#, &["params.c1=1"], 2),
        (r#"{"command": "simulate", "params": {"c1": -1}}"#, &[], 3),
        (r#"{"command": "simulate", "tolerance": 0.7}"#, &[], 3),
        (r#"{"command": "classify"}"#, &[], 3),
        (r#"{"command": "simulate", "params": {"gamma": 0}}"#, &[], 4),
    ];
    for (cfg, extra, code) in cases {
        let o = run(cfg, tmp.path(), extra);
        let (status, err) = status_and_error(&o);
        assert_eq!(status, code, "{cfg}: {err}");
        assert_eq!(err["error"]["status"], code);
        assert!(o.stdout.is_empty());
    }
    let missing = run("/nonexistent/config.json", tmp.path(), &[]);
    assert_eq!(missing.status.code(), Some(2));
}
