use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hv")).args(args).output().expect("hv runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run_golden(task: &str, config: &str, expected: &str) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = hv(&[task, "--config", golden(config).to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got = std::fs::read_to_string(&out).unwrap();
    let want = std::fs::read_to_string(golden(expected)).unwrap();
    assert_eq!(got, want, "output drifted from {expected}");
}

#[test]
fn golden_prob() {
    run_golden("prob", "prob_qm.config.json", "prob_qm.json");
}

#[test]
fn golden_chsh() {
    run_golden("chsh", "chsh_fhv.config.json", "chsh_fhv.json");
}

#[test]
fn golden_scan() {
    run_golden("scan", "scan_chsh_fhv.config.json", "scan_chsh_fhv.csv");
}

#[test]
fn scan_header_and_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"model":{"family":"qm"},"scan":{"inequality":"leggett","variable":"phi","start":0,"end":"90deg","steps":100}}"#,
    )
    .unwrap();
    let o = hv(&["scan", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "variable,value_of_variable,inequality,value,bound,margin,violated");
    let rows: Vec<(f64, bool)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[6] == "true")
        })
        .collect();
    assert_eq!(rows.len(), 100);
    let step = (std::f64::consts::PI / 2.0) / 99.0;
    let edge = 2.0 * (1.0 / std::f64::consts::PI).asin();
    // violated strictly inside the window, not beyond it
    for (phi, violated) in &rows[1..] {
        if *phi < edge - step {
            assert!(violated, "phi = {phi}");
        }
        if *phi > edge + step {
            assert!(!violated, "phi = {phi}");
        }
    }
}

#[test]
fn chsh_eta_crossing_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"scan":{"inequality":"chsh","variable":"eta","start":0,"end":1,"steps":101}}"#).unwrap();
    let o = hv(&["scan", "--config", cfg.to_str().unwrap(), "--model", "fhv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let first_ok = text
        .lines()
        .skip(1)
        .find(|l| l.ends_with("false"))
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .unwrap();
    assert!((first_ok - (2f64.sqrt() - 1.0)).abs() <= 0.01, "{first_ok}");
}

#[test]
fn single_tasks_echo_inputs() {
    let o = hv(&["correlator", "--model", "thv", "--zeta", "1", "--n", "20000", "--seed", "9", "--shards", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["model"]["zeta"], 1.0);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["monte_carlo"]["n"], 20000);
    assert_eq!(v["monte_carlo"]["shards"], 3);
    for key in ["analytic", "z_score", "settings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let again = hv(&["correlator", "--model", "thv", "--zeta", "1", "--n", "20000", "--seed", "9", "--shards", "3"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    let o = hv(&["chsh", "--model", "thv", "--zeta", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positivity audit"));

    let o = hv(&["chsh", "--model", "fhv", "--eta", "-0.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hv(&["chsh", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hv(&["scan"]);
    assert_eq!(o.status.code(), Some(2), "scan without a scan block");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"model":{"family":"fhv","etaa":0.1}}"#).unwrap();
    let o = hv(&["chsh", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = hv(&["chsh", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let unwritable = dir.path().join("no/such/dir/out.json");
    let o = hv(&["chsh", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_report_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("v.json");
    // smaller Monte-Carlo sizes keep this quick; the claim list is unchanged
    std::fs::write(&cfg, r#"{"sampling":{"n":20000,"seed":3},"verify":{"trial_n":2000}}"#).unwrap();
    let outs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("r{i}.json"));
            let o = hv(&["verify", "--config", cfg.to_str().unwrap(), "--out", path.to_str().unwrap()]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            std::fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1], "same seed must give identical bytes");

    let v: Value = serde_json::from_slice(&outs[0]).unwrap();
    let top: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(top, ["claims", "seed", "suite", "versions"]);
    let suite: Vec<&str> = v["suite"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(suite, ["failed", "flagged", "name", "passed", "total"]);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["suite"]["failed"], 0);
    assert_eq!(v["suite"]["flagged"], 2);
    for claim in v["claims"].as_array().unwrap() {
        for key in ["id", "description", "reference_value", "computed_value", "abs_diff", "tolerance", "status"] {
            assert!(claim.get(key).is_some(), "claim lacks {key}");
        }
    }
    let flagged: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "discrepancy-flagged")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(flagged, ["branciard.fhv.window_center", "chsh.thv.coefficient"]);
}

#[test]
fn zero_tolerance_fails_every_monte_carlo_claim() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("v.json");
    std::fs::write(&cfg, r#"{"sampling":{"n":20000},"verify":{"tolerance":0,"trial_n":1000}}"#).unwrap();
    let path = dir.path().join("r.json");
    let o = hv(&["verify", "--config", cfg.to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    for c in v["claims"].as_array().unwrap() {
        let id = c["id"].as_str().unwrap();
        if id.starts_with("mc.") || id == "property.fhv_marginal" {
            assert_eq!(c["status"], "fail", "{id}");
        }
    }
}
