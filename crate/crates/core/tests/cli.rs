use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tailbound"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bounds_two_coins_p1_column() {
    let sys = data("two_coins.json");
    let o = run(&["bounds", "--system", sys.to_str().unwrap(), "--w", "0.3", "--z-grid", "0:0.1:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let p1 = headers.iter().position(|h| h == "p1").unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 21);
    for r in &rows {
        assert_eq!(r[p1].parse::<f64>().unwrap(), 0.75);
    }
    assert!(stderr(&o).contains("not supplied"));
}

#[test]
fn verify_reports_zero_violations_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["verify", "--seed", "1", "--count", "25", "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stderr(&o).contains(" 0 violations"), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["total_violations"], 0);
    assert_eq!(report["systems"], 25);
}

#[test]
fn stochastic_commands_require_seed() {
    for args in [
        &["verify"][..],
        &["calibrate", "--target", "theorem"][..],
        &["mc", "--family", "exponential"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("--seed"), "{}", stderr(&o));
    }
}

#[test]
fn young_outside_range_has_negative_witness() {
    let o = run(&["young", "--k", "0.9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let min = &v["single_k"]["min"];
    assert!((min["u"].as_f64().unwrap() - 1.215).abs() < 1e-9);
    assert!(min["delta"].as_f64().unwrap() < -0.0074);
    assert_eq!(v["violations"], 0);
}

#[test]
fn calibrate_output_is_stable_across_workers() {
    let one = run(&["calibrate", "--seed", "3", "--count", "30", "--target", "theorem", "--workers", "1"]);
    let eight = run(&["calibrate", "--seed", "3", "--count", "30", "--target", "theorem", "--workers", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
    let concentration = run(&[
        "calibrate", "--seed", "3", "--count", "30", "--target", "concentration", "--concentration-sum", "raw",
        "--format", "csv",
    ]);
    assert_eq!(concentration.status.code(), Some(0), "{}", stderr(&concentration));
    assert!(stdout(&concentration).starts_with("a_min,"));
}

#[test]
fn mc_flags_set_exit_status() {
    let common = ["mc", "--seed", "4", "--family", "exponential", "--n", "32", "--samples", "20000"];
    let ok = run(&common);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert_eq!(ok.stdout, run(&common).stdout);
    let mut corrupted = common.to_vec();
    corrupted.extend(["--bound-scale", "0.01"]);
    let bad = run(&corrupted);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).lines().skip(1).any(|l| l.ends_with(",1")));
}

#[test]
fn mc_discrete_needs_system() {
    let o = run(&["mc", "--seed", "1", "--family", "discrete"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--system"));
}

#[test]
fn extremal_table() {
    let o = run(&["extremal", "--n", "2,10001"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("10001,"));
    assert!(last.contains("0.96872930615146"));
}

#[test]
fn malformed_input_names_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"rvs\": [\n  {\"atoms\": [{\"x\": 1, \"q\": 1}]}\n]}").unwrap();
    let o = run(&["bounds", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2"), "{err}");

    std::fs::write(&path, r#"{"rvs": [{"atoms": [{"x": 1, "p": 1}]}]}"#).unwrap();
    let o = run(&["bounds", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mean"), "{}", stderr(&o));

    let o = run(&["bounds", "--system", "/nonexistent/system.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convolution_cap_suggests_mc() {
    // Four summands with 60 incommensurable atoms: 60⁴ joint outcomes.
    let rvs: Vec<String> = (0..4)
        .map(|i| {
            let atoms: Vec<String> = (0..60)
                .map(|k| {
                    let x = ((k as f64) + 2.0 + 0.1 * i as f64).sqrt() * if k % 2 == 0 { 1.0 } else { -1.0 };
                    format!("{{\"x\": {x}, \"p\": 1}}")
                })
                .collect();
            format!("{{\"atoms\": [{}]}}", atoms.join(","))
        })
        .collect();
    let doc = format!("{{\"rvs\": [{}], \"mode\": \"float\", \"standardize\": true}}", rvs.join(","));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(&path, doc).unwrap();
    let o = run(&["bounds", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`mc`"), "{}", stderr(&o));
}
