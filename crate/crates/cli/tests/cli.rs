use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn lbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbs")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lbs(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn free_pair_has_no_levels() {
    let v = json(&["--json", "spectrum", "--mu1", "0", "--mu2", "0"]);
    let r = &v["results"];
    assert_eq!(r["count_below"], 0);
    assert_eq!(r["count_above"], 0);
    for key in ["s", "a12", "mix", "full"] {
        assert_eq!(r[key]["below"], Value::Array(vec![]));
        assert_eq!(r[key]["above"], Value::Array(vec![]));
    }
}

#[test]
fn spectrum_side_filter_and_mirror() {
    let below = json(&["--json", "spectrum", "--mu1", "-20", "--mu2", "-20", "--side", "below"]);
    let above = json(&["--json", "spectrum", "--mu1", "20", "--mu2", "20", "--side", "above"]);
    let energies = |v: &Value, side: &str| -> Vec<f64> {
        let mut out = Vec::new();
        for l in v["results"]["full"][side].as_array().unwrap() {
            for _ in 0..l["multiplicity"].as_u64().unwrap() {
                out.push(l["energy"].as_f64().unwrap());
            }
        }
        out
    };
    let b = energies(&below, "below");
    let mut a: Vec<f64> = energies(&above, "above").iter().map(|x| 24.0 - x).collect();
    a.sort_by(f64::total_cmp);
    assert!(above["results"]["full"].get("below").is_none());
    assert_eq!(b.len(), 4);
    for (x, y) in b.iter().zip(&a) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn consts_values() {
    let v = json(&["--json", "consts"]);
    let r = &v["results"];
    let expect = [
        ("a11_0", 0.126365504929),
        ("a12_0", 0.105406862934),
        ("a22_0", 0.258193029576),
        ("a_a12_0", 0.0926187285128),
        ("mu0", 5.87307125077),
        ("mu2_crit", 10.7969523665),
        ("kappa", 0.021516085798),
    ];
    for (k, x) in expect {
        assert!((r[k].as_f64().unwrap() - x).abs() < 1e-10, "{k}");
    }
}

#[test]
fn text_output_is_key_value() {
    let out = lbs(&["consts"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "a11_0 = 0.126365504929"), "{s}");
}

#[test]
fn verify_deep_pair_passes() {
    let out = lbs(&["--json", "verify", "--mu1", "-20", "--mu2", "-10", "--grid", "12"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["status"], "PASS");
}

fn phase(dir: &Path, name: &str) -> String {
    let path = dir.join(name);
    let out = lbs(&["phase-diagram", "--mu1", "-60:60:7", "--mu2", "-60:60:5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn phase_diagram_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = phase(dir.path(), "a.csv");
    let b = phase(dir.path(), "b.csv");
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(
        lines.next(),
        Some("mu1,mu2,a_minus,a_plus,b_minus,b_plus,sum_below,sum_above,det_below,det_above,flags")
    );
    assert_eq!(lines.count(), 35);
}

#[test]
fn phase_diagram_verify_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let v = json(&["--json", "phase-diagram", "--mu1", "-30:30:4", "--mu2", "-30:30:4", "--verify", "--out", path.to_str().unwrap()]);
    assert_eq!(v["results"]["determinant_mismatches"], 0);
    assert_eq!(v["results"]["rows"], 16);
}

#[test]
fn curves_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = lbs(&["curves", "--side", "minus", "--mu1", "-20:20:9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let s = std::fs::read_to_string(path).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("mu1,mu2_curve"));
    assert!(lines.count() >= 8);
}

#[test]
fn eigenfunction_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = json(&["--json", "spectrum", "--mu1", "-8", "--mu2", "-8"]);
    let z = spec["results"]["s"]["below"][0].as_f64().unwrap();
    let path = dir.path().join("f.csv");
    let zs = z.to_string();
    let out = lbs(&[
        "--json", "eigenfunction", "--mu1", "-8", "--mu2", "-8", "--z", &zs, "--samples", "4", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = std::fs::read_to_string(path).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("p1,p2,p3,f"));
    assert_eq!(lines.count(), 64);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&lbs(&["--bogus", "consts"])), 2);
    assert_eq!(code(&lbs(&["nosuch"])), 2);
    // Inside the band.
    assert_eq!(code(&lbs(&["afuncs", "--z", "3"])), 2);
    assert_eq!(code(&lbs(&["--grid-n", "7", "consts"])), 2);
    assert_eq!(code(&lbs(&["verify", "--mu1", "0", "--mu2", "0", "--K", "1,2"])), 2);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"quadrature_n": 32, "edge_delta": 0.2, "json": true}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&["--config", c, "spectrum", "--mu1", "0", "--mu2", "0"]);
    assert_eq!(v["inputs"]["quadrature_n"], 32);
    assert_eq!(v["inputs"]["edge_delta"], 0.2);
    let v = json(&["--config", c, "--quadrature-n", "48", "spectrum", "--mu1", "0", "--mu2", "0"]);
    assert_eq!(v["inputs"]["quadrature_n"], 48);

    std::fs::write(&cfg, r#"{"unknown_key": 1}"#).unwrap();
    assert_eq!(code(&lbs(&["--config", c, "consts"])), 2);
}
