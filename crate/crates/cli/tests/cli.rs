use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn killing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_killing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Negates the coefficient on the last line of an exported table.
fn corrupt(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.pop().unwrap();
    let mut fields: Vec<String> = last.split_whitespace().map(String::from).collect();
    fields[3] = match fields[3].strip_prefix('-') {
        Some(p) => p.to_string(),
        None => format!("-{}", fields[3]),
    };
    lines.push(fields.join(" "));
    std::fs::write(path, lines.join("\n") + "\n").unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["identify", "--sphere", "99"][..],
        &["identify"],
        &["frobnicate"],
        &["rep", "check", "--case", "e8"],
        &["verify", "jacobi", "--sphere", "7", "--mode", "sideways"],
        &["verify", "jacobi", "--sphere", "7", "--algebra", "/nonexistent/table.txt"],
    ] {
        let out = killing(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn identify_s8_is_f4() {
    let out = killing(&["identify", "--sphere", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["payload"]["dynkin_type"], "F4");
    assert_eq!(r["payload"]["signature"], serde_json::json!([0, 52, 0]));
}

#[test]
fn spinor_jacobi_scan_for_s15() {
    let out = killing(&["verify", "jacobi", "--sphere", "15", "--mode", "spinor"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["triples_checked"], 341_376);
    assert_eq!(r["payload"]["nonzero_jacobiators"], 0);
}

#[test]
fn sampled_jacobi_is_seeded() {
    let args = ["verify", "jacobi", "--sphere", "8", "--mode", "sample", "--seed", "3", "--count", "500"];
    let mut a = report(&killing(&args));
    let mut b = report(&killing(&args));
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
    assert_eq!(a["payload"]["triples_checked"], 500);
}

#[test]
fn exported_table_round_trips_and_corruption_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s7.txt");
    let p = path.to_str().unwrap();
    let out = killing(&["build", "--sphere", "7", "--export", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["payload"]["dim"], 36);

    let ok = killing(&["verify", "jacobi", "--sphere", "7", "--algebra", p]);
    assert_eq!(ok.status.code(), Some(0));
    let ok = killing(&["identify", "--sphere", "7", "--algebra", p]);
    assert_eq!(report(&ok)["payload"]["dynkin_type"], "B4");

    corrupt(&path);
    let bad = killing(&["verify", "jacobi", "--sphere", "7", "--algebra", p]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(report(&bad)["status"], "FAIL");

    let wrong_sphere = killing(&["verify", "jacobi", "--sphere", "8", "--algebra", p]);
    assert_eq!(wrong_sphere.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = killing(&["--out", path.to_str().unwrap(), "rep", "check", "--case", "d4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["status"], "PASS");
}

#[test]
fn geometry_check_s7() {
    let out = killing(&["geometry", "check", "--sphere", "7", "--points", "20", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["eq_KS_failures"], 0);
    assert_eq!(r["payload"]["killing_spinors"], 8);
    assert_eq!(r["payload"]["constants"]["s"], "2");
    assert_eq!(r["payload"]["constants"]["sign"], -1);
}

#[test]
fn report_all_is_deterministic_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s8.txt");
    let p = path.to_str().unwrap();
    assert_eq!(killing(&["build", "--sphere", "8", "--export", p]).status.code(), Some(0));

    let args = ["--threads", "2", "report", "all", "--seed", "0", "--points", "3"];
    let first = killing(&args);
    let second = killing(&args);
    assert_eq!(first.status.code(), Some(0));
    let (mut a, mut b) = (report(&first), report(&second));
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
    assert_eq!(a["payload"]["sections"].as_array().unwrap().len(), 19);

    corrupt(&path);
    let bad = killing(&["report", "all", "--points", "3", "--algebra", p]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(report(&bad)["status"], "FAIL");
}
