use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwell"))
        .args(args)
        .output()
        .expect("run dwell")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data lines of a CSV output, provenance comment and header removed.
fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn count_table() {
    let o = dwell(&["count", "--hbar", "1,1/10,0.01,1/2000"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# dwell "));
    assert_eq!(lines[1], "hbar,1,1/10,1/100,1/2000");
    assert_eq!(lines[2], "states_below_ec,10,94,950,18980");
}

#[test]
fn period_rows_agree_below_barrier() {
    let o = dwell(&["period", "--emin", "-24", "--emax", "-0.001", "--samples", "100"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 100);
    for r in rows {
        let tq: f64 = r[1].parse().unwrap();
        let te: f64 = r[2].parse().unwrap();
        assert!((tq - te).abs() <= 1e-8 * te, "{r:?}");
    }
}

#[test]
fn period_above_barrier_leaves_closed_forms_blank() {
    let o = dwell(&["period", "--emin", "1e-3", "--emax", "10", "--samples", "4", "--log"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("E,T_quadrature,T_elliptic,T_asymptotic"));
    for r in data_rows(&text) {
        assert!(r[1].parse::<f64>().unwrap() > 0.0);
        assert_eq!((r[2].as_str(), r[3].as_str()), ("", ""));
    }
}

#[test]
fn spectrum_orders_doublets_even_first() {
    let o = dwell(&["spectrum", "--method", "sinc", "--hbar", "1"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[0][2], "even");
    assert_eq!(rows[1][2], "odd");
    let e0: f64 = rows[0][1].parse().unwrap();
    let e1: f64 = rows[1][1].parse().unwrap();
    let gap = e1 - e0;
    assert!(gap > 0.0 && gap < 1e-6, "gap {gap}");
}

#[test]
fn hermite_ground_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    let o = dwell(&[
        "spectrum", "--method", "hermite", "--hbar", "1", "--basis-size", "200", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().nth(1), Some("n,energy,parity,method,basis_size"));
    let rows = data_rows(&text);
    assert_eq!((rows[0][2].as_str(), rows[1][2].as_str()), ("even", "odd"));
    assert_eq!(rows[0][4], "200");
    let e: Vec<f64> = rows.iter().take(3).map(|r| r[1].parse().unwrap()).collect();
    assert!(e[1] - e[0] < 1e-6 * (e[2] - e[1]));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("rows to") && stderr.lines().count() == 1, "{stderr}");
}

#[test]
fn spectrum_json_and_side_file() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("spec.json");
    let out = dir.path().join("sub/levels.json");
    let o = dwell(&[
        "spectrum",
        "--method",
        "ebk",
        "--hbar",
        "1",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--json",
        side.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["provenance"]["tool"], "dwell");
    assert_eq!(doc["data"]["levels"].as_array().unwrap().len(), 10);
    let spec: serde_json::Value = serde_json::from_str(&fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(spec["method"], "ebk");
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(dwell(&["spectrum", "--method", "sinc", "--hbar", "0"]).status.code(), Some(2));
    assert_eq!(dwell(&["spectrum", "--method", "nope", "--hbar", "1"]).status.code(), Some(2));
    assert_eq!(dwell(&["--a", "2", "count", "--hbar", "1"]).status.code(), Some(2));
    assert_eq!(
        dwell(&["period", "--emin", "-30", "--emax", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dwell(&["converge", "--method", "sinc", "--hbar", "1", "--level", "1", "--sizes", "300", "--ref", "200"])
            .status
            .code(),
        Some(2)
    );
    // numeric failure: no levels in the fit window
    let o = dwell(&["lyapunov", "--hbar", "1/100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fit"));
    assert_eq!(dwell(&["--help"]).status.code(), Some(0));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let path = dir.path().join(name);
        let o = dwell(&[
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
            "tunneling",
            "--hbar",
            "1/5,1/10,1/20",
        ]);
        assert!(o.status.success());
        fs::read(&path).unwrap()
    };
    let first = run("t.csv", "1");
    let second = run("t.csv", "1");
    assert_eq!(first, second);
    // only the provenance line records the worker count
    let wide = run("t4.csv", "4");
    let body = |b: &[u8]| String::from_utf8(b.to_vec()).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&first), body(&wide));
}

fn write_plan(dir: &Path, tasks: &str) -> String {
    let p = dir.join("plan.json");
    fs::write(&p, tasks).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sweep_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plan = write_plan(
        dir.path(),
        &format!(
            r#"{{"tasks": [
                {{"key": "b-ok", "args": ["count", "--hbar", "1,1/10", "--out", "{d}/b.csv"]}},
                {{"key": "a-bad", "args": ["spectrum", "--method", "sinc", "--hbar", "0", "--out", "{d}/a.csv"]}},
                {{"key": "c-ok", "args": ["period", "--emin", "-20", "--emax", "-1", "--out", "{d}/c.csv"]}}
            ]}}"#
        ),
    );
    let o = dwell(&["sweep", "--plan", &plan]);
    assert_eq!(o.status.code(), Some(2));
    let rows = data_rows(&stdout(&o));
    let keys: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(keys, ["a-bad", "b-ok", "c-ok"]);
    assert_eq!(rows[0][1], "failed");
    assert_eq!(rows[1][1], "ok");
    assert_eq!(rows[2][1], "ok");
    assert!(dir.path().join("b.csv").exists());
    assert!(dir.path().join("c.csv").exists());
    assert!(!dir.path().join("a.csv").exists());

    let o = dwell(&["--workers", "1", "--fail-fast", "sweep", "--plan", &plan]);
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows[1][1], "skipped");
}

#[test]
fn empty_sweep_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), r#"{"tasks": []}"#);
    let o = dwell(&["sweep", "--plan", &plan]);
    assert!(o.status.success());
    assert!(data_rows(&stdout(&o)).is_empty());
    let bad = write_plan(dir.path(), r#"{"tasks": [{"args": ["count"], "extra": 1}]}"#);
    assert_eq!(dwell(&["sweep", "--plan", &bad]).status.code(), Some(2));
}

#[test]
fn lyapunov_json_fields() {
    let o = dwell(&["--format", "json", "lyapunov", "--hbar", "1/1000"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = &doc["data"];
    for k in ["slope", "intercept", "r2", "n_points", "theory_slope", "theory_intercept"] {
        assert!(!d[k].is_null(), "{k}");
    }
    let slope = d["slope"].as_f64().unwrap();
    let theory = d["theory_slope"].as_f64().unwrap();
    assert!((slope - theory).abs() < 0.1 * theory.abs());
}
