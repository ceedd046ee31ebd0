use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lwp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lwp"))
        .args(args)
        .current_dir(dir)
        .env_remove("LWP_THREADS")
        .output()
        .expect("lwp runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn transform_of_constant_is_a_point_mass() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("const1.csv"),
        "x,value\n0,1\n1,1\n2,1\n3,1\n4,1\n",
    )
    .unwrap();
    let out = lwp(&["transform", "--p", "5", "--fn", "const1.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,re,im"));
    for (r, line) in lines.enumerate() {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols[0], r as f64);
        let expect = if r == 0 { 1.0 } else { 0.0 };
        assert!((cols[1] - expect).abs() < 1e-15 && cols[2].abs() < 1e-15);
    }
}

#[test]
fn exhaustive_search_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = lwp(&["search", "exhaustive", "--p", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert!(v["version"].as_str().is_some_and(|s| !s.is_empty()));
    assert_eq!(v["config"]["seed"], 0);
    assert!((v["result"]["s_p"].as_f64().unwrap() - 1.294427).abs() < 1e-6);
}

#[test]
fn construct_f_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = lwp(
            &[
                "construct",
                "F",
                "--p",
                "1009",
                "--report",
                name,
                "--out",
                "F.csv",
            ],
            dir.path(),
        );
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let checks = v["result"]["checks"]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .all(|c| c["pass"] == true && c["name"].is_string() && c["bound"].is_number()));
}

#[test]
fn failed_check_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = lwp(
        &["construct", "F", "--p", "101", "--report", "r.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g4_floor_ok"));
    // the report is still written
    let v: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn usage_and_io_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lwp(&["nonsense"], dir.path()).status.code(), Some(1));
    assert_eq!(
        lwp(
            &["transform", "--p", "5", "--fn", "missing.csv"],
            dir.path()
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        lwp(&["search", "exhaustive", "--p", "9"], dir.path())
            .status
            .code(),
        Some(1)
    );
    assert_eq!(lwp(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn decompose_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let p = 101;
    let mut csv = String::from("x,value\n");
    for x in 0..p {
        let v = (std::f64::consts::TAU * x as f64 / p as f64).cos() / 2.0;
        csv.push_str(&format!("{x},{v}\n"));
    }
    std::fs::write(dir.path().join("f.csv"), csv).unwrap();
    let out = lwp(
        &[
            "decompose",
            "--p",
            "101",
            "--fn",
            "f.csv",
            "--epsilon",
            "0.3",
            "--cert",
            "cert.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cert: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("cert.json")).unwrap()).unwrap();
    for key in ["params", "ledger", "bounds", "f1", "f2", "f3"] {
        assert!(!cert[key].is_null(), "missing {key}");
    }
    for key in ["f1", "f2", "f3"] {
        assert!(dir.path().join(cert[key].as_str().unwrap()).exists());
    }
    assert_eq!(cert["params"]["epsilon"], 0.3);
}

#[test]
fn locate_and_gowers_locate() {
    let dir = tempfile::tempdir().unwrap();
    let a: Vec<String> = (1..=50).map(|x| x.to_string()).collect();
    let b: Vec<String> = (0..50).map(|x| (2 * x).to_string()).collect();
    std::fs::write(dir.path().join("A.txt"), a.join("\n")).unwrap();
    std::fs::write(dir.path().join("B.txt"), b.join(",")).unwrap();
    let out = lwp(&["locate", "--p", "101", "--set", "A.txt"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert!(
        v["result"]["bound_8eps"].as_f64().unwrap() <= v["result"]["signed_l1"].as_f64().unwrap()
    );
    let out = lwp(
        &[
            "gowers-locate",
            "--p",
            "101",
            "--set-a",
            "A.txt",
            "--set-b",
            "B.txt",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert!(
        v["result"]["deviation"].as_f64().unwrap()
            <= 8.0 * v["result"]["epsilon"].as_f64().unwrap()
    );
}

#[test]
fn bohr_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = lwp(
        &[
            "bohr",
            "--p",
            "101",
            "--gamma",
            "1,5",
            "--eta",
            "1/10",
            "--regularize",
            "--delta",
            "1/20",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    for key in ["size", "lower_ok", "doubling_ok", "regular", "eta_used"] {
        assert!(!r[key].is_null(), "missing {key}");
    }
    assert_eq!(r["regular"], true);
}

#[test]
fn config_file_and_seed_flag() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        "# local search\nrun.seed = 3\n",
    )
    .unwrap();
    let from_file = lwp(
        &[
            "--config", "run.conf", "search", "local", "--p", "31", "--iters", "5",
        ],
        dir.path(),
    );
    let from_flag = lwp(
        &[
            "search", "local", "--p", "31", "--iters", "5", "--seed", "3",
        ],
        dir.path(),
    );
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(json(&from_file)["result"], json(&from_flag)["result"]);
    assert_eq!(json(&from_file)["config"]["seed"], 3);
    let bad = lwp(
        &["--config", "missing.conf", "search", "local", "--p", "31"],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn scaling_study_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = lwp(
        &[
            "study",
            "scaling",
            "--p-list",
            "13,103",
            "--out",
            "scaling.csv",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("scaling.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "p,s_lower_cert,interval_l1,minF_logp,dev_tilde_scaled,final_min_dev,seeds"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("13,"));
}

#[test]
fn gowers_set_writes_a_half_set() {
    let dir = tempfile::tempdir().unwrap();
    let out = lwp(
        &[
            "construct",
            "gowers-set",
            "--p",
            "1009",
            "--seed",
            "4",
            "--out",
            "A.txt",
            "--report",
            "rr.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = std::fs::read_to_string(dir.path().join("A.txt")).unwrap();
    assert_eq!(a.lines().count(), 504);
    let v: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("rr.json")).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 4);
}
