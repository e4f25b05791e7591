use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use svsplit_cli::Table;

fn svsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svsplit"))
        .args(args)
        .env_remove("SVSPLIT_TOL_PROFILE")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn strict_demo_passes() {
    let out = svsplit(&["split", "strict", "--demo", "strict"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["config"]["seed"], 0);
    assert!(r["results"]["max_residual"].as_f64().unwrap() <= 1e-8);
    assert!(r["passed"].as_bool().unwrap());
}

#[test]
fn infeasible_selection_is_a_certificate_failure() {
    let dir = tempfile::tempdir().unwrap();
    let req = r#"{
        "mode": "strict",
        "f1": {"type": "family", "name": "translating_ball", "params": {"n": 3}},
        "f2": {"type": "family", "name": "translating_ball", "params": {"n": 3, "direction": [0.0, 0.0]}},
        "selection": [[0.0, 0.0], [10.0, 0.0], [1.0, 0.0]]
    }"#;
    let path = write(dir.path(), "req.json", req);
    let out = svsplit(&["split", "strict", "--request", &path]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "InfeasibleSelection");
    assert_eq!(r["error"]["index"], 1);
    assert!(!r["error"]["input_error"].as_bool().unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    let out = svsplit(&[
        "split",
        "approx",
        "--demo",
        "approx-moving",
        "--epsilon",
        "0",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["error"]["kind"], "Config");

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"mode": "strict", "selection": [[0.0]], "extra": 1}"#,
    );
    assert_eq!(code(&svsplit(&["split", "strict", "--request", &bad])), 2);
    let sum = write(
        dir.path(),
        "sum.json",
        r#"{"mode": "sum", "selection": [[0.0, 0.0]]}"#,
    );
    assert_eq!(code(&svsplit(&["split", "strict", "--request", &sum])), 2);

    assert_eq!(code(&svsplit(&["--arc-points", "30", "example11"])), 2);
    assert_eq!(code(&svsplit(&["example11", "--deltas", "2.0"])), 2);
    assert_eq!(
        code(&svsplit(&[
            "--tol-profile",
            "sloppy",
            "chebyshev",
            "--body",
            "cube"
        ])),
        2
    );
    assert_eq!(code(&svsplit(&["no-such-command"])), 2);
}

#[test]
fn tolerance_profile_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_svsplit"))
        .args(["chebyshev", "--body", "cube"])
        .env("SVSPLIT_TOL_PROFILE", "strict")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["config"]["tol_profile"], "strict");
    assert_eq!(r["config"]["tolerances"]["feas"].as_f64().unwrap(), 1e-11);
}

#[test]
fn reports_are_byte_identical() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let runs: Vec<Output> = dirs
        .iter()
        .map(|d| {
            svsplit(&[
                "--seed",
                "7",
                "--out",
                d.path().to_str().unwrap(),
                "split",
                "surjection",
                "--demo",
                "surjection",
            ])
        })
        .collect();
    assert_eq!(runs[0].stdout, runs[1].stdout);
    for f in ["report.json", "trace.csv", "hypotheses.json"] {
        let a = std::fs::read(dirs[0].path().join(f)).unwrap();
        let b = std::fs::read(dirs[1].path().join(f)).unwrap();
        assert_eq!(a, b, "{f} differs");
    }
    // Monte Carlo Steiner point of a 3-D body: same seed, same bytes
    let a = svsplit(&[
        "--seed",
        "3",
        "steiner",
        "--body",
        "cube",
        "--samples",
        "4000",
    ]);
    let b = svsplit(&[
        "--seed",
        "3",
        "steiner",
        "--body",
        "cube",
        "--samples",
        "4000",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["config"]["seed"], 3);
}

#[test]
fn csv_round_trips_through_the_reader() {
    let dir = tempfile::tempdir().unwrap();
    let out = svsplit(&[
        "--out",
        dir.path().to_str().unwrap(),
        "split",
        "sum",
        "--demo",
        "sum",
        "--grid",
        "9",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let table = Table::load(&dir.path().join("trace.csv")).unwrap();
    assert_eq!(table.rows.len(), 9);
    let f1 = table.column("f1_0").unwrap();
    let results = r["results"]["trace"]["results"].as_array().unwrap();
    for (row, res) in f1.iter().zip(results) {
        assert_eq!(row.to_bits(), res["f1"][0].as_f64().unwrap().to_bits());
    }
    let mut again = Vec::new();
    table.write(&mut again).unwrap();
    assert_eq!(again, std::fs::read(dir.path().join("trace.csv")).unwrap());
    assert_eq!(
        r["artifacts"],
        serde_json::json!(["trace.csv", "hypotheses.json"])
    );
}

#[test]
fn pset_table_rows_fail_independently() {
    let out = svsplit(&["pset-table", "cube", "no-such-body"]);
    assert_eq!(code(&out), 2);
    let r = report(&out);
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["verdict"], "PSet");
    assert_eq!(rows[1]["error"]["kind"], "UnknownBody");

    let empty = svsplit(&["pset-table"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(report(&empty)["results"]["rows"], serde_json::json!([]));
}

#[test]
fn modulus_of_constant_maps_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let map = |c: f64| {
        format!(
            r#"{{"type":"grid_map","domain":{{"kind":"interval","a":0.0,"b":1.0,"n":4}},
                "bodies":[{b},{b},{b},{b}]}}"#,
            b = format!(r#"{{"type":"ball","center":[{c},0.0],"radius":1.0}}"#)
        )
    };
    let f1 = write(dir.path(), "f1.json", &map(0.0));
    let f2 = write(dir.path(), "f2.json", &map(0.5));
    let out_dir = dir.path().join("out");
    let out = svsplit(&[
        "--out",
        out_dir.to_str().unwrap(),
        "modulus",
        "--f1",
        &f1,
        "--f2",
        &f2,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["violation_count"], 0);
    let t = Table::load(&out_dir.join("modulus.csv")).unwrap();
    assert!(!t.rows.is_empty());
    for name in ["omega_f1", "omega_f2", "omega_g"] {
        assert!(t.column(name).unwrap().iter().all(|w| *w == 0.0), "{name}");
    }

    let short = write(
        dir.path(),
        "short.json",
        r#"{"type":"grid_map","domain":{"kind":"interval","a":0.0,"b":2.0,"n":2},
            "bodies":[{"type":"ball","center":[0.0,0.0],"radius":1.0},{"type":"ball","center":[0.0,0.0],"radius":1.0}]}"#,
    );
    assert_eq!(code(&svsplit(&["modulus", "--f1", &f1, "--f2", &short])), 2);
}

#[test]
fn modulus_families() {
    let out = svsplit(&["modulus", "--family", "translating_ball", "--grid", "11"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["violation_count"], 0);
    let out = svsplit(&["modulus", "--family", "tilting_segment", "--grid", "11"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["alpha"], "inf");
    assert_eq!(r["results"]["applicable"], false);
}

#[test]
fn geometry_commands() {
    let out = svsplit(&[
        "slice", "--body", "cube", "--normal", "1,1,1", "--offset", "0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["vertex_count"], 6);

    let square = r#"{"type":"vpolytope","vertices":[[0,0],[2,0],[2,2],[0,2]]}"#;
    let disk = r#"{"type":"ball","center":[0,0],"radius":1}"#;
    let r = report(&svsplit(&[
        "support",
        "--body",
        square,
        "--direction",
        "1,-1",
    ]));
    assert_eq!(r["results"]["value"].as_f64().unwrap(), 2.0);
    let r = report(&svsplit(&["chebyshev", "--body", square]));
    assert!((r["results"]["radius"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    let r = report(&svsplit(&["steiner", "--body", square]));
    assert_eq!(r["results"]["exact"], true);
    let r = report(&svsplit(&[
        "hausdorff",
        "--a",
        disk,
        "--b",
        r#"{"type":"ball","center":[3,4],"radius":2}"#,
    ]));
    assert!((r["results"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    let r = report(&svsplit(&[
        "minkowski",
        "sum",
        "--a",
        square,
        "--b",
        square,
    ]));
    assert_eq!(r["results"]["vertex_count"], 4);
    let r = report(&svsplit(&[
        "minkowski",
        "diff",
        "--a",
        square,
        "--b",
        r#"{"type":"vpolytope","vertices":[[0,0],[3,0]]}"#,
    ]));
    assert_eq!(r["results"]["empty"], true);
}

#[test]
fn example11_reports_the_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out = svsplit(&[
        "--arc-points",
        "720",
        "--out",
        dir.path().to_str().unwrap(),
        "example11",
        "--deltas",
        "0.05,0.01",
        "--curve-points",
        "5",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    let jump = r["results"]["extrapolated_jump"].as_f64().unwrap();
    assert!((jump - 1.0).abs() < 1e-2);
    let curve = Table::load(&dir.path().join("curve.csv")).unwrap();
    assert_eq!(curve.header, ["t", "a1", "a2", "a3"]);
    let last = curve.rows.last().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((last[1] - s).abs() < 1e-6 && (last[2] - s).abs() < 1e-6 && last[3].abs() < 1e-6);
}
