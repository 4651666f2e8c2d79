use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn eightv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eightv"))
        .args(args)
        .output()
        .expect("run eightv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, kind: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{kind}.8vx"));
    let mut args = vec!["gen", kind, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = eightv(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn exact_octahedron_uniform_is_128() {
    let dir = TempDir::new().unwrap();
    let oct = gen(dir.path(), "octahedron", &[]);
    let o = eightv(&[
        "exact",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1,1,1,1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "128\n");
    let o = eightv(&[
        "exact",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1/2,1,1,1",
        "--model",
        "ec",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).trim().contains('/') || stdout(&o).trim().parse::<u64>().is_ok());
}

#[test]
fn group_table_bipartite_has_twelve_rows_in_table_order() {
    let o = eightv(&["group-table", "--class", "bipartite", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let labels: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels.len(), 12);
    assert_eq!(labels[0], "I");
    assert_eq!(labels[5], "(M_Z^Bi)^5");
    assert_eq!(labels[6], "M_HZ^Bi");
    assert_eq!(labels[11], "(M_Z^Bi)^5 M_HZ^Bi");
    let text = stdout(&eightv(&["group-table", "--class", "bipartite"]));
    assert!(text.contains("order 12"));
}

#[test]
fn verify_all_passes() {
    let o = eightv(&["verify", "all", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for suite in [
        "holant",
        "groups",
        "bijection",
        "signs",
        "counting",
        "invariance",
        "preimage",
        "chain",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(suite)),
            "missing {suite}"
        );
    }
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn plan_outputs_json() {
    let o = eightv(&["plan", "--params", "1,1,5,1", "--class", "planar"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["element_word"], serde_json::json!(["M_Z^Pl", "M_Z^Pl"]));
    assert_eq!(v["image"], serde_json::json!(["3", "3", "3", "1"]));
    assert_eq!(v["flips"], serde_json::json!([]));
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn plan_failure_reports_diagnostics() {
    let o = eightv(&["plan", "--params", "10,1,1,1", "--class", "planar"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value =
        serde_json::from_slice(&o.stderr[..o.stderr.iter().rposition(|&b| b == b'}').unwrap() + 1])
            .unwrap();
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 6);
}

#[test]
fn census_csv_and_file_output() {
    let dir = TempDir::new().unwrap();
    let k = gen(dir.path(), "k44", &[]);
    let csv = dir.path().join("census.csv");
    let o = eightv(&[
        "census",
        "--graph",
        k.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n_A,n_B,n_C,n_D,count\n"));
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 512);
}

#[test]
fn gen_torus_round_trips_through_exact() {
    let dir = TempDir::new().unwrap();
    let t = gen(dir.path(), "torus", &["--rows", "2", "--cols", "4"]);
    let text = std::fs::read_to_string(&t).unwrap();
    assert!(text.starts_with("8vx-graph 1\nvertices 8 edges 16"));
    let o = eightv(&[
        "exact",
        "--graph",
        t.to_str().unwrap(),
        "--params",
        "1,1,1,1",
    ]);
    assert_eq!(stdout(&o), "512\n");
    let o = eightv(&["gen", "torus", "--rows", "1", "--cols", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_is_seeded_bit_strings() {
    let dir = TempDir::new().unwrap();
    let oct = gen(dir.path(), "octahedron", &[]);
    let args = [
        "sample",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "2,2,3,1",
        "--seed",
        "5",
        "-n",
        "20",
    ];
    let a = stdout(&eightv(&args));
    let b = stdout(&eightv(&args));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 20);
    assert!(a
        .lines()
        .all(|l| l.len() == 12 && l.chars().all(|c| c == '0' || c == '1')));
    let o = eightv(&[
        "sample",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1,1,1,1",
    ]);
    assert_eq!(o.status.code(), Some(2), "--seed is required");
}

#[test]
fn diagnose_chain_emits_tv_csv() {
    let dir = TempDir::new().unwrap();
    let oct = gen(dir.path(), "octahedron", &[]);
    let o = eightv(&[
        "diagnose-chain",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1,1,1,1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("steps,tv\n0,"));
    let last: f64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(last < 0.01);
}

#[test]
fn estimate_emits_value_plan_stages_diagnostics() {
    let dir = TempDir::new().unwrap();
    let oct = gen(dir.path(), "octahedron", &[]);
    let o = eightv(&[
        "estimate",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1,1,5,1",
        "--class",
        "planar",
        "--eps",
        "0.05",
        "--delta",
        "0.25",
        "--seed",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["value", "plan", "stages", "diagnostics"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["plan"]["label"], "(M_Z^Pl)^2");
    assert!(v["value"].as_f64().unwrap() > 0.0);

    let o = eightv(&[
        "estimate",
        "--graph",
        oct.to_str().unwrap(),
        "--params",
        "1,1,1,1",
        "--class",
        "bipartite",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(eightv(&["exact", "--graph"]).status.code(), Some(2));
    assert_eq!(
        eightv(&["group-table", "--class", "cubic"]).status.code(),
        Some(2)
    );
    assert_eq!(eightv(&["verify", "all"]).status.code(), Some(2));
    assert_eq!(
        eightv(&["plan", "--params", "1,1,1", "--class", "planar"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eightv(&["exact", "--graph", "/nonexistent", "--params", "1,1,1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eightv(&["plan", "--params", "1,1,1,1", "--class", "planar", "--bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn threads_flag_keeps_exact_output_stable() {
    let dir = TempDir::new().unwrap();
    let t = gen(dir.path(), "torus", &[]);
    let one = stdout(&eightv(&[
        "--threads",
        "1",
        "exact",
        "--graph",
        t.to_str().unwrap(),
        "--params",
        "2,3,5,7",
    ]));
    let many = stdout(&eightv(&[
        "--threads",
        "4",
        "exact",
        "--graph",
        t.to_str().unwrap(),
        "--params",
        "2,3,5,7",
    ]));
    assert_eq!(one, many);
}
