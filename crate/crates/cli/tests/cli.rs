use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const REFERENCE: &str = r#"
seed = 1

[field]
p = 3
h = 1
f = 1
s = 1
modulus = [0, 1]

[module]
a = [[["1"]], [["1"]]]

[sweep]
count = 20
rank = 2
"#;

fn dchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dchar")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn residue(v: &Value) -> &str {
    v[0][0].as_str().unwrap()
}

#[test]
fn crystal_reference_module() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ref.toml", REFERENCE);
    let out = dchar(&["crystal", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["m"], 2);
    // λ_1 ≡ 2 mod π, γ ≡ 2π mod π²
    assert_eq!(residue(&rec["lambda"][0]), "2");
    assert_eq!(rec["gamma"][0][0], "0");
    assert_eq!(rec["gamma"][1][0], "2");
    assert_eq!(rec["gamma_precision"], 16);
    assert_eq!(rec["gamma"].as_array().unwrap().len(), 16);
    assert!(rec["Gamma0"].is_null());
    assert_eq!(rec["Gamma"][1][0][0][0], "1");
    assert!(rec["certificates"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(rec["input"]["module"]["t"], serde_json::json!([["0"], ["1"]]));
}

#[test]
fn sweep_emits_records_and_csv_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ref.toml", REFERENCE);
    let cfg = cfg.to_str().unwrap();
    let first = dir.path().join("a.jsonl");
    let second = dir.path().join("b.jsonl");
    for out in [&first, &second] {
        let res = dchar(&["sweep", "--config", cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    }
    let text = std::fs::read_to_string(&first).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 20);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["index"], i);
        assert!(r["m"].as_u64().is_some_and(|m| (1..=2).contains(&m)));
    }
    let csv = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(csv.lines().count(), 21);
    assert!(csv.starts_with("index,rank,a1_residue,m,"));
    assert_eq!(text, std::fs::read_to_string(&second).unwrap());
    assert_eq!(csv, std::fs::read_to_string(dir.path().join("b.csv")).unwrap());

    let reseeded = dir.path().join("c.jsonl");
    dchar(&["sweep", "--config", cfg, "--seed", "2", "--out", reseeded.to_str().unwrap()]);
    assert_ne!(text, std::fs::read_to_string(&reseeded).unwrap());
}

#[test]
fn checks_pass_over_extension_field() {
    let dir = tempfile::tempdir().unwrap();
    // F_9 = F_3[x]/(x² + 1), q = 3, s = 2
    let text = REFERENCE.replace("s = 1\nmodulus = [0, 1]", "s = 2\nmodulus = [1, 0, 1]");
    let cfg = write_config(dir.path(), "s2.toml", &format!("trials = 20\nmax_order = 3\n{text}"));
    for task in ["witt-check", "jet-check", "characters", "crystal"] {
        let out = dchar(&[task, "--config", cfg.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{task}: {}", String::from_utf8_lossy(&out.stderr));
        let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(rec["certificates"].as_array().unwrap().iter().all(|c| c["pass"] == true), "{task}");
    }
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.toml", format!("bogus = 1\n{REFERENCE}")),
        ("q2.toml", REFERENCE.replace("p = 3", "p = 2")),
        ("bound.toml", format!("degree_bound = 6\n{REFERENCE}")),
        ("task.toml", format!("task = \"sweep\"\n{REFERENCE}")),
        ("digit.toml", REFERENCE.replace("[[[\"1\"]], [[\"1\"]]]", "[[[\"1\"]], [[\"3\"]]]")),
        ("syntax.toml", "[field\np = 3".to_string()),
    ];
    for (name, text) in cases {
        let cfg = write_config(dir.path(), name, &text);
        let out = dchar(&["crystal", "--config", cfg.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("config error"), "{name}");
    }
    let cfg = write_config(dir.path(), "ref.toml", REFERENCE);
    assert_eq!(code(&dchar(&["crystal", "--config", cfg.to_str().unwrap(), "--precision", "3"])), 2);
    assert_eq!(code(&dchar(&["crystal"])), 2);
    let err = dchar(&["crystal", "--config", dir.path().join("unknown.toml").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 1"));
}

#[test]
fn low_precision_fails_certification_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ref.toml", REFERENCE);
    let out_path = dir.path().join("low.jsonl");
    let out = dchar(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--precision",
        "4",
        "--pad",
        "0",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap().lines().count(), 20);
}

#[test]
fn selftest_passes() {
    let out = dchar(&["selftest"]);
    assert_eq!(code(&out), 0);
    let board = String::from_utf8_lossy(&out.stderr);
    assert!(board.contains("scoreboard: 12/12 criteria pass"), "{board}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 12);
}
