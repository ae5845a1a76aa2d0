use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use supertriv_cli::ModuleFile;
use supertriv_core::endo::omega_k;
use supertriv_core::supermod;
use supertriv_core::Parity;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_supertriv"));
    c.env_remove("SUPERTRIV_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_module(dir: &TempDir, name: &str, m: &supertriv_core::Supermodule) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, ModuleFile::from_module(m).to_json()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = write_module(&dir, "o1.json", &omega_k(2, 1, Parity::Even).unwrap());
    let o = run(&["classify", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1, ev)\n");

    let p = write_module(&dir, "free.json", &supermod::exterior_regular(2).unwrap());
    let o = run(&["classify", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "NOT_ENDOTRIVIAL\n");
}

#[test]
fn validate_reports_relation_failure() {
    let dir = TempDir::new().unwrap();
    // e1 squares to t1 in q(1), but here e1² ≠ 0 while t1 = 0.
    let text = r#"{
  "actions": {
    "e1": [["0", "1"], ["1", "0"]],
    "t1": [["0", "0"], ["0", "0"]]
  },
  "algebra": {"family": "E", "rank": 1},
  "dim_even": 1,
  "dim_odd": 1
}
"#;
    let p = dir.path().join("bad.json");
    fs::write(&p, text).unwrap();
    let o = run(&["validate", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("RelationFailed"), "{o:?}");

    let good = write_module(&dir, "k.json", &omega_k(2, 0, Parity::Odd).unwrap());
    assert_eq!(run(&["validate", s(&good)]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn write_read_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p = write_module(&dir, "m.json", &omega_k(3, -1, Parity::Odd).unwrap());
    let original = fs::read_to_string(&p).unwrap();
    // Π twice is the identity and goes through a full read and write.
    let q = dir.path().join("pi.json");
    let r = dir.path().join("pipi.json");
    assert!(run(&["op", "pi", s(&p), "-o", s(&q)]).status.success());
    assert!(run(&["op", "pi", s(&q), "-o", s(&r)]).status.success());
    assert_eq!(fs::read_to_string(&r).unwrap(), original);
    assert_ne!(fs::read_to_string(&q).unwrap(), original);
}

#[test]
fn operations_syzygy_and_strip() {
    let dir = TempDir::new().unwrap();
    let k = write_module(&dir, "k.json", &omega_k(2, 0, Parity::Even).unwrap());
    let o1 = dir.path().join("o1.json");
    let o = run(&["syzygy", s(&k), "-n", "1", "-o", s(&o1)]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&run(&["classify", s(&o1)])), "(1, ev)\n");

    let om2 = dir.path().join("om2.json");
    assert!(run(&["syzygy", s(&k), "-n", "-2", "-o", s(&om2)]).status.success());
    assert_eq!(stdout(&run(&["classify", s(&om2)])), "(-2, ev)\n");

    let t = dir.path().join("t.json");
    assert!(run(&["op", "tensor", s(&o1), s(&o1), "-o", s(&t)]).status.success());
    assert_eq!(stdout(&run(&["classify", s(&t)])), "(2, ev)\n");

    let core = dir.path().join("core.json");
    let o = run(&["strip", s(&t), "-o", s(&core)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("projective summands: 1"), "{}", stdout(&o));
    let m = ModuleFile::from_json(&fs::read_to_string(&core).unwrap()).unwrap().to_module().unwrap();
    assert_eq!(m.dim(), 5);

    let d = dir.path().join("d.json");
    assert!(run(&["op", "dual", s(&t), "-o", s(&d)]).status.success());
    assert_eq!(stdout(&run(&["classify", s(&d)])), "(-2, ev)\n");

    let h = dir.path().join("h.json");
    assert!(run(&["op", "hom", s(&o1), s(&o1), "-o", s(&h)]).status.success());
    assert_eq!(stdout(&run(&["classify", s(&h)])), "(0, ev)\n");

    // Module to stdout when no -o is given.
    let o = run(&["op", "sum", s(&k), s(&o1)]);
    assert!(o.status.success());
    let m = ModuleFile::from_json(&stdout(&o)).unwrap().to_module().unwrap();
    assert_eq!(m.dim(), 4);
    assert_eq!(run(&["classify", s(&k), s(&o1)]).status.code(), Some(1));

    let res = dir.path().join("res.json");
    let o = run(&["op", "restrict", s(&o1), "--v", "1,-2", "-o", s(&res)]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&run(&["classify", s(&res)])), "(0, od)\n");

    let outer = dir.path().join("outer.json");
    assert!(run(&["op", "outer", s(&k), s(&k), "-o", s(&outer)]).status.success());
    let o = run(&["info", s(&outer)]);
    assert!(stdout(&o).contains("Exterior(4)"), "{}", stdout(&o));
}

#[test]
fn info_lists_structure() {
    let dir = TempDir::new().unwrap();
    let p = write_module(&dir, "free.json", &supermod::exterior_regular(2).unwrap());
    let o = stdout(&run(&["info", s(&p)]));
    assert!(o.contains("dimension: 2|2"), "{o}");
    assert!(o.contains("rk: 1"));
    assert!(o.contains("socle dim: 1"));
    assert!(o.contains("projective: true"));
}

#[test]
fn verify_rank_two() {
    let o = run(&["verify", "--rank", "2", "--range", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ALL PASS"));
}

#[test]
fn verify_json_and_seed_override() {
    let a = bin()
        .args(["verify", "--suite", "restriction", "--samples", "3", "--json"])
        .env("SUPERTRIV_SEED", "42")
        .output()
        .unwrap();
    assert!(a.status.success());
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(reports[0]["seed"], 42);
    let b = run(&["verify", "--suite", "restriction", "--samples", "3", "--json", "--seed", "42"]);
    let strip_times = |v: &[u8]| -> Vec<serde_json::Value> {
        let v: serde_json::Value = serde_json::from_slice(v).unwrap();
        v.as_array().unwrap().iter().map(|r| r["checks"].clone()).collect()
    };
    assert_eq!(strip_times(&a.stdout), strip_times(&b.stdout));
}
