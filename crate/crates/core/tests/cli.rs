//! End-to-end runs of the `ringlab` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Env {
    dir: TempDir,
}

impl Env {
    fn new() -> Env {
        Env { dir: TempDir::new().unwrap() }
    }

    fn cache(&self) -> PathBuf {
        self.dir.path().join("cache")
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_ringlab"))
            .args(args)
            .env("RINGLAB_CACHE", self.cache())
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Report with the timing section dropped.
fn stable(o: &Output) -> Value {
    let mut v = json(o);
    v.as_object_mut().unwrap().remove("runtime");
    v
}

const RUNNING: &str = "vars: x, y\nrelations: x*y, x^4 - y^2\n";
const CI3: &str = "vars: x, y, z\nrelations: x^2, y^2, z^2\n";
const CI4: &str = "vars: x, y, z, w\nrelations: x^2, y^2, z^2, w^2\n";

fn entries(dir: &Path) -> Vec<PathBuf> {
    fs::read_dir(dir)
        .map(|d| d.map(|e| e.unwrap().path()).collect())
        .unwrap_or_default()
}

#[test]
fn decompose_running_example() {
    let env = Env::new();
    let f = env.write("a.ring", RUNNING);
    let o = env.run(&["decompose", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let rels: Vec<String> = v["results"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["relations"][0].as_str().unwrap().to_string())
        .collect();
    assert_eq!(rels.len(), 2);
    assert!(rels.contains(&"x^5".to_string()) && rels.contains(&"y^3".to_string()), "{rels:?}");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn levin_passes_on_complete_intersection() {
    let env = Env::new();
    let f = env.write("ci.ring", CI3);
    let o = env.run(&["verify", "levin", f.to_str().unwrap(), "-N", "12"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn golod_fails_on_complete_intersection() {
    let env = Env::new();
    let f = env.write("ci.ring", CI3);
    let o = env.run(&["verify", "golod", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not Golod"), "{}", stderr(&o));
}

#[test]
fn length_eleven_refuses_long_rings() {
    let env = Env::new();
    let f = env.write("ci4.ring", CI4);
    let o = env.run(&["verify", "ggc6", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("out of theorem's range"));
    assert!(json(&o)["results"].get("best_effort_factors").is_some());
}

#[test]
fn short_check_names_are_accepted() {
    let env = Env::new();
    let f = env.write("a.ring", RUNNING);
    let f = f.to_str().unwrap();
    for check in ["ds4", "sbr2", "sbr3", "prl9_5", "ggc6", "pairing"] {
        let o = env.run(&["verify", check, f, "-N", "6"]);
        assert_eq!(code(&o), 0, "{check}: {}", stderr(&o));
    }
}

#[test]
fn betti_cache_round_trip() {
    let env = Env::new();
    let f = env.write("a.ring", RUNNING);
    let f = f.to_str().unwrap();
    let first = env.run(&["betti", f, "-N", "6"]);
    assert_eq!(code(&first), 0);
    assert!(stderr(&first).contains("cache: miss"));
    let second = env.run(&["betti", f, "-N", "6"]);
    assert!(stderr(&second).contains("cache: hit"));
    assert_eq!(stable(&first), stable(&second));
    assert_eq!(json(&first)["results"]["betti"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));

    // a different N or a different field is a different entry
    let o = env.run(&["betti", f, "-N", "7"]);
    assert!(stderr(&o).contains("cache: miss"));
    let g = env.write("b.ring", &format!("field: GF(101)\n{RUNNING}"));
    let o = env.run(&["betti", g.to_str().unwrap(), "-N", "6"]);
    assert!(stderr(&o).contains("cache: miss"));

    let o = env.run(&["--no-cache", "betti", f, "-N", "6"]);
    assert!(stderr(&o).contains("cache: disabled"));
    assert_eq!(stable(&o)["results"], stable(&first)["results"]);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let env = Env::new();
    let f = env.write("a.ring", RUNNING);
    let f = f.to_str().unwrap();
    let first = env.run(&["betti", f, "-N", "5"]);
    let files = entries(&env.cache());
    assert_eq!(files.len(), 1);
    fs::write(&files[0], "{ not json").unwrap();
    let o = env.run(&["betti", f, "-N", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("corrupt entry recomputed"), "{}", stderr(&o));
    assert_eq!(stable(&o)["results"], stable(&first)["results"]);
    let o = env.run(&["betti", f, "-N", "5"]);
    assert!(stderr(&o).contains("cache: hit"));
}

#[test]
fn usage_errors_exit_two() {
    let env = Env::new();
    let bad = env.write("bad.ring", "vars: x, y\nrelations: x^2, z^3\n");
    let o = env.run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let good = env.write("a.ring", RUNNING);
    let good = good.to_str().unwrap();
    assert_eq!(code(&env.run(&["verify", "bogus", good])), 2);
    assert_eq!(code(&env.run(&["verify", "dress", good])), 2);
    assert_eq!(code(&env.run(&["analyze", "missing.ring"])), 2);
}

#[test]
fn gen_is_deterministic_and_parses() {
    let env = Env::new();
    let args = ["gen", "inverse-system", "--vars", "3", "--socle-degree", "3", "--seed", "5"];
    let a = env.run(&args);
    let b = env.run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let f = env.write("g.ring", &stdout(&a));
    let o = env.run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn compose_then_decompose() {
    let env = Env::new();
    let s = env.write("s.ring", "vars: x\nrelations: x^5\n");
    let t = env.write("t.ring", "vars: y\nrelations: y^3\n");
    let o = env.run(&["compose", "connected", s.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let sum = env.write("sum.ring", &stdout(&o));
    let o = env.run(&["decompose", sum.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lengths: Vec<u64> = json(&o)["results"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lengths.iter().sum::<u64>(), 8);

    let o = env.run(&["compose", "fibre", s.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let fp = env.write("fp.ring", &stdout(&o));
    let o = env.run(&["verify", "dress", s.to_str().unwrap(), t.to_str().unwrap(), "-N", "6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&env.run(&["analyze", fp.to_str().unwrap()])), 0);
}

#[test]
fn markdown_and_report_file() {
    let env = Env::new();
    let f = env.write("a.ring", RUNNING);
    let out = env.dir.path().join("r.json");
    let o = env.run(&["--format", "markdown", "--report", out.to_str().unwrap(), "analyze", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with('#'), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(v["command"].as_array().unwrap().iter().any(|a| a == "analyze"));
}
