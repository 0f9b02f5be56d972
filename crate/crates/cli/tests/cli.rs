use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn twistlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not a report: {e}\n{}", stderr(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn z5_squared(dir: &Path) {
    write(dir, "z5.group", "group Z5xZ5\nbuiltin abelian divisors=5,5\n");
    // e1 = (1,0) has index 5 and e2 = (0,1) has index 1
    write(dir, "std.twist", "twist std\ngroup z5.group\ngenerators 5 1\nform form[5,5][[0,1],[4,0]]\n");
    write(dir, "std2.twist", "# twice the standard form\ntwist std2\ngroup z5.group\ngenerators 5 1\nform form[5,5][[0,2],[3,0]]\n");
}

#[test]
fn unknown_scenario_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let out = twistlab(dir.path(), &["--no-cache", "run", "nosuch"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("nosuch"));
}

#[test]
fn help_and_usage_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&twistlab(dir.path(), &["--help"])), 0);
    assert_eq!(code(&twistlab(dir.path(), &["frobnicate"])), 3);
    assert_eq!(code(&twistlab(dir.path(), &["run", "asp", "--p", "x"])), 3);
    assert_eq!(code(&twistlab(dir.path(), &["--no-cache", "run", "asp", "--param", "q=1"])), 3);
}

#[test]
fn reports_are_byte_identical_without_cache() {
    let dir = TempDir::new().unwrap();
    let a = twistlab(dir.path(), &["--no-cache", "--out", "a.json", "run", "quadratic", "--n", "2"]);
    let b = twistlab(dir.path(), &["--no-cache", "--out", "b.json", "run", "quadratic", "--n", "2"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(code(&b), 0);
    let ra = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(ra, std::fs::read(dir.path().join("b.json")).unwrap());
    assert_eq!(ra, a.stdout);
    assert!(!dir.path().join(".twistlab-cache").exists());
}

#[test]
fn cache_hits_invalidation_and_corruption() {
    let dir = TempDir::new().unwrap();
    let args = ["--cache-dir", "c", "run", "asp", "--n", "2"];
    let first = twistlab(dir.path(), &args);
    assert!(stderr(&first).contains("cache miss"));
    let second = twistlab(dir.path(), &args);
    assert!(stderr(&second).contains("cache hit"), "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);

    // a changed cap is part of the key
    let capped = twistlab(dir.path(), &["--cache-dir", "c", "--enum-cap", "9999", "run", "asp", "--n", "2"]);
    assert!(stderr(&capped).contains("cache miss"));
    assert_eq!(json(&capped)["config"]["enum_cap"], 9999);

    // a damaged entry is detected by its checksum and recomputed
    let mut entries = Vec::new();
    for sub in std::fs::read_dir(dir.path().join("c")).unwrap() {
        for f in std::fs::read_dir(sub.unwrap().path()).unwrap() {
            entries.push(f.unwrap().path());
        }
    }
    assert_eq!(entries.len(), 2);
    for e in &entries {
        let text = std::fs::read_to_string(e).unwrap();
        std::fs::write(e, text.replace("24", "25")).unwrap();
    }
    let third = twistlab(dir.path(), &args);
    assert!(stderr(&third).contains("cache miss"), "{}", stderr(&third));
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn config_file_and_flags() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.toml", "seed = 11\ntable_cap = 600\ncache_dir = \"elsewhere\"\n");
    let out = twistlab(dir.path(), &["--config", "cfg.toml", "--seed", "12", "run", "asp"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["config"]["seed"], 12);
    assert_eq!(r["config"]["table_cap"], 600);
    assert!(r["config"].get("cache_dir").is_none());
    assert!(dir.path().join("elsewhere").is_dir());

    write(dir.path(), "bad.toml", "seed = 1\nspeed = 2\n");
    let out = twistlab(dir.path(), &["--config", "bad.toml", "run", "asp"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("speed"));
}

#[test]
fn scenario_files_expectations_and_parameters() {
    let dir = TempDir::new().unwrap();
    let scenario = r#"
name = "small"

[parameters]
n = 2

[[steps]]
name = "group"
op = "asp.group"
args = { n = "$n" }
expect = { values = { order = 24, dual_order = 4 } }

[[steps]]
name = "example"
op = "quadratic.example"
args = { n = "$n" }
expect = { status = "pass", values = { coboundary_feasible = true } }
"#;
    write(dir.path(), "small.toml", scenario);
    let ok = twistlab(dir.path(), &["--no-cache", "run", "small.toml"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    let r = json(&ok);
    assert_eq!(r["scenario"], "small");
    assert_eq!(r["steps"][1]["values"]["coboundary_feasible"], true);

    // n = 4 breaks both value expectations
    let bad = twistlab(dir.path(), &["--no-cache", "run", "small.toml", "--param", "n=4"]);
    assert_eq!(code(&bad), 1);
    let r = json(&bad);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["steps"][0]["expectation_failures"].as_array().unwrap().len(), 2);
    assert_eq!(r["steps"][1]["expectation_failures"].as_array().unwrap().len(), 1);
}

#[test]
fn hard_errors_skip_later_steps() {
    let dir = TempDir::new().unwrap();
    let scenario = r#"
name = "broken"

[[steps]]
name = "odd"
op = "asp.group"
args = { n = 3 }

[[steps]]
name = "after"
op = "asp.group"
"#;
    write(dir.path(), "broken.toml", scenario);
    let out = twistlab(dir.path(), &["--no-cache", "run", "broken.toml"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["steps"][0]["status"], "fail");
    assert!(r["steps"][0]["error"].as_str().unwrap().contains("invalid parameter"));
    assert_eq!(r["steps"][1]["status"], "skipped");
}

#[test]
fn scenario_parse_and_type_errors() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "syntax.toml", "name = \"x\"\n\n[[steps]\nop = 1\n");
    let out = twistlab(dir.path(), &["run", "syntax.toml"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    write(dir.path(), "unknown_op.toml", "name = \"x\"\n[[steps]]\nname = \"a\"\nop = \"no.such\"\n");
    assert_eq!(code(&twistlab(dir.path(), &["run", "unknown_op.toml"])), 3);

    write(dir.path(), "bad_type.toml", "name = \"x\"\n[[steps]]\nname = \"a\"\nop = \"asp.group\"\nargs = { n = \"two\" }\n");
    let out = twistlab(dir.path(), &["run", "bad_type.toml"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("must be of type integer"), "{}", stderr(&out));

    write(dir.path(), "bad_param.toml", "name = \"x\"\n[[steps]]\nname = \"a\"\nop = \"asp.group\"\nargs = { n = \"$m\" }\n");
    assert_eq!(code(&twistlab(dir.path(), &["run", "bad_param.toml"])), 3);
}

#[test]
fn group_file_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "bad.group", "group G\nperm (1,2)\nperm (1,x)\n");
    let out = twistlab(dir.path(), &["enumerate", "bad.group", "--what", "forms"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn enumerate_listings() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "trivial.group", "group One\ntable 1\n0\n");
    for what in ["normal-abelian", "forms", "triangular", "twists"] {
        let out = twistlab(dir.path(), &["--no-cache", "enumerate", "trivial.group", "--what", what]);
        assert_eq!(code(&out), 0, "{what}: {}", stderr(&out));
        assert_eq!(json(&out)["steps"][0]["values"]["count"], 0, "{what}");
    }
    write(dir.path(), "c15.group", "group C15\nbuiltin abelian divisors=15\n");
    let out = twistlab(dir.path(), &["--no-cache", "enumerate", "c15.group", "--what", "forms"]);
    assert_eq!(json(&out)["steps"][0]["values"]["count"], 0);
    let out = twistlab(dir.path(), &["--no-cache", "enumerate", "c15.group", "--what", "normal-abelian"]);
    assert_eq!(json(&out)["steps"][0]["values"]["count"], 3);

    write(dir.path(), "h5.group", "group H5\nbuiltin heisenberg p=5\n");
    let out = twistlab(dir.path(), &["--no-cache", "enumerate", "h5.group", "--what", "triangular"]);
    let r = json(&out);
    assert_eq!(r["steps"][0]["values"]["count"], 24);
    assert_eq!(r["steps"][0]["values"]["group_order"], 125);

    z5_squared(dir.path());
    let out = twistlab(dir.path(), &["--no-cache", "enumerate", "z5.group", "--what", "twists"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["steps"][0]["values"]["count"], 4);
}

#[test]
fn verify_compose_and_commutator() {
    let dir = TempDir::new().unwrap();
    z5_squared(dir.path());
    let out = twistlab(dir.path(), &["--no-cache", "verify-twist", "z5.group", "std.twist"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = &json(&out)["steps"][0]["values"];
    assert_eq!(v["twist"], "std");
    assert_eq!(v["antisymmetric"], true);
    assert_eq!(v["nnz"], 625);

    let out = twistlab(dir.path(), &["--no-cache", "compose", "std.twist", "std2.twist"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = &json(&out)["steps"][0]["values"];
    assert_eq!(v["product.is_twist"], true);
    assert_eq!(v["circ.nondegenerate"], true);

    let out = twistlab(dir.path(), &["--no-cache", "commutator", "std.twist", "std2.twist"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["steps"][0]["values"]["commutator.trivial"], true);
}

#[test]
fn twist_file_errors() {
    let dir = TempDir::new().unwrap();
    z5_squared(dir.path());
    write(dir.path(), "bad.twist", "twist b\ngenerators 5 1\nform form[5,5][[0,1]\n");
    let out = twistlab(dir.path(), &["verify-twist", "z5.group", "bad.twist"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    // a twist without a group line cannot be composed
    write(dir.path(), "lonely.twist", "twist l\ngenerators 5 1\nform form[5,5][[0,1],[4,0]]\n");
    let out = twistlab(dir.path(), &["--no-cache", "compose", "lonely.twist", "std.twist"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["steps"][0]["error"].as_str().unwrap().contains("names no `group`"));

    // generators whose orders do not match the form
    write(dir.path(), "mismatch.twist", "twist m\ngenerators 5 0\nform form[5,5][[0,1],[4,0]]\n");
    let out = twistlab(dir.path(), &["--no-cache", "verify-twist", "z5.group", "mismatch.twist"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn classpreserving_on_heisenberg_three() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "h3.group", "group H3\nbuiltin heisenberg p=3\n");
    let out = twistlab(dir.path(), &["--no-cache", "classpreserving", "h3.group"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = &json(&out)["steps"][0]["values"];
    assert_eq!(v["aut_order"], 432);
    assert_eq!(v["inn_order"], 9);
}

#[test]
fn report_renderings_agree() {
    let dir = TempDir::new().unwrap();
    let machine = twistlab(dir.path(), &["--no-cache", "--out", "r.json", "run", "quadratic", "--n", "2"]);
    let human = twistlab(dir.path(), &["--no-cache", "--human", "run", "quadratic", "--n", "2"]);
    let rendered = twistlab(dir.path(), &["report", "--human", "r.json"]);
    assert_eq!(code(&rendered), 0);
    assert_eq!(rendered.stdout, human.stdout);
    let again = twistlab(dir.path(), &["report", "--machine", "r.json"]);
    assert_eq!(again.stdout, machine.stdout);
    assert_eq!(code(&twistlab(dir.path(), &["report", "--machine", "--human", "r.json"])), 3);
    write(dir.path(), "junk.json", "{\n  \"scenario\": 1\n}\n");
    let out = twistlab(dir.path(), &["report", "--human", "junk.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let plain = json(&twistlab(dir.path(), &["--no-cache", "run", "asp"]));
    assert!(plain.get("timing").is_none());
    let timed = json(&twistlab(dir.path(), &["--no-cache", "--timing", "run", "asp"]));
    assert!(timed["timing"]["asp"].is_number());
}
