mod common;

use std::fs;

use common::{cache_dir, json_ideal, model, ok, run, stderr, stdout};
use mlsing_core::Rationals;
use serde_json::Value;

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn inconsistent_ideal_has_basis_one() {
    let dir = cache_dir();
    let f = write(&dir, "i.json", r#"{"ring": {"vars": ["x"]}, "generators": ["x + 1", "x + 2"]}"#);
    assert_eq!(ok(&["gb", &f, "--no-cache"]), "1\n");
}

#[test]
fn lex_basis_and_elimination() {
    let dir = cache_dir();
    let f = write(
        &dir,
        "c.json",
        r#"{"ring": {"vars": ["x", "y", "z"]}, "generators": ["y - x^2", "z - x^3"]}"#,
    );
    let elim = ok(&["eliminate", &f, "--vars", "x", "--field", "q", "--no-cache"]);
    assert_eq!(elim.trim(), "y^3 - z^2");
    let gb = ok(&["gb", &f, "--order", "lex", "--no-cache"]);
    assert_eq!(gb, "x^2 - y\nx*y - z\nx*z - y^2\ny^3 - z^2\n");
}

#[test]
fn saturation_by_a_variable_and_by_an_ideal() {
    let dir = cache_dir();
    let f = write(&dir, "s.json", r#"{"ring": {"vars": ["x"]}, "generators": ["x^2"]}"#);
    assert_eq!(ok(&["saturate", &f, "--by", "x", "--no-cache"]), "1\n");
    let g = write(
        &dir,
        "t.json",
        r#"{"ring": {"vars": ["x", "y", "z"]}, "generators": ["x*y", "x*z"]}"#,
    );
    assert_eq!(ok(&["saturate", &g, "--by", "y", "--by", "z", "--no-cache"]), "x\n");
}

#[test]
fn raw_conic_dual() {
    let dir = cache_dir();
    let f = write(
        &dir,
        "conic.json",
        r#"{"ring": {"vars": ["p0", "p1", "p2"]}, "generators": ["p0*p2 - p1^2"], "field": "q"}"#,
    );
    assert_eq!(ok(&["dual", &f, "--raw", "--no-cache"]).trim(), "b1^2 - 4*b0*b2");
}

#[test]
fn parse_echoes_the_model() {
    let out = ok(&["parse", model("ternary").to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["states"], 3);
}

#[test]
fn empty_data_singular_locus_is_reported() {
    let m = model("cuspidal");
    let out = run(&["dsl", m.to_str().unwrap(), "--json", "--no-cache"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["generators"][0], "1");
    assert_eq!(v["note"], "data singular locus is empty");
    assert!(stderr(&out).contains("data singular locus is empty"));
}

#[test]
fn rational_recomputation_agrees() {
    let m = model("ternary");
    let out = ok(&["dsl", m.to_str().unwrap(), "--verify-q", "--json", "--no-cache"]);
    let q = ok(&["dsl", m.to_str().unwrap(), "--field", "q", "--json", "--no-cache"]);
    let qi = json_ideal(&q, Rationals);
    assert!(!qi.is_zero_ideal());
    assert!(out.contains("generators"));
}

#[test]
fn report_has_the_documented_fields() {
    let m = model("ternary");
    let v: Value =
        serde_json::from_str(&ok(&["run-all", m.to_str().unwrap(), "--json", "--no-cache"])).unwrap();
    for key in ["model", "field", "seed", "artifacts", "ml_degree", "theorem", "stats"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["sing", "dual", "dsl"] {
        assert!(v["artifacts"][key].is_array());
    }
    for key in ["lower_contained", "lower_equal", "upper_contains", "upper_equal", "dims", "edim"] {
        assert!(v["theorem"].get(key).is_some(), "missing theorem.{key}");
    }
}

#[test]
fn exit_codes() {
    let dir = cache_dir();
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["dsl", "/nonexistent/model"]), Some(2));

    let bad = write(&dir, "bad.model", "states: 3\neq: p0^2 -* p1\n");
    let out = run(&["dsl", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2:11"), "{}", stderr(&out));

    let nh = write(&dir, "nh.model", "states: 3\neq: p0^2 - p1\n");
    assert_eq!(code(&["dsl", &nh]), Some(2));
    let dbl = write(&dir, "dbl.model", "states: 2\neq: p0^2\n");
    assert_eq!(code(&["singular", &dbl, "--no-cache"]), Some(2));
    let m = model("determinantal");
    let m = m.to_str().unwrap();
    assert_eq!(code(&["dsl", m, "--field", "nonsense"]), Some(2));
    assert_eq!(code(&["dsl", m, "--max-pairs", "5", "--no-cache"]), Some(3));
}

#[test]
fn cache_is_content_addressed_and_transparent() {
    let dir = cache_dir();
    let m = model("ternary");
    let m = m.to_str().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();

    let cold = ok(&["run-all", m, "--json", "--cache-dir", c]);
    let files: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in &files {
        let name = f.file_name().unwrap().to_str().unwrap();
        let stem = name.strip_suffix(".json").expect("json entry");
        assert_eq!(stem.len(), 64);
        assert!(stem.chars().all(|ch| ch.is_ascii_hexdigit()));
    }

    let out = run(&["run-all", m, "--json", "--cache-dir", c, "-v"]);
    assert_eq!(stdout(&out), cold);
    assert!(stderr(&out).contains(" 0 misses"), "{}", stderr(&out));

    let env = common::bin()
        .args(["run-all", m, "--json"])
        .env("GBCACHE_DIR", c)
        .output()
        .unwrap();
    assert_eq!(stdout(&env), cold);

    for f in &files {
        fs::write(f, b"{ truncated").unwrap();
    }
    assert_eq!(ok(&["run-all", m, "--json", "--cache-dir", c]), cold);
    assert_eq!(ok(&["run-all", m, "--json", "--no-cache"]), cold);
}

#[test]
fn unusable_cache_directory_degrades_to_no_cache() {
    let dir = cache_dir();
    let blocker = write(&dir, "file", "x");
    let c = format!("{blocker}/sub");
    let m = model("ternary");
    let out = run(&["dsl", m.to_str().unwrap(), "--cache-dir", &c]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn help_lists_every_command() {
    let help = ok(&["--help"]);
    for name in ["gb", "eliminate", "saturate", "dsl", "mldeg", "check-theorem", "run-all"] {
        assert!(help.contains(name), "{name}");
    }
    assert!(help.contains("Reduced Groebner basis"));
}
