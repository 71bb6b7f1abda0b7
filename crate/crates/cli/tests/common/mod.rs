#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mlsing_core::groebner::{variety_contains, Engine, Ideal};
use mlsing_core::polyring::{Field, RingRef};
use mlsing_core::textio::{parse_polynomial, IdealDoc};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mlsing"))
}

pub fn model(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(format!("{name}.model"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn mlsing")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Run and require exit status 0, returning stdout.
pub fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "mlsing {args:?} failed with {:?}: {}",
        out.status.code(),
        stderr(&out)
    );
    stdout(&out)
}

/// Parse an ideal document printed with `--json`.
pub fn json_ideal<F: Field>(text: &str, field: F) -> Ideal<F> {
    IdealDoc::from_json(text)
        .expect("ideal document")
        .to_ideal(field, mlsing_core::polyring::MonomialOrder::GrevLex)
        .expect("ideal")
}

pub fn ideal<F: Field>(ring: &RingRef<F>, gens: &[impl AsRef<str>]) -> Ideal<F> {
    Ideal::new(
        ring,
        gens.iter()
            .map(|g| parse_polynomial(g.as_ref(), ring).expect("polynomial"))
            .collect(),
    )
}

pub fn same_variety<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> bool {
    let engine = Engine::unlimited();
    variety_contains(a, b, &engine).expect("radical membership")
        && variety_contains(b, a, &engine).expect("radical membership")
}

pub fn cache_dir() -> tempfile::TempDir {
    tempfile::tempdir().expect("temp dir")
}
