#![allow(dead_code)]

use std::path::PathBuf;

pub fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_file(name: &str) -> String {
    corpus().join(name).to_string_lossy().into_owned()
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(corpus().join(name)).unwrap()
}

/// Every instance file in the corpus, sorted.
pub fn instances() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".of") || n.ends_with(".json"))
        .collect();
    v.sort();
    v
}

/// A fresh scratch directory under the system temp dir.
pub fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hornfit-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

pub fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = hornfit_cli::run(std::iter::once("hornfit").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}
