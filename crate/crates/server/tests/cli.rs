use std::path::Path;
use std::process::{Command, Output};

use rookie_core::synth::{generate, to_jsonl, SynthConfig};

fn rookie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rookie")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn indexed(dir: &Path) -> String {
    let corpus = dir.join("corpus.jsonl");
    std::fs::write(&corpus, to_jsonl(&generate(&SynthConfig::toy(7)))).unwrap();
    let idx = dir.join("idx");
    let out = rookie(&["index", corpus.to_str().unwrap(), "--out", idx.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("indexed 40 documents"));
    idx.to_str().unwrap().to_string()
}

#[test]
fn empty_corpus_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("empty.jsonl");
    std::fs::write(&corpus, "").unwrap();
    let out = rookie(&["index", corpus.to_str().unwrap(), "--out", dir.path().join("idx").to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no documents"));
}

#[test]
fn malformed_corpus_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("bad.jsonl");
    std::fs::write(&corpus, "{\"id\":\"a\",\"date\":\"2001-01-01\",\"text\":\"Hi.\"}\nnot json\n").unwrap();
    let out = rookie(&["index", corpus.to_str().unwrap(), "--out", dir.path().join("idx").to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn query_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let idx = indexed(dir.path());
    let table = stdout(&rookie(&["query", &idx, "--q", "haiti", "--seed", "9"]));
    assert!(table.lines().any(|l| l.starts_with("total_docs: ")));
    assert!(table.contains("subjects (page 0"));
    let json = stdout(&rookie(&["query", &idx, "--q", "president", "--seed", "9", "--json"]));
    let body: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(body["seed"], 9);
    assert!(body["total_docs"].as_u64().unwrap() > 0);
    let again = stdout(&rookie(&["query", &idx, "--q", "president", "--seed", "9", "--json"]));
    assert_eq!(json, again);
}

#[test]
fn bench_reports_percentiles() {
    let dir = tempfile::tempdir().unwrap();
    let idx = indexed(dir.path());
    let saved = dir.path().join("queries.jsonl");
    let out = stdout(&rookie(&["bench", &idx, "--generate", "20", "--save-queries", saved.to_str().unwrap()]));
    assert!(out.lines().any(|l| l.starts_with("p50: ")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("p99: ")), "{out}");
    assert!(out.contains("queries: 20"));

    let replay = stdout(&rookie(&["bench", &idx, "--queries", saved.to_str().unwrap(), "--json"]));
    let report: serde_json::Value = serde_json::from_str(&replay).unwrap();
    assert_eq!(report["queries"], 20);
    assert_eq!(report["errors"], 0);
}

#[test]
fn missing_index_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = rookie(&["query", dir.path().to_str().unwrap(), "--q", "aid"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("manifest"));
}

#[test]
fn snippet_length_report() {
    let dir = tempfile::tempdir().unwrap();
    let idx = indexed(dir.path());
    let out = stdout(&rookie(&["snippet-lengths", &idx, "--surround", "30,50"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3, "{out}");
    assert!(lines[0].contains("surround"));
    assert!(lines[2].trim_start().starts_with("50 "));
}
