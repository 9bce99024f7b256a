mod common;

use common::data;
use steenrod_chow::cli::{run, EXIT_INVALID, EXIT_UNRESOLVED};

fn cli(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("steenrod-chow").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(rel: &str) -> String {
    data(rel).display().to_string()
}

#[test]
fn adem_examples() {
    assert_eq!(cli(&["adem", "--prime", "3", "--expr", "P^1 P^1"]), (0, "2 P^2\n".into(), String::new()));
    assert_eq!(cli(&["adem", "--prime", "2", "--expr", "P^3 P^1"]).1, "P^3 P^1\n");
    let (code, out, err) = cli(&["adem", "--prime", "2", "--expr", "P^1 + P^2"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.is_empty() && err.starts_with("error:"));
    assert_eq!(cli(&["adem", "--expr", "P^1"]).0, EXIT_INVALID);
    assert_eq!(cli(&["adem", "--prime", "4", "--expr", "P^1"]).0, EXIT_INVALID);
}

#[test]
fn act_examples() {
    assert_eq!(cli(&["act", "--prime", "2", "--rank", "1", "--op", "P^1", "--poly", "y1^3"]).1, "y1^4\n");
    assert_eq!(cli(&["act", "--prime", "3", "--rank", "2", "--op", "P^3", "--poly", "y1 y2"]).1, "0\n");
    for p in ["2", "3", "5"] {
        let out = cli(&["act", "--prime", p, "--rank", "1", "--op", "P^1", "--poly", "y1"]).1;
        assert_eq!(out, format!("y1^{p}\n"));
    }
    assert_eq!(cli(&["act", "--prime", "2", "--rank", "2", "--op", "P^1", "--poly", "y1 + y2^2"]).0, EXIT_INVALID);
}

#[test]
fn tv_of_cyclic_group_is_constant() {
    let (code, out, _) = cli(&["tv", "--group", &path("groups/zp.json"), "--rank", "1", "--cutoff", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "rank\tdegree\tdimension");
    for (k, line) in lines[1..6].iter().enumerate() {
        assert_eq!(*line, format!("1\t{k}\t2"));
    }
}

#[test]
fn reps_and_d0_examples() {
    let out = cli(&["reps", "--group", &path("groups/s3.json"), "--prime", "2", "--rank", "1"]).1;
    assert!(out.ends_with("classes = 2\n"));
    let out = cli(&["d0", "--group", &path("groups/klein.json"), "--cutoff", "6"]).1;
    assert_eq!(out.lines().next(), Some("d0 = 0 (verified-through-cutoff)"));
}

#[test]
fn json_mirrors_tsv() {
    let args = ["reps", "--group", &path("groups/d4.json"), "--rank", "2"];
    let tsv = cli(&args).1;
    let mut with_json = args.to_vec();
    with_json.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&cli(&with_json).1).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len() + 2, tsv.lines().count());
    assert_eq!(json["classes"], rows.len());
    let first = tsv.lines().nth(1).unwrap();
    assert_eq!(first.split('\t').nth(3).unwrap(), rows[0]["orbit_size"].to_string());
}

#[test]
fn strict_escalates_unresolved() {
    let free = path("modules/free1.json");
    assert_eq!(cli(&["nil", "--module", &free]).0, 0);
    assert_eq!(cli(&["nil", "--module", &free, "--strict"]).0, EXIT_UNRESOLVED);
    assert_eq!(cli(&["nil", "--module", &path("modules/point2.json"), "--strict"]).1, "nilpotence_degree\tbound\tverdict\n2\texact\tverified-through-cutoff\n");
}

#[test]
fn errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"prime": 2, "generators": [{"name": "g", "degree": 1}], "relations": [[{"coeff": 1, "op": "P^1", "gen": "h"}]]}"#).unwrap();
    let (code, _, err) = cli(&["nil", "--module", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("bad.json"), "{err}");
    let (code, _, err) = cli(&["reps", "--group", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("missing.json"), "{err}");
    assert_eq!(cli(&["localize", "--group", &path("groups/s3.json")]).0, EXIT_INVALID);
    assert_eq!(cli(&["tv", "--cutoff", "0", "--group", &path("groups/zp.json")]).0, EXIT_INVALID);
}

#[test]
fn binary_runs() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_steenrod-chow"))
        .args(["adem", "--prime", "5", "--expr", "P^1 P^1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2 P^2\n");
}
