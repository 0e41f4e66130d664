use std::path::Path;
use std::process::{Command, Output};

const PUBLISHED: &str = include_str!("../../core/data/published.pairs");

fn pgolay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgolay")).args(args).output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    path_str(&p).to_owned()
}

#[test]
fn verify_bundled_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.pairs", PUBLISHED);
    let out = pgolay(&["verify", &f]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_reports_a_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    // 2 is a representative not already in J, so sizes still agree.
    let bad = PUBLISHED.replacen("J=1,4,6,7,9,12,22,23,28,29,34,42", "J=2,4,6,7,9,12,22,23,28,29,34,42", 1);
    assert_ne!(bad, PUBLISHED);
    let f = write(dir.path(), "bad.pairs", &bad);
    let out = pgolay(&["verify", &f]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn verify_exit_codes_for_bad_input() {
    assert_eq!(pgolay(&["verify", "/definitely/not/here.pairs"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "junk.pairs", "pair v=74 H=1,47,63 J=1 K=2 params=oops\n");
    let out = pgolay(&["verify", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let f = write(dir.path(), "mismatch.pairs", &PUBLISHED.replacen("params=36,31,30", "params=39,31,30", 1));
    assert_eq!(pgolay(&["verify", &f]).status.code(), Some(2));
    assert_eq!(pgolay(&["verify"]).status.code(), Some(2));
    assert_eq!(pgolay(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn empty_fixture_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.pairs", "# nothing\n");
    let out = pgolay(&["verify", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 passed, 0 failed"));
}

#[test]
fn search_v4_closes_the_loop() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write(dir.path(), "v4.toml", "v = 4\nr = 1\ns = 1\n");
    let out_dir = dir.path().join("out");
    let out = pgolay(&["search", &plan, "--jobs", "2", "--out", path_str(&out_dir)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("# verified pairs, elementary-inequivalent"));
    assert!(text.contains("J=0 K=0 H=1 v=4"));
    let solutions = out_dir.join("solutions.pairs");
    let body = std::fs::read_to_string(&solutions).unwrap();
    assert!(body.starts_with("pair v=4 H=1 J=0 K=0 params=1,1,0"));
    assert!(out_dir.join("x.shard-000.cand").exists());
    assert!(std::fs::read_to_string(out_dir.join("x.sorted.cand")).unwrap().starts_with("#sorted-by=fp\n"));
    assert_eq!(pgolay(&["verify", path_str(&solutions)]).status.code(), Some(0));
}

#[test]
fn search_without_out_prints_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write(dir.path(), "v10.toml", "v = 10\nr = 3\ns = 4\n");
    let out = pgolay(&["search", &plan, "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.starts_with("pair v=10 ")));
}

#[test]
fn malformed_plan_lists_every_bad_field() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write(dir.path(), "bad.toml", "v = 10\nh_generators = [2]\nr = 3\ns = 9\nshards = 0\n");
    let out = pgolay(&["search", &plan]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for field in ["h_generators", "shards"] {
        assert!(err.contains(field), "{err}");
    }
    let plan = write(dir.path(), "unknown.toml", "v = 10\nr = 3\ns = 4\nspeed = 11\n");
    assert_eq!(pgolay(&["search", &plan]).status.code(), Some(2));
    assert_eq!(pgolay(&["search", "/no/such/plan.toml"]).status.code(), Some(3));
}

#[test]
fn conditions_tables() {
    let out = pgolay(&["conditions", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    let golay: Vec<u64> = text.lines().filter(|l| l.ends_with("status=golay")).map(|l| l.split_whitespace().next().unwrap().parse().unwrap()).collect();
    assert_eq!(golay, vec![1, 2, 4, 8, 10]);
    let one = stdout(&pgolay(&["conditions", "1"]));
    assert_eq!(one.lines().count(), 1);
    assert!(one.trim_start().starts_with("1 "));
    assert_eq!(pgolay(&["conditions", "0"]).status.code(), Some(2));
    assert_eq!(pgolay(&["conditions", "ten"]).status.code(), Some(2));
}

#[test]
fn hadamard_export() {
    let dir = tempfile::tempdir().unwrap();
    let v74: String = PUBLISHED.lines().filter(|l| l.starts_with("pair v=74")).take(1).map(|l| format!("{l}\n")).collect();
    let f = write(dir.path(), "v74.pairs", &v74);
    let out_dir = dir.path().join("m");
    let out = pgolay(&["hadamard", &f, "--out", path_str(&out_dir), "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(out_dir.join("hadamard-v74-1.txt")).unwrap();
    let rows: Vec<Vec<i64>> = text.lines().map(|l| l.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()).collect();
    assert_eq!(rows.len(), 148);
    for i in 0..148 {
        assert_eq!(rows[i].len(), 148);
        for j in 0..148 {
            let d: i64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            assert_eq!(d, if i == j { 148 } else { 0 });
        }
    }
    let csv = std::fs::read_to_string(out_dir.join("hadamard-v74-1.csv")).unwrap();
    assert_eq!(csv.lines().count(), 148);
    assert!(csv.lines().next().unwrap().split(',').all(|x| x == "1" || x == "-1"));
}

#[test]
fn hadamard_small_pair_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "v4.pairs", "pair v=4 H=1 J=0 K=0 params=1,1,0\n");
    let out_dir = dir.path().join("m");
    assert_eq!(pgolay(&["hadamard", &f, "--out", path_str(&out_dir)]).status.code(), Some(0));
    let text = std::fs::read_to_string(out_dir.join("hadamard-v4-1.txt")).unwrap();
    assert_eq!(text.lines().count(), 8);

    let bad = write(dir.path(), "bad.pairs", "pair v=10 H=1 J=0,1,2 K=0,1,2,3 params=3,4,2\n");
    let out_dir = dir.path().join("n");
    assert_eq!(pgolay(&["hadamard", &bad, "--out", path_str(&out_dir)]).status.code(), Some(1));
    assert_eq!(std::fs::read_dir(&out_dir).unwrap().count(), 0);
}

#[test]
fn orbits_command() {
    let out = pgolay(&["orbits", "--v", "74", "--gens", "47"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("v=74 H=1,47,63 |H|=3 orbits=26\n"));
    assert!(text.contains("rep=2 size=3 elements=2,20,52\n"));
    assert!(text.contains("rep=37 size=1 elements=37\n"));
    assert_eq!(pgolay(&["orbits", "--v", "10", "--gens", "2"]).status.code(), Some(2));
    assert_eq!(pgolay(&["orbits", "--gens", "3"]).status.code(), Some(2));
}
