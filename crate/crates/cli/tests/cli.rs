use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use nichols_cli::report::{to_json, CheckJson, PrimitivesJson, RankJson};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn nichols(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nichols"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().expect("exit code"),
    }
}

fn flip(field: &str, n: usize, cutoff: usize) -> String {
    format!(r#"{{"field":{field},"dimension":{n},"braiding":{{"kind":"flip"}},"degree_cutoff":{cutoff}}}"#)
}

const Q: &str = r#"{"kind":"rationals"}"#;

fn minus_one_line(cutoff: usize) -> String {
    format!(r#"{{"field":{Q},"dimension":1,"braiding":{{"kind":"diagonal","q":[["-1"]]}},"degree_cutoff":{cutoff}}}"#)
}

/// Flip on two letters with `c(e0⊗e0)` picking up an extra `e0⊗e1` term.
fn perturbed_flip() -> String {
    let rows = [
        ["1", "0", "0", "0"],
        ["1", "0", "1", "0"],
        ["0", "1", "0", "0"],
        ["0", "0", "0", "1"],
    ];
    format!(
        r#"{{"field":{Q},"dimension":2,"braiding":{{"kind":"matrix","entries":{}}},"degree_cutoff":3}}"#,
        serde_json::to_string(&rows).unwrap()
    )
}

fn rank_json(run: &Run) -> RankJson {
    let parsed: RankJson = serde_json::from_str(&run.stdout).expect("rank report parses");
    assert_eq!(to_json(&parsed), run.stdout, "report round-trips byte for byte");
    parsed
}

#[test]
fn check_exit_codes() {
    let ok = nichols(&["check"], &flip(Q, 2, 3));
    assert_eq!(ok.code, 0, "{}", ok.stderr);

    let bad = nichols(&["check", "--json"], &perturbed_flip());
    assert_eq!(bad.code, 1);
    let report: CheckJson = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(to_json(&report), bad.stdout);
    assert!(!report.valid);
    assert_eq!(report.witness, Some([0, 0, 0]));
    assert!(bad.stderr.contains("Yang-Baxter"));

    let human = nichols(&["check"], &perturbed_flip());
    assert!(human.stdout.contains("witness triple (0, 0, 0)"));

    assert_eq!(nichols(&["check"], "{not json").code, 2);
    assert_eq!(nichols(&["check"], &flip(r#"{"kind":"prime","p":9}"#, 2, 3)).code, 2);
    assert_eq!(nichols(&["check"], &flip(Q, 9, 3)).code, 2);
    let short = r#"{"field":{"kind":"rationals"},"dimension":2,"braiding":{"kind":"diagonal","q":[["1"]]}}"#;
    assert_eq!(nichols(&["check"], short).code, 2);
    let zero = r#"{"field":{"kind":"rationals"},"dimension":1,"braiding":{"kind":"diagonal","q":[["0"]]}}"#;
    assert_eq!(nichols(&["check"], zero).code, 1);
    assert_eq!(nichols(&["bogus"], "").code, 2);
}

#[test]
fn rank_reports() {
    let run = nichols(&["rank", "--json"], &flip(Q, 2, 5));
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r = rank_json(&run);
    assert_eq!(r.rank_le_cutoff, Some(1));
    assert!(r.stabilized);
    assert_eq!(r.final_hilbert, vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(r.stages.len(), 2);
    assert!(r.oracle_match.is_none());

    let run = nichols(&["rank", "--json", "--oracle"], &minus_one_line(5));
    let r = rank_json(&run);
    assert_eq!(r.rank_le_cutoff, Some(1));
    assert_eq!(r.final_hilbert, vec![1, 1, 0, 0, 0, 0]);
    assert_eq!(r.oracle_match, Some(true));

    let run = nichols(&["rank", "--json", "--max-iter", "0"], &flip(Q, 2, 3));
    assert_eq!(run.code, 3);
    let r = rank_json(&run);
    assert!(!r.stabilized);
    assert_eq!(r.rank_le_cutoff, None);

    let table = nichols(&["rank"], &flip(Q, 2, 5));
    assert!(table.stdout.contains("rank at cutoff 5: 1"));

    assert_eq!(nichols(&["rank"], &perturbed_flip()).code, 1);
    let no_cutoff = r#"{"field":{"kind":"rationals"},"dimension":1,"braiding":{"kind":"flip"}}"#;
    assert_eq!(nichols(&["rank"], no_cutoff).code, 2);
    assert_eq!(nichols(&["rank", "--cutoff", "2"], no_cutoff).code, 0);
    assert_eq!(nichols(&["rank", "--cutoff", "13"], no_cutoff).code, 2);
}

#[test]
fn rank_of_flips_at_cutoff_six() {
    for (n, rank) in [(1, 0), (2, 1), (3, 1)] {
        let r = rank_json(&nichols(&["rank", "--json"], &flip(Q, n, 6)));
        // a single letter in characteristic zero is already stable at stage 0
        assert_eq!(r.rank_le_cutoff, Some(rank), "n = {n}");
        let expected: Vec<usize> = (0..=6usize)
            .map(|d| (0..d).fold(1, |acc, k| acc * (n + d - 1 - k) / (k + 1)))
            .collect();
        assert_eq!(r.final_hilbert, expected);
    }
    let r = rank_json(&nichols(&["rank", "--json"], &flip(r#"{"kind":"prime","p":2}"#, 1, 4)));
    assert_eq!(r.rank_le_cutoff, Some(1));
    assert_eq!(r.final_hilbert, vec![1, 1, 0, 0, 0]);
}

#[test]
fn nichols_command() {
    let run = nichols(&["nichols", "--json"], &flip(Q, 2, 4));
    assert_eq!(run.code, 0);
    let r = rank_json(&run);
    assert_eq!(r.oracle_match, Some(true));
    assert_eq!(r.final_hilbert, vec![1, 2, 3, 4, 5]);

    let run = nichols(&["nichols"], &minus_one_line(4));
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("oracle hilbert: 1 1 0 0 0"));
    assert!(run.stdout.contains("matches symmetrizer oracle: true"));

    assert_eq!(nichols(&["nichols"], &perturbed_flip()).code, 1);
}

#[test]
fn primitives_command() {
    let run = nichols(
        &["primitives", "--json", "--stage", "0", "--degree", "2"],
        &flip(Q, 2, 4),
    );
    assert_eq!(run.code, 0);
    let p: PrimitivesJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(to_json(&p), run.stdout);
    assert_eq!(p.dimension, 1);
    assert_eq!(p.vectors[0].label, "e01 - e10");
    assert_eq!(p.vectors[0].coordinates, vec!["0", "1", "-1", "0"]);

    let stable = nichols(
        &["primitives", "--json", "--stage", "1", "--degree", "2"],
        &flip(Q, 2, 4),
    );
    let p: PrimitivesJson = serde_json::from_str(&stable.stdout).unwrap();
    assert!(p.vectors.is_empty());

    let ones = nichols(&["primitives", "--degree", "1"], &flip(Q, 3, 3));
    assert!(ones.stdout.starts_with("stage 0, degree 1: 3 primitives"));
    assert_eq!(ones.stdout.lines().count(), 4);

    assert_eq!(nichols(&["primitives", "--degree", "5"], &flip(Q, 2, 4)).code, 2);
    assert_eq!(
        nichols(&["primitives", "--degree", "2", "--stage", "9"], &flip(Q, 2, 4)).code,
        2
    );
}

fn cache_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn cache_hits_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let jobs = [
        flip(Q, 2, 5),
        minus_one_line(5),
        flip(r#"{"kind":"prime","p":3}"#, 2, 5),
        r#"{"field":{"kind":"prime","p":13},"dimension":2,"braiding":{"kind":"diagonal","q":[["5","8"],["1","5"]]},"degree_cutoff":5}"#.to_string(),
    ];
    for job in &jobs {
        let fresh = nichols(&["rank", "--json"], job);
        let miss = nichols(&["rank", "--json", "--cache", cache], job);
        let stored = cache_files(dir.path());
        let hit = nichols(&["rank", "--json", "--cache", cache], job);
        assert_eq!(fresh.stdout, miss.stdout);
        assert_eq!(fresh.stdout, hit.stdout);
        assert_eq!(fresh.code, hit.code);
        assert_eq!(stored, cache_files(dir.path()), "a hit leaves the cache untouched");

        let prim = nichols(&["primitives", "--json", "--degree", "3"], job);
        let prim_cached = nichols(&["primitives", "--json", "--degree", "3", "--cache", cache], job);
        assert_eq!(prim.stdout, prim_cached.stdout);
    }
    assert_eq!(cache_files(dir.path()).len(), jobs.len());
    assert!(cache_files(dir.path()).iter().all(|(name, _)| name.ends_with(".json")));
}

#[test]
fn cache_resumes_and_ignores_damage() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let job = flip(Q, 2, 4);
    let fresh = nichols(&["rank", "--json"], &job);

    let partial = nichols(&["rank", "--json", "--max-iter", "1", "--cache", cache], &job);
    assert_eq!(partial.code, 3);
    let resumed = nichols(&["rank", "--json", "--cache", cache], &job);
    assert_eq!(resumed.stdout, fresh.stdout);
    let truncated = nichols(&["rank", "--json", "--max-iter", "1", "--cache", cache], &job);
    assert_eq!(truncated.stdout, partial.stdout);

    // the same braiding given as a raw matrix shares the entry
    let raw = r#"{"field":{"kind":"rationals"},"dimension":2,"braiding":{"kind":"matrix","entries":[["1","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","1"]]},"degree_cutoff":4}"#;
    assert_eq!(nichols(&["rank", "--json", "--cache", cache], raw).stdout, fresh.stdout);
    assert_eq!(cache_files(dir.path()).len(), 1);

    for (name, _) in cache_files(dir.path()) {
        std::fs::write(dir.path().join(name), "{ damaged").unwrap();
    }
    let recovered = nichols(&["rank", "--json", "--cache", cache], &job);
    assert_eq!(recovered.stdout, fresh.stdout);
}

#[test]
fn reports_are_deterministic() {
    let job = r#"{"field":{"kind":"prime","p":7},"dimension":2,"braiding":{"kind":"diagonal","q":[["2","4"],["1","2"]]},"degree_cutoff":5,"oracle":true}"#;
    let a = nichols(&["rank", "--json"], job);
    let b = nichols(&["rank", "--json"], job);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(rank_json(&a).oracle_match, Some(true));
}

#[test]
fn input_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, flip(Q, 2, 3)).unwrap();
    let run = nichols(&["rank", "--input", path.to_str().unwrap()], "");
    assert_eq!(run.code, 0);
    assert_eq!(nichols(&["rank", "--input", "/nonexistent/job.json"], "").code, 2);
}
