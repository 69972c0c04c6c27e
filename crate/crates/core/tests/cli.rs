use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn tba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tba"))
        .args(args)
        .env_remove("TBA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_klein_four() {
    let o = tba(&["validate", data("klein4.group").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK: 4 basis elements, axioms I–IV hold\n");
}

#[test]
fn validate_reports_violations() {
    let o = tba(&["validate", data("broken.tba").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("axiom I at (1,1,0)"), "{out}");
    assert!(out.contains("axiom III at (1,1,0)"), "{out}");
}

#[test]
fn quotient_of_q3() {
    let o = tba(&[
        "quotient",
        data("exq3.tba").to_str().unwrap(),
        "--closed",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("gamma(1,1,0) = 2"), "{out}");
    assert!(out.contains("gamma(1,1,1) = 1"), "{out}");
    assert!(out.contains("alpha: 0:1 1:2 2:1 3:1 4:1"), "{out}");
}

#[test]
fn quotient_tsv() {
    let o = tba(&[
        "--format",
        "tsv",
        "quotient",
        data("exq3.tba").to_str().unwrap(),
        "--closed",
        "0,1",
    ]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "gamma\t1\t1\t0\t2"), "{out}");
    assert!(out.lines().any(|l| l == "coset\t1\t2,3,4\t2"), "{out}");
}

#[test]
fn quotient_by_non_closed_subset_is_input_error() {
    let o = tba(&[
        "quotient",
        data("s3.group").to_str().unwrap(),
        "--closed",
        "0,2,4",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subsets_of_s3() {
    let o = tba(&[
        "--format",
        "tsv",
        "subsets",
        data("s3.group").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("0,4,5\t3\t3\tyes\tyes"), "{out}");
    assert!(out.contains("0,1\t2\t2\tno\tno"), "{out}");
}

#[test]
fn chartable_s3_tsv() {
    let o = tba(&[
        "--format",
        "tsv",
        "chartable",
        data("s3.group").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "i\tn\tm\tb0\tb1\tb2\tb3\tb4\tb5\n\
         0\t1\t1\t1\t1\t1\t1\t1\t1\n\
         1\t1\t1\t1\t-1\t-1\t-1\t1\t1\n\
         2\t2\t1\t2\t0\t0\t0\t-1\t-1\n"
    );
}

#[test]
fn seed_env_overrides_flag_without_changing_tsv() {
    let file = data("pentagon.scheme");
    let base = tba(&[
        "--format",
        "tsv",
        "chartable",
        file.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    let env = Command::new(env!("CARGO_BIN_EXE_tba"))
        .args([
            "--format",
            "tsv",
            "chartable",
            file.to_str().unwrap(),
            "--seed",
            "3",
        ])
        .env("TBA_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(base.stdout, env.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_tba"))
        .args(["chartable", file.to_str().unwrap()])
        .env("TBA_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn product_of_rank_two() {
    let o = tba(&[
        "product",
        data("rank2.tba").to_str().unwrap(),
        "--chi",
        "1",
        "--psi",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("= [1 0.5]"), "{out}");
    assert!(out.contains("coefficients: 0.5 0.5"), "{out}");
    assert!(out.contains("is a character: no"), "{out}");
}

#[test]
fn bb_s3_standard() {
    let o = tba(&["bb", data("s3.group").to_str().unwrap(), "--chi", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("chi0 <- chi^0"), "{out}");
    assert!(out.contains("chi2 <- chi^1"), "{out}");
    assert!(out.contains("chi1 <- chi^2"), "{out}");
    assert!(out.ends_with("verdict: PASS\n"), "{out}");
}

#[test]
fn bb_klein_sum_and_degree_map() {
    let o = tba(&["bb", data("klein4.group").to_str().unwrap(), "--chi", "1+2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k = 3"));
    let o = tba(&["bb", data("klein4.group").to_str().unwrap(), "--chi", "deg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT trivial"));
}

#[test]
fn bb_bad_expressions() {
    let file = data("s3.group");
    for expr in ["3", "x", "2*", "1+"] {
        let o = tba(&["bb", file.to_str().unwrap(), "--chi", expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
    }
}

#[test]
fn lift_q3_and_non_normal() {
    let o = tba(&[
        "lift",
        data("exq3.tba").to_str().unwrap(),
        "--closed",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("psi1 -> chi1: 1 2 -1 -1 -1"), "{out}");
    let o = tba(&[
        "lift",
        data("s3.group").to_str().unwrap(),
        "--closed",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn example_q_round_trips() {
    let o = tba(&["example-q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(data("exq3.tba")).unwrap()
    );
    assert_eq!(tba(&["example-q", "1"]).status.code(), Some(2));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(tba(&[]).status.code(), Some(2));
    assert_eq!(tba(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        tba(&["validate", "/nonexistent/file.tba"]).status.code(),
        Some(2)
    );
    let o = tba(&["quotient", data("exq3.tba").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}
