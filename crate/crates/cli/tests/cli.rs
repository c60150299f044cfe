//! End-to-end tests of the binary: exit-code contract, file parsing, and
//! determinism of seeded output.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const SPREAD: &str = "2 4\n0\nE\n1000 0100\n0010 0001\n1010 0101\n1001 0111\n1011 0110\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmatroids"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn uniform_family(k: usize) -> NamedTempFile {
    let listing = run(&["enumerate", "2", "4", &k.to_string()]);
    assert!(listing.status.success());
    write_temp(&format!("2 4\n{}", stdout(&listing)))
}

#[test]
fn enumerate_counts() {
    let all = run(&["enumerate", "2", "4", "--count"]);
    assert_eq!(stdout(&all).trim(), "1 15 35 15 1");
    let two = run(&["enumerate", "2", "4", "2", "--count"]);
    assert_eq!(stdout(&two).trim(), "35");
    let bad = run(&["enumerate", "2", "4", "5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let spread = write_temp(SPREAD);
    assert_eq!(
        run(&["verify", path(&spread), "--axioms", "f1f2"]).status.code(),
        Some(0)
    );
    let f3f4 = run(&["verify", path(&spread), "--axioms", "f3f4"]);
    assert_eq!(f3f4.status.code(), Some(1));
    assert!(stdout(&f3f4).starts_with("FAIL F3"));
    assert_eq!(
        run(&["verify", path(&spread), "--axioms", "saturated"]).status.code(),
        Some(1)
    );
    // duplicate subspace lines are an input error
    let dup = write_temp("2 4\n1000 0100\n0100 1000\n");
    assert_eq!(
        run(&["verify", path(&dup), "--axioms", "f1f2"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_even_dims_f3f4_witness() {
    let mut even = String::from("2 4\n0\nE\n");
    even.push_str(&stdout(&run(&["enumerate", "2", "4", "2"])));
    let f = write_temp(&even);
    assert_eq!(run(&["verify", path(&f), "--axioms", "f1f2"]).status.code(), Some(0));
    let out = run(&["verify", path(&f), "--axioms", "f3f4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("at X ="));
}

#[test]
fn qmatroid_validate_and_dump() {
    let u24 = uniform_family(2);
    let ok = run(&["qmatroid", "validate", path(&u24)]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("r(E) = 2"));
    let dump = run(&["qmatroid", "dump", path(&u24)]);
    // 67 lines: `<id> <dim> <rank> <rendering>`
    let text = stdout(&dump);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 67);
    assert_eq!(lines[0], "0 0 0 0");
    assert!(lines.iter().all(|l| l.split_whitespace().count() >= 4));
    // the spread lines are not a basis family
    let spread_lines = write_temp("2 4\n1000 0100\n0010 0001\n1010 0101\n1001 0111\n1011 0110\n");
    assert_eq!(
        run(&["qmatroid", "validate", path(&spread_lines)]).status.code(),
        Some(1)
    );
}

#[test]
fn qmatroid_dual_roundtrips() {
    let u14 = uniform_family(1);
    let dual = run(&["qmatroid", "dual", path(&u14)]);
    assert_eq!(dual.status.code(), Some(0));
    // dual of U(1,4) is U(3,4): 15 bases
    let f = write_temp(&stdout(&dual));
    let back = run(&["qmatroid", "validate", path(&f)]);
    assert!(stdout(&back).contains("r(E) = 3"));
}

#[test]
fn strongmap_and_qg() {
    let u34 = uniform_family(3);
    let u24 = uniform_family(2);
    let check = run(&[
        "strongmap", "check", path(&u34), path(&u24), "--criterion", "all",
    ]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check).matches("PASS").count(), 3);
    // reversed direction is not strong: rank differences grow
    let rev = run(&[
        "strongmap", "check", path(&u24), path(&u34), "--criterion", "rankdiff",
    ]);
    assert_eq!(rev.status.code(), Some(1));
    assert!(stdout(&rev).contains("FAIL"));
    // the interval family of the strong pair passes the strong axioms
    let built = run(&[
        "qg", "build", "--upper", path(&u34), "--lower", path(&u24), "--mode", "strong",
    ]);
    assert_eq!(built.status.code(), Some(0));
    let fam = write_temp(&stdout(&built));
    assert_eq!(
        run(&["verify", path(&fam), "--axioms", "f3f4"]).status.code(),
        Some(0)
    );
}

#[test]
fn qdelta_operations() {
    let spread = write_temp(SPREAD);
    let ul = run(&["qdelta", "upper-lower", path(&spread)]);
    assert_eq!(ul.status.code(), Some(0));
    let text = stdout(&ul);
    assert!(text.contains("# upper bases"));
    assert!(text.contains("\nE\n"));
    let rank = run(&["qdelta", "rank", path(&spread)]);
    // rank 4 exactly on the 7 feasible spaces
    let full_rank = stdout(&rank)
        .lines()
        .filter(|l| l.split_whitespace().nth(2) == Some("4"))
        .count();
    assert_eq!(full_rank, 7);
    let b = run(&[
        "qdelta", "birank", path(&spread), "--x", "0010 0001", "--y", "1000 0100",
    ]);
    assert_eq!(stdout(&b).trim(), "4");
    // non-orthogonal pair is an input error
    let bad = run(&[
        "qdelta", "birank", path(&spread), "--x", "0010 0001", "--y", "0010",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn codes_pipeline() {
    let c1 = write_temp("2 4 4 2\n1000 0100 0010 0001\n1000 0010 1100 0011\n");
    let c2 = write_temp("2 4 4 1\n1000 0100 0010 0001\n");
    let dump = run(&["codes", "qmatroid", path(&c1)]);
    assert_eq!(dump.status.code(), Some(0));
    assert_eq!(stdout(&dump).lines().count(), 67);
    let nested = run(&["codes", "nested", path(&c1), path(&c2)]);
    assert_eq!(nested.status.code(), Some(0));
    assert!(stdout(&nested).contains("strong map: PASS"));
    // reversed nesting fails
    assert_eq!(
        run(&["codes", "nested", path(&c2), path(&c1)]).status.code(),
        Some(1)
    );
}

#[test]
fn paper_cases() {
    assert_eq!(run(&["paper", "spread"]).status.code(), Some(0));
    assert_eq!(run(&["paper", "prop-weak-not-strong"]).status.code(), Some(0));
    // the second restriction candidate does not fail as expected; the case
    // reports the mismatch honestly
    assert_eq!(run(&["paper", "restriction-fails"]).status.code(), Some(1));
    assert_eq!(run(&["paper", "no-such-case"]).status.code(), Some(2));
    assert_eq!(run(&["paper"]).status.code(), Some(2));
}

#[test]
fn search_contract() {
    let zero = run(&["search", "--target", "f3f4-vs-qg", "--budget", "0", "--seed", "1"]);
    assert_eq!(zero.status.code(), Some(2));
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("witness.fam");
    let args = [
        "search", "--target", "upper-lower-strong", "--budget", "20", "--seed", "3",
        "--out", out.to_str().unwrap(),
    ];
    let a = run(&args);
    let b = run(&args);
    // deterministic given the seed
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(a.status.code(), b.status.code());
    assert!(stdout(&a).contains("seed=3"));
}
