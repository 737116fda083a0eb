use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn regmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regmat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Text of the `## name` section of a transcript.
fn section(out: &str, name: &str) -> String {
    let head = format!("## {name}\n");
    let start = out.find(&head).unwrap_or_else(|| panic!("no section {name} in\n{out}")) + head.len();
    let rest = &out[start..];
    let end = rest.find("\n## ").map(|k| k + 1).or_else(|| rest.find("\nPASS").map(|k| k + 1));
    let end = end.or_else(|| rest.find("\nFAIL").map(|k| k + 1)).or_else(|| rest.find("exit ")).unwrap();
    rest[..end].to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const S_IDENTITY: &str = "GF2\nx2 x0 x1\ny0 y1 y2\n1 1 0\n1 0 1\n0 1 1\n";
const MINIMAL_FRAME: &str = "x0 x0\nx1 x1\nx2 x2\ny0 y0\ny1 y1\ny2 y2\nxl\nyl\nxr\nyr\n";

#[test]
fn r10_signing_is_tu() {
    let dir = TempDir::new().unwrap();
    let r10 = fixtures().join("r10.matrix");
    let o = regmat(&["sign", r10.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let signed = write(&dir, "signed.matrix", &section(&stdout(&o), "signing"));
    let o = regmat(&["check-tu", &signed]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(section(&out, "result"), "TU: yes\n");
    assert_eq!(section(&out, "minors checked"), "251\n");
}

#[test]
fn check_tu_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m", "Q\na b\nc d\n1 1\n1 -1\n");
    let o = regmat(&["check-tu", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: rows a b cols c d det -2"));
    let o = regmat(&["check-tu", &f, "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1-PU: yes"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad", "Q\na\nc d\n1 x\n");
    let o = regmat(&["check-tu", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at line 4"));
    assert_eq!(regmat(&["check-tu", "/nonexistent/file"]).status.code(), Some(2));
    let ok = write(&dir, "ok", "Q\na\nc\n0\n");
    assert_eq!(regmat(&["pivot", &ok, "--mode", "short", "--row", "a", "--col", "c"]).status.code(), Some(2));
}

#[test]
fn fano_has_no_signing() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fano", "GF2\na b c\nd e f g\n1 1 0 1\n1 0 1 1\n0 1 1 1\n");
    let o = regmat(&["sign", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL signing"));
}

#[test]
fn dual_twice_is_identity() {
    let dir = TempDir::new().unwrap();
    for text in [S_IDENTITY, "Q\nr s\nc d e\n1 -1/2 0\n0 3 -1\n"] {
        let f = write(&dir, "m", text);
        let once = write(&dir, "d1", &section(&stdout(&regmat(&["dual", &f])), "dual"));
        let twice = section(&stdout(&regmat(&["dual", &once])), "dual");
        assert_eq!(twice, text);
    }
}

#[test]
fn pivot_short() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m", "Q\nr s\nc d\n2 1\n1 1\n");
    let o = regmat(&["pivot", &f, "--mode", "short", "--row", "r", "--col", "c"]);
    assert_eq!(section(&stdout(&o), "pivot"), "Q\nc s\nr d\n1/2 1/2\n-1/2 1/2\n");
    let o = regmat(&["pivot", &f, "--mode", "long", "--row", "r", "--col", "c"]);
    assert_eq!(section(&stdout(&o), "pivot"), "Q\nr s\nc d\n1 1/2\n0 1/2\n");
}

#[test]
fn sum3_minimal_golden() {
    // no primed labels: the sum is the shared corner itself
    let dir = TempDir::new().unwrap();
    let (l, r) = (write(&dir, "l", S_IDENTITY), write(&dir, "r", S_IDENTITY));
    let frame = write(&dir, "f", MINIMAL_FRAME);
    let o = regmat(&["sum3", &l, &r, "--frame", &frame]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(section(&stdout(&o), "sum"), S_IDENTITY);
}

#[test]
fn sum3_k4_golden() {
    let dir = TempDir::new().unwrap();
    let fx = fixtures();
    let repr = |g: &str| {
        let tree = write(&dir, "t", &format!("(graphic {})", fx.join(g).display()));
        write(&dir, g, &section(&stdout(&regmat(&["good", &tree])), "representation"))
    };
    let (l, r) = (repr("k4_left.graph"), repr("k4_right.graph"));
    let frame = fx.join("k4.frame");
    let o = regmat(&["sum3", &l, &r, "--frame", frame.to_str().unwrap()]);
    let want = "GF2\nlx0 x2 x0 x1 rx0\nly0 y0 y1 y2 ry0\n\
                1 0 0 0 0\n1 1 1 0 0\n0 1 0 1 1\n1 0 1 1 1\n0 0 0 0 1\n";
    assert_eq!(section(&stdout(&o), "sum"), want);
    let o = regmat(&["sign-sum3", &l, &r, "--frame", frame.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn sum3_border_violation() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "l", "GF2\nx2 x0 x1\ny0 y1 y2\n1 1 1\n1 0 1\n0 1 1\n");
    let r = write(&dir, "r", S_IDENTITY);
    let frame = write(&dir, "f", MINIMAL_FRAME);
    let o = regmat(&["sum3", &l, &r, "--frame", &frame]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Bℓ(x2, y2) must be 0"), "{}", stdout(&o));
}

#[test]
fn sum1_and_sum2() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "Q\nx\ny\n1\n");
    let b = write(&dir, "b", "Q\nu\nv\n-1\n");
    let o = regmat(&["sum1", &a, &b]);
    assert_eq!(section(&stdout(&o), "sum"), "Q\nx u\ny v\n1 0\n0 -1\n");
    let l = write(&dir, "l", "GF2\np x\nq\n1\n1\n");
    let r = write(&dir, "r", "GF2\nx\nq s\n1 1\n");
    let o = regmat(&["sum2", &l, &r, "--x", "x", "--y", "q"]);
    assert_eq!(section(&stdout(&o), "sum"), "GF2\np x\nq s\n1 0\n1 1\n");
    let o = regmat(&["sum2", &l, &r, "--x", "x", "--y", "s"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn good_r10_tree() {
    let tree = fixtures().join("trees/01_r10.tree");
    let o = regmat(&["good", tree.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("TU verified"));
    assert!(out.contains("## representation\nGF2\nx1 x2 x3 x4 x5\ny1 y2 y3 y4 y5\n"));
}

#[test]
fn good_bad_certificate() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "t", "(sum1 (r10) (r10))");
    let o = regmat(&["good", &tree]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sum precondition failed at root"));
}

#[test]
fn matroid_queries() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s", S_IDENTITY);
    let o = regmat(&["matroid", "indep", &f, "--set", "x2,y2"]);
    assert_eq!(section(&stdout(&o), "independent"), "yes\n");
    let o = regmat(&["matroid", "base", &f]);
    assert_eq!(section(&stdout(&o), "base"), "x2 x0 x1\n");
    assert_eq!(regmat(&["matroid", "dual", &f]).status.code(), Some(0));
    assert_eq!(regmat(&["matroid", "axioms", &f]).status.code(), Some(0));
    let g = write(&dir, "g", "GF2\nx2 x0 x1\ny0 y1 y2\n1 1 0\n1 0 1\n0 1 0\n");
    assert_eq!(regmat(&["matroid", "equal", &f, &f]).status.code(), Some(0));
    let o = regmat(&["matroid", "equal", &f, &g]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: subset"));
}

#[test]
fn blueprint_default_passes_and_is_deterministic() {
    let a = regmat(&["verify-blueprint", "--seed", "5", "--trials", "5"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains("# seed 5"));
    assert_eq!(stdout(&a), stdout(&regmat(&["verify-blueprint", "--seed", "5", "--trials", "5"])));
    let full = regmat(&["verify-blueprint"]);
    assert_eq!(full.status.code(), Some(0), "{}", stdout(&full));
}

#[test]
fn blueprint_zero_trials() {
    let o = regmat(&["verify-blueprint", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS pivot_det_ratio (0 trials) [0 trials, vacuous]"));
}

#[test]
fn blueprint_mutant_fails() {
    let o = regmat(&["verify-blueprint", "--mutant"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().position(|l| l.starts_with("FAIL pivot_det_ratio")).expect("det ratio fails");
    assert!(out.lines().nth(line + 1).unwrap().contains("counterexample: pivot"));
}

#[test]
fn structured_output_is_json() {
    let o = regmat(&["--format", "structured", "verify-blueprint", "--trials", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["seed"], 1);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}
