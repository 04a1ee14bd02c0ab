//! End-to-end behaviour of the `bss` binary.

use std::fs;
use std::process::{Command, Output};

fn bss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bss")).args(args).output().expect("spawn bss")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn run_double_accepts() {
    let o = bss(&["run", "examples/double.bss", "3/2"]);
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(code(&o), 0);
}

#[test]
fn run_reads_program_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("neg.bss");
    fs::write(&path, "name neg\nmode linear\n        SUB r1 <- r2 r1\n        HALT\n").unwrap();
    let o = bss(&["run", path.to_str().unwrap(), "--", "-5/3"]);
    assert_eq!(stdout(&o), "5/3\n");
    assert_eq!(code(&o), 0);
}

#[test]
fn rejection_and_budget_exit_codes() {
    let o = bss(&["run", "double.bss", "0"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("0\n", 1));
    let o = bss(&["run", "--budget", "5", "countdown.bss", "100"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn linear_validation_error_exits_3() {
    let o = bss(&["run", "--mode", "linear", "examples/mul.bss"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("multiplication is not allowed in linear mode"));
}

#[test]
fn bad_inputs_exit_3() {
    assert_eq!(code(&bss(&["run", "double.bss", "1/0"])), 3);
    assert_eq!(code(&bss(&["run", "nowhere/missing.bss", "1"])), 3);
    assert_eq!(code(&bss(&["run", "--oracle", "ZZ", "double.bss", "1"])), 3);
    assert_eq!(code(&bss(&["semidecide", "NOPE", "1"])), 3);
}

#[test]
fn symbolic_trace_prints_path_constraints() {
    let o = bss(&["trace", "--symbolic", "--shadow", "2", "examples/branch.bss"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# program=branch mode=full oracle=none shadow=2\n"));
    assert!(text.contains("test=[-2,0,1] sign=>0 membership=not-queried\n"));
    assert!(text.contains("# halted accept=1"));
}

#[test]
fn trace_file_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.trace");
    let o = bss(&["trace", "countdown.bss", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let written = fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/countdown.trace"));
}

#[test]
fn run_writes_trace_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.trace");
    let o = bss(&["run", "double.bss", "3/2", "--trace-out", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(fs::read_to_string(&path).unwrap(), include_str!("golden/double.trace"));
}

#[test]
fn semidecide_examples() {
    let o = bss(&["semidecide", "Q", "3/7"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("(3,7)\n", 0));
    let o = bss(&["semidecide", "Q", "[-2,0,1]@(1,2)", "--budget", "10000"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("running"));
    let o = bss(&["semidecide", "ROOTFIELD:2", "[-2,0,0,0,1]@(1,2)"]);
    assert_eq!(stdout(&o), "K=4 (0,1,0,0)\n");
}

#[test]
fn reduce_examples() {
    let o = bss(&["reduce", "Q<=A", "[ -2,0,1]@(1,2)"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("reject: deg=2\n", 1));
    let o = bss(&["reduce", "SQ<=Q", "9/4"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("accept: pair=(9,4)\n", 0));
    let o = bss(&["reduce", "--transcript", "Q<=SQ", "2/3"]);
    assert!(stdout(&o).contains("query=(4/9) answer=1"));
    assert_eq!(code(&bss(&["reduce", "Q<=B", "1"])), 3);
}

#[test]
fn construct_examples() {
    let o = bss(&["construct", "lemma13", "--p", "2", "--y", "3/2", "--n", "1"]);
    assert_eq!(stdout(&o), "49/32 (err 1/32)\n");
    let o = bss(&["construct", "tilde-qp", "--p", "3", "--y", "-1/3", "--n", "0"]);
    assert_eq!(stdout(&o), "-8/27 (err 1/27)\n");
    let o = bss(&["construct", "degree-approx", "--x", "1/3", "--n", "3"]);
    assert!(stdout(&o).ends_with("(deg 3)\n"));
    let o = bss(&["construct", "degree", "[-2,0,0,1]@(1,2)"]);
    assert_eq!(stdout(&o), "deg=3 minpoly=[-2, 0, 0, 1]\n");
    let o = bss(&["construct", "separation", "--mode", "linear", "--shadow", "1/3", "sep_linear.bss"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness=82/243"));
    assert_eq!(code(&bss(&["construct", "tilde-qp", "--p", "4", "--y", "1", "--n", "1"])), 3);
}

#[test]
fn check_is_deterministic_and_needs_a_seed() {
    let a = bss(&["check", "kronecker", "--seed", "7"]);
    let b = bss(&["check", "kronecker", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().all(|l| l.starts_with("PASS kronecker.") || l.starts_with("# summary")));
    assert!(text.contains("PASS kronecker.sampled 2000 cases"));
    assert_eq!(code(&bss(&["check", "kronecker"])), 3);
    assert_eq!(code(&bss(&["check", "nonsense", "--seed", "1"])), 3);
}

#[test]
fn check_separation_linear_prints_witness() {
    let o = bss(&["check", "separation-linear"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness=82/243"));
}
