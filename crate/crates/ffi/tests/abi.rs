//! The C ABI exercised from Rust through raw pointers.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bss_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Copies and frees a library-owned string.
unsafe fn take(s: *mut c_char) -> Option<String> {
    if s.is_null() {
        return None;
    }
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    bss_string_free(s);
    Some(out)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bss_last_error()).to_str().unwrap().to_string() }
}

unsafe fn number(text: &str) -> *mut BssNumber {
    let mut x = ptr::null_mut();
    assert_eq!(bss_number_parse(c(text).as_ptr(), &mut x), BssStatus::Ok, "{}", last_error());
    x
}

#[test]
fn run_shipped_program() {
    unsafe {
        let mut prog = ptr::null_mut();
        assert_eq!(bss_program_shipped(c("double").as_ptr(), &mut prog), BssStatus::Ok);
        let x = number("3/2");
        let inputs = [x as *const BssNumber];
        let mut outcome = BssOutcome::Running;
        let mut output = ptr::null_mut();
        let st = bss_run(prog, inputs.as_ptr(), 1, ptr::null(), 1000, &mut outcome, &mut output);
        assert_eq!(st, BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Accept);
        assert_eq!(take(output).as_deref(), Some("3"));
        assert_eq!(last_error(), "");
        bss_number_free(x);
        bss_program_free(prog);
    }
}

#[test]
fn run_reports_rejection_and_budget() {
    unsafe {
        let mut prog = ptr::null_mut();
        assert_eq!(bss_program_shipped(c("countdown").as_ptr(), &mut prog), BssStatus::Ok);
        let x = number("100");
        let inputs = [x as *const BssNumber];
        let mut outcome = BssOutcome::Accept;
        let mut output = ptr::null_mut();
        assert_eq!(bss_run(prog, inputs.as_ptr(), 1, ptr::null(), 5, &mut outcome, &mut output), BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Running);
        assert!(output.is_null());
        bss_number_free(x);
        bss_program_free(prog);

        let mut prog = ptr::null_mut();
        assert_eq!(bss_program_shipped(c("double").as_ptr(), &mut prog), BssStatus::Ok);
        let zero = number("0");
        let inputs = [zero as *const BssNumber];
        assert_eq!(bss_run(prog, inputs.as_ptr(), 1, ptr::null(), 100, &mut outcome, &mut output), BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Reject);
        assert_eq!(take(output).as_deref(), Some("0"));
        bss_number_free(zero);
        bss_program_free(prog);
    }
}

#[test]
fn parse_errors_map_to_statuses() {
    unsafe {
        let mut prog = ptr::null_mut();
        let src = c("name m\nmode linear\n        MUL r1 <- r1 r1\n        HALT\n");
        assert_eq!(bss_program_parse(src.as_ptr(), &mut prog), BssStatus::Parse);
        assert!(prog.is_null());
        assert!(last_error().contains("multiplication"));
        let src = c("name m\nmode full\n        ADD r1 <- r1 r1\n");
        let st = bss_program_parse(src.as_ptr(), &mut prog);
        assert_eq!(st, BssStatus::Parse);
        assert!(last_error().contains("HALT"), "{}", last_error());
        assert_eq!(bss_program_parse(c("name m\n  BOGUS\n").as_ptr(), &mut prog), BssStatus::Parse);
        assert_eq!(bss_program_parse(ptr::null(), &mut prog), BssStatus::NullPointer);

        let mut x = ptr::null_mut();
        assert_eq!(bss_number_parse(c("1/0").as_ptr(), &mut x), BssStatus::Arithmetic);
        let bad = [0xffu8, 0];
        assert_eq!(bss_number_parse(bad.as_ptr().cast(), &mut x), BssStatus::InvalidUtf8);
        let mut prog = ptr::null_mut();
        assert_eq!(bss_program_shipped(c("nope").as_ptr(), &mut prog), BssStatus::UnknownId);
    }
}

#[test]
fn number_arithmetic_and_text() {
    unsafe {
        let r2 = number("[-2,0,1]@(1,2)");
        let mut sq = ptr::null_mut();
        assert_eq!(bss_number_arith(BssOp::Mul, r2, r2, &mut sq), BssStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(bss_number_to_string(sq, &mut s), BssStatus::Ok);
        assert_eq!(take(s).as_deref(), Some("2"));
        let mut deg = 0usize;
        assert_eq!(bss_number_degree(r2, &mut deg), BssStatus::Ok);
        assert_eq!(deg, 2);
        let mut cmp = 0;
        assert_eq!(bss_number_compare(r2, sq, &mut cmp), BssStatus::Ok);
        assert_eq!(cmp, -1);
        let zero = number("0");
        let mut q = ptr::null_mut();
        assert_eq!(bss_number_arith(BssOp::Div, r2, zero, &mut q), BssStatus::Arithmetic);
        assert!(q.is_null());
        for p in [r2, sq, zero] {
            bss_number_free(p);
        }
    }
}

#[test]
fn semidecide_and_reduce() {
    unsafe {
        let x = number("3/7");
        let mut outcome = BssOutcome::Reject;
        let mut cert = ptr::null_mut();
        assert_eq!(bss_semidecide(c("Q").as_ptr(), x, 1_000_000, &mut outcome, &mut cert), BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Accept);
        assert_eq!(take(cert).as_deref(), Some("(3,7)"));

        let r2 = number("[-2,0,1]@(1,2)");
        assert_eq!(bss_semidecide(c("Q").as_ptr(), r2, 10_000, &mut outcome, &mut cert), BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Running);
        assert!(cert.is_null());
        assert_eq!(bss_semidecide(c("QP:2").as_ptr(), r2, 10, &mut outcome, &mut cert), BssStatus::Unsupported);

        let mut summary = ptr::null_mut();
        let mut transcript = ptr::null_mut();
        let st = bss_reduce(c("Q<=A").as_ptr(), r2, 10_000_000, &mut outcome, &mut summary, &mut transcript);
        assert_eq!(st, BssStatus::Ok);
        assert_eq!(outcome, BssOutcome::Reject);
        assert_eq!(take(summary).as_deref(), Some("reject: deg=2"));
        assert!(take(transcript).unwrap().starts_with("# reduction=Q<=A"));
        let st = bss_reduce(c("Q<=B").as_ptr(), r2, 10, &mut outcome, &mut summary, ptr::null_mut());
        assert_eq!(st, BssStatus::UnknownId);
        bss_number_free(x);
        bss_number_free(r2);
    }
}

#[test]
fn null_outputs_are_rejected() {
    unsafe {
        assert_eq!(bss_number_parse(c("1").as_ptr(), ptr::null_mut()), BssStatus::NullPointer);
        let x = number("1");
        let mut outcome = BssOutcome::Reject;
        assert_eq!(bss_semidecide(c("Q").as_ptr(), x, 10, &mut outcome, ptr::null_mut()), BssStatus::NullPointer);
        bss_number_free(x);
        bss_string_free(ptr::null_mut());
        bss_number_free(ptr::null_mut());
        bss_program_free(ptr::null_mut());
    }
}
