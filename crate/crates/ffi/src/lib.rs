//! C ABI over `bss-core`.
//!
//! Programs and numbers cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free`.  Every fallible call
//! returns a [`BssStatus`] and leaves a per-thread message for
//! [`bss_last_error`].  Strings returned through out-parameters are
//! heap-allocated here and must be released with [`bss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bss_core::algebraic::AlgebraicNumber;
use bss_core::machine::{parse_program, run, validate_program, BssProgram, OracleSpec, RunStatus};
use bss_core::problems::{shipped_program, ProblemId, Reduction};
use bss_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BssStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Validation = 5,
    Runtime = 6,
    /// Zero denominator, division by zero, negative radicand or no real root.
    Arithmetic = 7,
    DegreeCap = 8,
    BudgetExhausted = 9,
    Unsupported = 10,
    UnknownId = 11,
    /// A Rust panic was caught at the boundary.
    Internal = 12,
}

/// Verdict of a run, semi-decision or reduction.  Matches the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BssOutcome {
    Accept = 0,
    Reject = 1,
    Running = 2,
}

/// Opaque parsed and validated program.
pub struct BssProgramHandle(BssProgram);

/// Opaque exact real algebraic number.
pub struct BssNumber(AlgebraicNumber);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> BssStatus {
    match e {
        Error::Parse { .. } | Error::AmbiguousSelector(_) => BssStatus::Parse,
        Error::InvalidArgument(_) | Error::InconsistentInstance(_) | Error::DegenerateShadow(_) => {
            BssStatus::InvalidArgument
        }
        Error::Validation(_) => BssStatus::Validation,
        Error::Runtime { .. } => BssStatus::Runtime,
        Error::ZeroDenominator | Error::DivisionByZero | Error::NegativeRadicand(_) | Error::NoRealRoot => {
            BssStatus::Arithmetic
        }
        Error::DegreeCap { .. } => BssStatus::DegreeCap,
        Error::BudgetExhausted(_) => BssStatus::BudgetExhausted,
        Error::Unsupported(_) => BssStatus::Unsupported,
        Error::UnknownId(_) => BssStatus::UnknownId,
    }
}

/// Failure carried inside the wrappers before it becomes a status.
struct Fail(BssStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BssStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BssStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            BssStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(BssStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(BssStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BssStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BssStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

fn need<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(BssStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Error message of the latest call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.  Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates assembly source.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_program_parse(source: *const c_char, out: *mut *mut BssProgramHandle) -> BssStatus {
    guard(|| {
        need(out, "out")?;
        let prog = parse_program(text(source, "source")?)?;
        validate_program(&prog, prog.mode)?;
        put(out, Box::into_raw(Box::new(BssProgramHandle(prog))), "out")
    })
}

/// Loads a program shipped with the library by name, such as `double`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_program_shipped(name: *const c_char, out: *mut *mut BssProgramHandle) -> BssStatus {
    guard(|| {
        need(out, "out")?;
        let prog = shipped_program(text(name, "name")?)?;
        put(out, Box::into_raw(Box::new(BssProgramHandle(prog))), "out")
    })
}

/// Releases a program.  Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bss_program_free(p: *mut BssProgramHandle) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses `a/b` or `[c0,...,ck]@(lo,hi)`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_number_parse(s: *const c_char, out: *mut *mut BssNumber) -> BssStatus {
    guard(|| {
        need(out, "out")?;
        let x: AlgebraicNumber = text(s, "number")?.parse()?;
        put(out, Box::into_raw(Box::new(BssNumber(x))), "out")
    })
}

/// Releases a number.  Null is ignored.
///
/// # Safety
/// `x` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bss_number_free(x: *mut BssNumber) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Canonical text form of `x`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_number_to_string(x: *const BssNumber, out: *mut *mut c_char) -> BssStatus {
    guard(|| {
        need(out, "out")?;
        let x = handle(x, "number")?;
        put(out, owned_string(x.0.to_string()), "out")
    })
}

/// Degree of the minimal polynomial of `x`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_number_degree(x: *const BssNumber, out: *mut usize) -> BssStatus {
    guard(|| put(out, handle(x, "number")?.0.degree(), "out"))
}

/// Arithmetic operation selector for [`bss_number_arith`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BssOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// Exact `a op b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_number_arith(
    op: BssOp,
    a: *const BssNumber,
    b: *const BssNumber,
    out: *mut *mut BssNumber,
) -> BssStatus {
    guard(|| {
        need(out, "out")?;
        let (a, b) = (&handle(a, "a")?.0, &handle(b, "b")?.0);
        let r = match op {
            BssOp::Add => a.add(b)?,
            BssOp::Sub => a.sub(b)?,
            BssOp::Mul => a.mul(b)?,
            BssOp::Div => a.div(b)?,
        };
        put(out, Box::into_raw(Box::new(BssNumber(r))), "out")
    })
}

/// Sign of `a - b` as -1, 0 or 1.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_number_compare(a: *const BssNumber, b: *const BssNumber, out: *mut i32) -> BssStatus {
    guard(|| {
        let d = handle(a, "a")?.0.sub(&handle(b, "b")?.0)?;
        put(out, d.sign() as i32, "out")
    })
}

/// Runs `program` on `inputs`.  `oracle` may be null for none.  On a halt
/// `output` receives the space-separated output registers (`0` when all are
/// zero); when the budget runs out it receives null.
///
/// # Safety
/// `inputs` must point to `n_inputs` live handles (or be null when zero);
/// `oracle` must be null or NUL-terminated; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_run(
    program: *const BssProgramHandle,
    inputs: *const *const BssNumber,
    n_inputs: usize,
    oracle: *const c_char,
    budget: u64,
    outcome: *mut BssOutcome,
    output: *mut *mut c_char,
) -> BssStatus {
    guard(|| {
        need(outcome, "outcome")?;
        need(output, "output")?;
        let prog = &handle(program, "program")?.0;
        let mut xs = Vec::with_capacity(n_inputs);
        if n_inputs > 0 {
            let ptrs = std::slice::from_raw_parts(handle(inputs, "inputs")?, n_inputs);
            for (i, &p) in ptrs.iter().enumerate() {
                xs.push(handle(p, &format!("inputs[{i}]"))?.0.clone());
            }
        }
        let oracle = if oracle.is_null() { OracleSpec::None } else { OracleSpec::parse(text(oracle, "oracle")?)? };
        let res = run(prog, &xs, &oracle, budget)?;
        let (verdict, shown) = match &res.status {
            RunStatus::Halted { output, accepted } => {
                let parts: Vec<String> = output.iter().map(|v| v.to_string()).collect();
                let joined = if parts.is_empty() { "0".to_string() } else { parts.join(" ") };
                (if *accepted { BssOutcome::Accept } else { BssOutcome::Reject }, owned_string(joined))
            }
            RunStatus::Running => (BssOutcome::Running, ptr::null_mut()),
        };
        put(outcome, verdict, "outcome")?;
        put(output, shown, "output")
    })
}

/// Runs the semi-decider of `problem` (`Q`, `A`, `SQ`, `ROOTFIELD:2,3`, ...)
/// on `x`.  On acceptance `certificate` receives its text; otherwise null.
///
/// # Safety
/// `problem` must be NUL-terminated; `x` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bss_semidecide(
    problem: *const c_char,
    x: *const BssNumber,
    budget: u64,
    outcome: *mut BssOutcome,
    certificate: *mut *mut c_char,
) -> BssStatus {
    guard(|| {
        need(outcome, "outcome")?;
        need(certificate, "certificate")?;
        let id: ProblemId = text(problem, "problem")?.parse()?;
        let d = id.semidecide(&handle(x, "number")?.0, budget)?;
        let (verdict, cert) = match &d.certificate {
            Some(c) => (BssOutcome::Accept, owned_string(c.to_string())),
            None => (BssOutcome::Running, ptr::null_mut()),
        };
        put(outcome, verdict, "outcome")?;
        put(certificate, cert, "certificate")
    })
}

/// Runs a named reduction (`Q<=A`, `SQ<=Q`, ...) against its exact oracle.
/// `summary` receives a line such as `reject: deg=2`; `transcript`, when
/// not null, receives the full query transcript.  An exhausted budget is
/// reported as outcome `Running` with null strings.
///
/// # Safety
/// `reduction` must be NUL-terminated; `x` must be a live handle; `outcome`
/// and `summary` must be writable; `transcript` may be null.
#[no_mangle]
pub unsafe extern "C" fn bss_reduce(
    reduction: *const c_char,
    x: *const BssNumber,
    budget: u64,
    outcome: *mut BssOutcome,
    summary: *mut *mut c_char,
    transcript: *mut *mut c_char,
) -> BssStatus {
    guard(|| {
        need(outcome, "outcome")?;
        need(summary, "summary")?;
        let r: Reduction = text(reduction, "reduction")?.parse()?;
        let x = &handle(x, "number")?.0;
        let (verdict, line, full) = match r.run(x, budget) {
            Ok(rep) => {
                let verdict = if rep.accepted { BssOutcome::Accept } else { BssOutcome::Reject };
                (verdict, owned_string(rep.summary()), Some(rep.to_string()))
            }
            Err(Error::BudgetExhausted(_)) => (BssOutcome::Running, ptr::null_mut(), None),
            Err(e) => return Err(e.into()),
        };
        put(outcome, verdict, "outcome")?;
        put(summary, line, "summary")?;
        if !transcript.is_null() {
            transcript.write(full.map_or(ptr::null_mut(), owned_string));
        }
        Ok(())
    })
}
