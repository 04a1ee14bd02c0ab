//! Acceptance criteria, one `PASS|FAIL` line each.  Runs without the test
//! harness so the lines always reach standard output; exits nonzero on any
//! failure.  Individual failing checks are echoed below their criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bss_core::checks::{run_suite, CheckLine};

const SEED: u64 = 7;

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    /// Wall-clock limit for the whole criterion, if any.
    limit: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "degree search recovers stored minimal polynomials",
        suites: &["degree"],
        limit: Some(Duration::from_secs(300)),
    },
    Criterion {
        id: 2,
        title: "irreducibility agrees with exhaustive factor search",
        suites: &["kronecker"],
        limit: None,
    },
    Criterion { id: 3, title: "rational function recovery is exact", suites: &["recovery"], limit: None },
    Criterion { id: 4, title: "high-degree inputs leave the rationals", suites: &["degree-bound"], limit: None },
    Criterion { id: 5, title: "prime root field degrees are consistent", suites: &["besicovitch"], limit: None },
    Criterion { id: 6, title: "density constructions are exact", suites: &["density"], limit: None },
    Criterion { id: 7, title: "reductions agree with direct membership", suites: &["reductions"], limit: None },
    // Three full-mode demos and two linear ones, each far below a minute.
    Criterion {
        id: 8,
        title: "separation witnesses follow the shadow path",
        suites: &["separation-full", "separation-linear"],
        limit: Some(Duration::from_secs(60)),
    },
    Criterion { id: 9, title: "VM traces are deterministic and exact", suites: &["vm"], limit: None },
    Criterion { id: 10, title: "semi-deciders halt exactly on members", suites: &["semidecide"], limit: None },
];

fn main() -> ExitCode {
    let mut all_pass = true;
    for c in CRITERIA {
        let start = Instant::now();
        let mut lines: Vec<CheckLine> = Vec::new();
        let mut error = None;
        for suite in c.suites {
            match run_suite(suite, Some(SEED)) {
                Ok(ls) => lines.extend(ls),
                Err(e) => error = Some(format!("{suite}: {e}")),
            }
        }
        let elapsed = start.elapsed();
        let failed: Vec<&CheckLine> = lines.iter().filter(|l| !l.pass).collect();
        let in_time = c.limit.is_none_or(|limit| elapsed <= limit);
        let pass = error.is_none() && failed.is_empty() && !lines.is_empty() && in_time;
        all_pass &= pass;
        let mut detail = format!("{} checks, {} failed, {:.1}s", lines.len(), failed.len(), elapsed.as_secs_f64());
        if let Some(limit) = c.limit {
            detail.push_str(&format!(" (limit {}s)", limit.as_secs()));
        }
        if let Some(e) = &error {
            detail.push_str(&format!(", error: {e}"));
        }
        println!("{} criterion-{} {}: {detail}", if pass { "PASS" } else { "FAIL" }, c.id, c.title);
        for l in failed {
            println!("    {l}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
