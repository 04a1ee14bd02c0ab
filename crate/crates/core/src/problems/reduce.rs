//! Oracle reductions.  Every run records the oracle questions it asked, so
//! a report can be replayed against the exact oracle.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::shipped_program;
use crate::algebraic::{alg_arith, alg_nth_root, deg_enumerate_counted, AlgebraicNumber, ArithOp, EvaluationView};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::machine::exec::TraceValue;
use crate::machine::{run, symbolic_run, Mode, OracleQuery, OracleSpec, RunOptions, RunResult, SymbolicRun};

/// Which way the degree-2 equivalence is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum A2Direction {
    /// Decide degree at most 2 with the degree-exactly-2 oracle.
    LeFromEq,
    /// Decide degree exactly 2 with the degree-at-most-2 oracle.
    EqFromLe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Rationals with the algebraic oracle, native degree search.
    QToA,
    /// The same reduction as an assembly machine.
    QToAMachine,
    /// Squares of rationals with the rationals oracle, linear machine.
    SqToQLinear,
    /// Rationals with the squares oracle, by squaring.
    QToSqFull,
    A2(A2Direction),
}

impl Reduction {
    pub const ALL: [Reduction; 6] = [
        Reduction::QToA,
        Reduction::QToAMachine,
        Reduction::SqToQLinear,
        Reduction::QToSqFull,
        Reduction::A2(A2Direction::LeFromEq),
        Reduction::A2(A2Direction::EqFromLe),
    ];

    pub fn oracle(self) -> OracleSpec {
        match self {
            Reduction::QToA | Reduction::QToAMachine => OracleSpec::Algebraic,
            Reduction::SqToQLinear => OracleSpec::Rationals,
            Reduction::QToSqFull => OracleSpec::SquareRationals,
            Reduction::A2(A2Direction::LeFromEq) => OracleSpec::DegreeExactly(2),
            Reduction::A2(A2Direction::EqFromLe) => OracleSpec::DegreeAtMost(2),
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Reduction::SqToQLinear => Mode::Linear,
            _ => Mode::Full,
        }
    }

    pub fn run(self, x: &AlgebraicNumber, budget: u64) -> Result<ReductionReport> {
        match self {
            Reduction::QToA => reduce_q_to_a(x, budget),
            Reduction::QToAMachine => reduce_q_to_a_machine(x, budget),
            Reduction::SqToQLinear => reduce_sq_to_q_linear(x, budget),
            Reduction::QToSqFull => reduce_q_to_sq_full(x, budget),
            Reduction::A2(d) => equiv_a2(x, d, budget),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::QToA => "Q<=A",
            Reduction::QToAMachine => "Q<=A/machine",
            Reduction::SqToQLinear => "SQ<=Q",
            Reduction::QToSqFull => "Q<=SQ",
            Reduction::A2(A2Direction::LeFromEq) => "A<=2<=A=2",
            Reduction::A2(A2Direction::EqFromLe) => "A=2<=A<=2",
        })
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Reduction::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::UnknownId(format!("reduction `{s}`")))
    }
}

/// Outcome of one reduction run.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub reduction: Reduction,
    pub input: AlgebraicNumber,
    pub queries: Vec<OracleQuery>,
    pub accepted: bool,
    /// Machine steps, or oracle questions plus candidates for native runs.
    pub steps: u64,
    pub mode: Mode,
    /// Short reason, such as `deg=2`.
    pub detail: String,
}

impl ReductionReport {
    pub fn oracle(&self) -> OracleSpec {
        self.reduction.oracle()
    }

    pub fn verdict(&self) -> &'static str {
        if self.accepted {
            "accept"
        } else {
            "reject"
        }
    }

    /// `reject: deg=2`.
    pub fn summary(&self) -> String {
        format!("{}: {}", self.verdict(), self.detail)
    }

    /// Re-asks every recorded question of the exact oracle and reruns the
    /// reduction; true iff all answers, the questions and the verdict agree.
    pub fn replay(&self, budget: u64) -> Result<bool> {
        let oracle = self.oracle();
        for q in &self.queries {
            if oracle.contains(&q.query)? != q.answer {
                return Ok(false);
            }
        }
        let again = self.reduction.run(&self.input, budget)?;
        Ok(again.accepted == self.accepted && again.queries == self.queries)
    }
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# reduction={} mode={} oracle={} input={}",
            self.reduction,
            self.mode,
            self.oracle(),
            self.input.trace_text()
        )?;
        for q in &self.queries {
            let parts: Vec<String> = q.query.iter().map(TraceValue::trace_text).collect();
            writeln!(f, "query=({}) answer={}", parts.join(","), u8::from(q.answer))?;
        }
        writeln!(f, "# verdict={} steps={} detail={}", self.verdict(), self.steps, self.detail)
    }
}

fn ask(oracle: &OracleSpec, x: &AlgebraicNumber, queries: &mut Vec<OracleQuery>) -> Result<bool> {
    let answer = oracle.contains(std::slice::from_ref(x))?;
    queries.push(OracleQuery { query: vec![x.clone()], answer });
    Ok(answer)
}

fn finish_machine(
    reduction: Reduction,
    x: &AlgebraicNumber,
    res: RunResult,
    budget: u64,
    detail: impl FnOnce(&RunResult) -> String,
) -> Result<ReductionReport> {
    if !res.is_halted() {
        return Err(Error::BudgetExhausted(budget));
    }
    let detail = detail(&res);
    Ok(ReductionReport {
        reduction,
        input: x.clone(),
        accepted: res.is_accepted(),
        steps: res.steps,
        mode: reduction.mode(),
        queries: res.queries,
        detail,
    })
}

/// Rationals from the algebraic oracle: a negative answer rejects, a
/// positive one is followed by the blind degree search, accepting iff the
/// degree is 1.  Runtime values are always algebraic, so the negative branch
/// is only reachable symbolically, see [`reduce_q_to_a_symbolic`].
pub fn reduce_q_to_a(x: &AlgebraicNumber, budget: u64) -> Result<ReductionReport> {
    let reduction = Reduction::QToA;
    let mut queries = Vec::new();
    let algebraic = ask(&reduction.oracle(), x, &mut queries)?;
    let (accepted, steps, detail) = if algebraic {
        let (d, _, examined) = deg_enumerate_counted(&EvaluationView::new(x), budget)?;
        (d == 1, 1 + examined, format!("deg={d}"))
    } else {
        (false, 1, "not algebraic".to_string())
    };
    Ok(ReductionReport { reduction, input: x.clone(), queries, accepted, steps, mode: Mode::Full, detail })
}

/// The assembly form of [`reduce_q_to_a`]: polynomial search by
/// coefficient odometer, then a rational root scan.
pub fn reduce_q_to_a_machine(x: &AlgebraicNumber, budget: u64) -> Result<ReductionReport> {
    let reduction = Reduction::QToAMachine;
    let prog = shipped_program("q_to_a")?;
    let res = run(&prog, std::slice::from_ref(x), &reduction.oracle(), budget)?;
    finish_machine(reduction, x, res, budget, |r| {
        if r.is_accepted() { "rational root found" } else { "no rational root" }.to_string()
    })
}

/// The assembly reduction on a transcendental input: the oracle says no and
/// the machine rejects before any search.
pub fn reduce_q_to_a_symbolic(shadow: &Rational, budget: u64) -> Result<SymbolicRun> {
    let prog = shipped_program("q_to_a")?;
    symbolic_run(&prog, shadow, &OracleSpec::Algebraic, &RunOptions::new(budget))
}

/// Squares of rationals from the rationals oracle, in linear mode.
pub fn reduce_sq_to_q_linear(x: &AlgebraicNumber, budget: u64) -> Result<ReductionReport> {
    let reduction = Reduction::SqToQLinear;
    let prog = shipped_program("sq_to_q")?;
    let res = run(&prog, std::slice::from_ref(x), &reduction.oracle(), budget)?;
    finish_machine(reduction, x, res, budget, |r| match (r.output(), r.queries.first()) {
        (Some(out), _) if r.is_accepted() => {
            let v = |k: usize| out.get(k).map(TraceValue::trace_text).unwrap_or_else(|| "0".into());
            format!("pair=({},{})", v(1), v(2))
        }
        (_, None) => "negative".to_string(),
        (_, Some(q)) if !q.answer => "not rational".to_string(),
        _ => "no square pair".to_string(),
    })
}

/// Rationals from the squares oracle: ask about `x^2`.
pub fn reduce_q_to_sq_full(x: &AlgebraicNumber, budget: u64) -> Result<ReductionReport> {
    let reduction = Reduction::QToSqFull;
    let prog = shipped_program("q_to_sq")?;
    let res = run(&prog, std::slice::from_ref(x), &reduction.oracle(), budget)?;
    finish_machine(reduction, x, res, budget, |r| {
        if r.is_accepted() { "x^2 is a square" } else { "x^2 is not a square" }.to_string()
    })
}

/// The two reductions between degree exactly 2 and degree at most 2.
///
/// From the exact-degree oracle: ask about `x` and `x + sqrt 2`.  If either
/// has degree 2 then `x` is algebraic and its degree is searched; if
/// neither does, `x` cannot be rational (else `x + sqrt 2` would have
/// degree 2) and is rejected.  From the at-most oracle: a positive answer
/// is followed by the degree search.
pub fn equiv_a2(x: &AlgebraicNumber, direction: A2Direction, budget: u64) -> Result<ReductionReport> {
    let reduction = Reduction::A2(direction);
    let oracle = reduction.oracle();
    let mut queries = Vec::new();
    let mut steps = 0;
    let degree = |steps: &mut u64| -> Result<usize> {
        let (d, _, examined) = deg_enumerate_counted(&EvaluationView::new(x), budget)?;
        *steps += examined;
        Ok(d)
    };
    let (accepted, detail) = match direction {
        A2Direction::LeFromEq => {
            steps += 1;
            if ask(&oracle, x, &mut queries)? {
                (true, "deg=2".to_string())
            } else {
                let s2 = alg_nth_root(&rat(2, 1), 2)?;
                let y = alg_arith(x, &s2, ArithOp::Add)?;
                steps += 1;
                if ask(&oracle, &y, &mut queries)? {
                    let d = degree(&mut steps)?;
                    (d <= 2, format!("deg={d}"))
                } else {
                    (false, "x and x+sqrt2 both outside A=2".to_string())
                }
            }
        }
        A2Direction::EqFromLe => {
            steps += 1;
            if ask(&oracle, x, &mut queries)? {
                let d = degree(&mut steps)?;
                (d == 2, format!("deg={d}"))
            } else {
                (false, "deg>2".to_string())
            }
        }
    };
    Ok(ReductionReport { reduction, input: x.clone(), queries, accepted, steps, mode: Mode::Full, detail })
}

/// Whether `x` is a square of a rational, decided directly.
pub(crate) fn is_rational_square(x: &Rational) -> Result<bool> {
    Ok(!x.is_negative() && crate::arith::nth_root_exact(x, 2)?.is_some())
}
