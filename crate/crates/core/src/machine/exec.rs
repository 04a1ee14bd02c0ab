//! The interpreter.  One loop serves numeric runs over algebraic numbers
//! and symbolic runs over rational functions; the value domain decides
//! arithmetic, branch signs and oracle answers.

use std::fmt;

use num_traits::{One, Zero};

use super::{BssProgram, InstructionKind, OracleSpec};
use crate::algebraic::{alg_arith_with, AlgConfig, AlgebraicNumber, ArithOp};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::RationalFunction;

/// `(n, i, j, x)`.  Registers past the end of `tape` read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration<V = AlgebraicNumber> {
    pub label: usize,
    pub i: usize,
    pub j: usize,
    pub tape: Vec<V>,
}

impl<V: Clone> Configuration<V> {
    /// `(1, 1, 1, x)` with the input in `x_1, x_2, ...`.
    pub fn initial(zero: V, input: &[V]) -> Self {
        let mut tape = vec![zero];
        tape.extend_from_slice(input);
        Configuration { label: 1, i: 1, j: 1, tape }
    }

    fn read(&self, k: usize, zero: &V) -> V {
        self.tape.get(k).cloned().unwrap_or_else(|| zero.clone())
    }

    fn write(&mut self, k: usize, v: V, zero: &V) {
        if k >= self.tape.len() {
            self.tape.resize(k + 1, zero.clone());
        }
        self.tape[k] = v;
    }
}

/// Answer to one membership question about a single test value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    In,
    Out,
    NotQueried,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "in",
            Membership::Out => "out",
            Membership::NotQueried => "not-queried",
        })
    }
}

/// Sign of a tested value and, for oracle components, its membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Observation {
    pub sign: i8,
    pub membership: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleQuery {
    pub query: Vec<AlgebraicNumber>,
    pub answer: bool,
}

/// One executed node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: u64,
    pub label: usize,
    pub instr: String,
    /// Copy registers after the step.
    pub i: usize,
    pub j: usize,
    pub fields: Vec<(String, String)>,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step={} label={} instr=\"{}\" i={} j={}", self.step, self.label, self.instr, self.i, self.j)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunStatus<V = AlgebraicNumber> {
    /// Reached the final label.  `output` is `x_1, x_2, ...` without
    /// trailing zeros.
    Halted { output: Vec<V>, accepted: bool },
    /// Budget exhausted.
    Running,
}

#[derive(Clone, Debug)]
pub struct RunResult<V = AlgebraicNumber> {
    pub status: RunStatus<V>,
    pub steps: u64,
    pub trace: Vec<TraceRecord>,
    pub observations: Vec<Observation>,
    pub queries: Vec<OracleQuery>,
}

impl<V: TraceValue> RunResult<V> {
    pub fn is_halted(&self) -> bool {
        matches!(self.status, RunStatus::Halted { .. })
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self.status, RunStatus::Halted { accepted: true, .. })
    }

    pub fn output(&self) -> Option<&[V]> {
        match &self.status {
            RunStatus::Halted { output, .. } => Some(output),
            RunStatus::Running => None,
        }
    }

    /// Header, one line per step, footer.
    pub fn render_trace(&self, prog: &BssProgram, input: &[V]) -> String {
        let mut s = format!("# program={} mode={} input=({})\n", prog.name, prog.mode, join(input));
        for r in &self.trace {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        match &self.status {
            RunStatus::Halted { output, accepted } => s.push_str(&format!(
                "# halted steps={} output=({}) accept={}\n",
                self.steps,
                join(output),
                u8::from(*accepted)
            )),
            RunStatus::Running => s.push_str(&format!("# running steps={}\n", self.steps)),
        }
        s
    }
}

fn join<V: TraceValue>(vs: &[V]) -> String {
    vs.iter().map(TraceValue::trace_text).collect::<Vec<_>>().join(",")
}

/// Values as they appear in traces: no spaces.
pub trait TraceValue {
    fn trace_text(&self) -> String;
}

impl TraceValue for AlgebraicNumber {
    fn trace_text(&self) -> String {
        self.to_string()
    }
}

impl TraceValue for RationalFunction {
    fn trace_text(&self) -> String {
        if self.denominator().is_constant() {
            return self.numerator().to_string().replace(' ', "");
        }
        format!("{}/{}", self.numerator(), self.denominator()).replace(' ', "")
    }
}

/// A value domain for the interpreter.
pub(crate) trait Domain {
    type V: Clone + TraceValue;
    fn zero(&self) -> Self::V;
    fn constant(&mut self, c: &Rational) -> Result<Self::V>;
    fn arith(&mut self, op: ArithOp, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    /// Sign of a branch test.
    fn test_sign(&mut self, v: &Self::V) -> Result<i8>;
    /// Whether the tuple lies in the oracle set.
    fn query(&mut self, q: &[Self::V]) -> Result<bool>;
    fn is_zero(&self, v: &Self::V) -> bool;
    fn observations(&mut self) -> Vec<Observation>;
    fn queries(&mut self) -> Vec<OracleQuery> {
        Vec::new()
    }
}

pub(crate) struct Numeric<'o> {
    oracle: &'o OracleSpec,
    cfg: AlgConfig,
    observations: Vec<Observation>,
    queries: Vec<OracleQuery>,
}

impl<'o> Numeric<'o> {
    pub(crate) fn new(oracle: &'o OracleSpec, cfg: AlgConfig) -> Self {
        Numeric { oracle, cfg, observations: Vec::new(), queries: Vec::new() }
    }
}

impl Domain for Numeric<'_> {
    type V = AlgebraicNumber;

    fn zero(&self) -> AlgebraicNumber {
        AlgebraicNumber::zero()
    }

    fn constant(&mut self, c: &Rational) -> Result<AlgebraicNumber> {
        Ok(AlgebraicNumber::from_rational(c.clone()))
    }

    fn arith(&mut self, op: ArithOp, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        alg_arith_with(a, b, op, &self.cfg)
    }

    fn test_sign(&mut self, v: &AlgebraicNumber) -> Result<i8> {
        let sign = v.sign();
        self.observations.push(Observation { sign, membership: Membership::NotQueried });
        Ok(sign)
    }

    fn query(&mut self, q: &[AlgebraicNumber]) -> Result<bool> {
        let answer = if let OracleSpec::PseudoHalting { .. } = self.oracle {
            let a = self.oracle.contains(q)?;
            for x in q {
                let membership = if a { Membership::In } else { Membership::Out };
                self.observations.push(Observation { sign: x.sign(), membership });
            }
            a
        } else {
            let mut all = true;
            for x in q {
                let m = self.oracle.member(x)?;
                all &= m;
                let membership = if m { Membership::In } else { Membership::Out };
                self.observations.push(Observation { sign: x.sign(), membership });
            }
            all
        };
        self.queries.push(OracleQuery { query: q.to_vec(), answer });
        Ok(answer)
    }

    fn is_zero(&self, v: &AlgebraicNumber) -> bool {
        v.is_zero()
    }

    fn observations(&mut self) -> Vec<Observation> {
        std::mem::take(&mut self.observations)
    }

    fn queries(&mut self) -> Vec<OracleQuery> {
        std::mem::take(&mut self.queries)
    }
}

/// Executes the node at `c.label`.  Division by zero is reported with the
/// offending label.
fn exec_one<D: Domain>(
    prog: &BssProgram,
    dom: &mut D,
    c: &mut Configuration<D::V>,
    fields: Option<&mut Vec<(String, String)>>,
) -> Result<()> {
    let label = c.label;
    let ins = prog.at(label);
    let zero = dom.zero();
    let mut out: Vec<(String, String)> = Vec::new();
    let record = fields.is_some();
    match &ins.kind {
        InstructionKind::Compute { op, target, lhs, rhs } => {
            let v = dom.arith(*op, &c.read(*lhs, &zero), &c.read(*rhs, &zero)).map_err(|e| match e {
                Error::DivisionByZero => Error::Runtime { label, message: "division by zero".into() },
                other => other,
            })?;
            if record {
                out.push((format!("r{target}"), v.trace_text()));
            }
            c.write(*target, v, &zero);
            c.i = ins.i_update.apply(c.i);
            c.j = ins.j_update.apply(c.j);
            c.label += 1;
        }
        InstructionKind::SetConst { target, value } => {
            let v = dom.constant(value)?;
            if record {
                out.push((format!("r{target}"), v.trace_text()));
            }
            c.write(*target, v, &zero);
            c.i = ins.i_update.apply(c.i);
            c.j = ins.j_update.apply(c.j);
            c.label += 1;
        }
        InstructionKind::Branch { target } => {
            let x0 = c.read(0, &zero);
            let taken = dom.test_sign(&x0)? >= 0;
            if record {
                out.push(("r0".into(), x0.trace_text()));
                out.push(("branch".into(), if taken { "taken" } else { "fall" }.into()));
            }
            c.label = if taken { *target } else { label + 1 };
        }
        InstructionKind::Copy => {
            let v = c.read(c.j, &zero);
            if record {
                out.push((format!("r{}", c.i), v.trace_text()));
            }
            let i = c.i;
            c.write(i, v, &zero);
            c.label += 1;
        }
        InstructionKind::Oracle => {
            let q: Vec<D::V> = (1..=c.i).map(|k| c.read(k, &zero)).collect();
            let answer = dom.query(&q)?;
            let v = dom.constant(&if answer { Rational::one() } else { Rational::zero() })?;
            if record {
                out.push(("query".into(), format!("({})", join(&q))));
                out.push(("answer".into(), u8::from(answer).to_string()));
                out.push(("r0".into(), v.trace_text()));
            }
            c.write(0, v, &zero);
            c.label += 1;
        }
        InstructionKind::Halt => {
            return Err(Error::Runtime { label, message: "cannot step past HALT".into() });
        }
    }
    if let Some(f) = fields {
        *f = out;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Maximum number of nodes visited, the final HALT included.
    pub budget: u64,
    pub trace: bool,
    pub alg: AlgConfig,
}

impl RunOptions {
    pub fn new(budget: u64) -> Self {
        RunOptions { budget, trace: false, alg: AlgConfig::default() }
    }

    pub fn traced(mut self) -> Self {
        self.trace = true;
        self
    }
}

pub(crate) fn execute<D: Domain>(
    prog: &BssProgram,
    dom: &mut D,
    input: &[D::V],
    opts: &RunOptions,
) -> Result<RunResult<D::V>> {
    let zero = dom.zero();
    let mut c = Configuration::initial(zero, input);
    let mut steps = 0u64;
    let mut trace = Vec::new();
    let n = prog.len();
    let status = loop {
        if steps >= opts.budget {
            break RunStatus::Running;
        }
        steps += 1;
        if c.label == n {
            if opts.trace {
                trace.push(TraceRecord {
                    step: steps,
                    label: n,
                    instr: prog.at(n).to_string(),
                    i: c.i,
                    j: c.j,
                    fields: Vec::new(),
                });
            }
            let mut output: Vec<D::V> = c.tape.iter().skip(1).cloned().collect();
            while output.last().is_some_and(|v| dom.is_zero(v)) {
                output.pop();
            }
            let accepted = output.first().is_some_and(|v| !dom.is_zero(v));
            break RunStatus::Halted { output, accepted };
        }
        let label = c.label;
        if opts.trace {
            let mut fields = Vec::new();
            exec_one(prog, dom, &mut c, Some(&mut fields))?;
            trace.push(TraceRecord { step: steps, label, instr: prog.at(label).to_string(), i: c.i, j: c.j, fields });
        } else {
            exec_one(prog, dom, &mut c, None)?;
        }
    };
    Ok(RunResult { status, steps, trace, observations: dom.observations(), queries: dom.queries() })
}

/// Runs on algebraic input without recording a trace.
pub fn run(prog: &BssProgram, input: &[AlgebraicNumber], oracle: &OracleSpec, budget: u64) -> Result<RunResult> {
    run_with(prog, input, oracle, &RunOptions::new(budget))
}

pub fn run_with(
    prog: &BssProgram,
    input: &[AlgebraicNumber],
    oracle: &OracleSpec,
    opts: &RunOptions,
) -> Result<RunResult> {
    let mut dom = Numeric::new(oracle, opts.alg);
    execute(prog, &mut dom, input, opts)
}

/// One node of a numeric run.
pub fn step(c: &Configuration, prog: &BssProgram, oracle: &OracleSpec) -> Result<Configuration> {
    if c.label == 0 || c.label > prog.len() {
        return Err(Error::Runtime { label: c.label, message: "label out of range".into() });
    }
    if c.label == prog.len() {
        return Err(Error::Runtime { label: c.label, message: "cannot step past HALT".into() });
    }
    let mut dom = Numeric::new(oracle, AlgConfig::default());
    let mut next = c.clone();
    exec_one(prog, &mut dom, &mut next, None)?;
    Ok(next)
}

/// Re-decides every branch of a numeric trace from its recorded `r0` and
/// returns how many were checked.
pub fn replay_branches(trace: &str) -> Result<usize> {
    let mut checked = 0;
    for (k, line) in trace.lines().enumerate() {
        if line.starts_with('#') || !line.contains(" branch=") {
            continue;
        }
        let after_instr = line
            .split_once("instr=\"")
            .and_then(|(_, rest)| rest.split_once('"'))
            .map(|(_, rest)| rest)
            .ok_or_else(|| Error::parse(format!("trace line {} has no instruction", k + 1)))?;
        let field = |name: &str| {
            after_instr
                .split_whitespace()
                .find_map(|f| f.strip_prefix(name).and_then(|v| v.strip_prefix('=')))
                .ok_or_else(|| Error::parse(format!("trace line {} lacks `{name}`", k + 1)))
        };
        let x0: AlgebraicNumber = field("r0")?.parse()?;
        let taken = match field("branch")? {
            "taken" => true,
            "fall" => false,
            other => return Err(Error::parse(format!("bad branch value `{other}` on trace line {}", k + 1))),
        };
        if (x0.sign() >= 0) != taken {
            return Err(Error::Validation(format!(
                "trace line {}: branch on {x0} recorded as {}",
                k + 1,
                if taken { "taken" } else { "fall" }
            )));
        }
        checked += 1;
    }
    Ok(checked)
}
