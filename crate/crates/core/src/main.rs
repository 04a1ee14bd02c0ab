//! `bss`: run, trace and analyse BSS machines over the real algebraic numbers.
//!
//! Exit status: 0 halted and accepted, 1 halted and rejected (or a failed
//! check), 2 budget exhausted, 3 any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Signed;

use bss_core::algebraic::{
    approximate_relative_degree, approximate_with_degree, deg_enumerate, AlgebraicNumber, EvaluationView,
};
use bss_core::arith::{
    format_rational, parse_integer, parse_rational, tilde_qp_approximate, tilde_qp_construct, Rational,
};
use bss_core::checks::{run_suite, suite_info, SUITES};
use bss_core::machine::{
    parse_program, run_with, symbolic_run, validate_program, BssProgram, Mode, OracleSpec, RunOptions, RunStatus,
};
use bss_core::problems::{separation_demo, shipped_source, ProblemId, Reduction, SeparationMode, SHIPPED_PROGRAMS};
use bss_core::{Error, Result};

const EXIT_ACCEPT: u8 = 0;
const EXIT_REJECT: u8 = 1;
const EXIT_RUNNING: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "bss", version, about = "Exact BSS machines over the real algebraic numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program and print its output.
    Run {
        #[command(flatten)]
        machine: MachineArgs,
        /// Also write the trace to this file.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Print the step trace, or with --symbolic the path constraints.
    Trace {
        #[command(flatten)]
        machine: MachineArgs,
        /// Run on the indeterminate X, resolving signs at --shadow.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        shadow: Option<String>,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Semi-decide membership: Q, A, SQ or ROOTFIELD:<primes>.
    Semidecide {
        problem: String,
        x: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Run an oracle reduction, e.g. `Q<=A`.
    Reduce {
        reduction: String,
        x: String,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Print every oracle question and answer.
        #[arg(long)]
        transcript: bool,
    },
    /// Build an approximation or witness.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Run a check suite, or `all`.
    Check {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List shipped programs and check suites.
    List,
}

#[derive(clap::Args)]
struct MachineArgs {
    /// Program file; a missing file named after a shipped program uses
    /// the shipped copy.
    program: PathBuf,
    /// Inputs `x1, x2, ...` as `a/b` or `[c0,...,ck]@(lo,hi)`; put
    /// negative inputs after `--`.
    inputs: Vec<String>,
    /// Validate against this mode instead of the declared one.
    #[arg(long)]
    mode: Option<String>,
    /// Q, A, SQ, A<=d, A=d, QP:<primes>, ROOTFIELD:<primes>, PHALT:<budget>:<file>, none.
    #[arg(long, default_value = "none")]
    oracle: String,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Subcommand)]
enum Construct {
    /// An element of ~Q_p at distance p^-(2n+2l+1) from y = t/p^l.
    #[command(name = "tilde-qp", alias = "lemma13")]
    TildeQp {
        #[arg(long)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        n: u32,
    },
    /// Truncate x to p-adic precision k, then move into ~Q_p.
    #[command(name = "qp-approx")]
    QpApprox {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// An algebraic number of degree exactly n within eps of x.
    #[command(name = "degree-approx", alias = "lemma5")]
    DegreeApprox {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "1/1000")]
        eps: String,
    },
    /// r + p^(1/n) near x with degree n over every field of roots of q.
    #[command(name = "relative-degree")]
    RelativeDegree {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "1/1000")]
        eps: String,
    },
    /// Degree and minimal polynomial by blind search.
    Degree {
        x: String,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Witness following the halting path of a machine at a shadow point.
    Separation {
        program: PathBuf,
        #[arg(long, default_value = "full")]
        mode: String,
        #[arg(long, allow_hyphen_values = true)]
        shadow: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

/// Writes to stdout; a closed pipe ends the process quietly instead of panicking.
fn emit(args: std::fmt::Arguments, newline: bool) {
    use std::io::Write;
    let mut o = std::io::stdout().lock();
    let r = o.write_fmt(args).and_then(|()| if newline { o.write_all(b"\n") } else { Ok(()) });
    if let Err(e) = r {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
        std::process::exit(EXIT_ERROR.into());
    }
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!($($t)*), true) };
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*), false) };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Run { machine, trace_out } => cmd_run(&machine, trace_out.as_deref()),
        Command::Trace { machine, symbolic, shadow, out } => {
            cmd_trace(&machine, symbolic, shadow.as_deref(), out.as_deref())
        }
        Command::Semidecide { problem, x, budget } => cmd_semidecide(&problem, &x, budget),
        Command::Reduce { reduction, x, budget, transcript } => cmd_reduce(&reduction, &x, budget, transcript),
        Command::Construct { what } => cmd_construct(what),
        Command::Check { suite, seed } => cmd_check(&suite, seed),
        Command::List => {
            outln!("programs: {}", SHIPPED_PROGRAMS.join(" "));
            for s in SUITES {
                outln!("suite {}{}: {}", s.name, if s.randomized { " (needs --seed)" } else { "" }, s.about);
            }
            Ok(EXIT_ACCEPT)
        }
    }
}

fn load_program(path: &Path) -> Result<BssProgram> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            match shipped_source(stem) {
                Some(src) if path.extension().is_none_or(|x| x == "bss") => src.to_string(),
                _ => return Err(Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))),
            }
        }
    };
    parse_program(&text)
}

fn parse_inputs(inputs: &[String]) -> Result<Vec<AlgebraicNumber>> {
    inputs.iter().map(|s| s.parse()).collect()
}

fn parse_mode(text: &str) -> Result<Mode> {
    match text {
        "full" => Ok(Mode::Full),
        "linear" => Ok(Mode::Linear),
        other => Err(Error::UnknownId(format!("mode `{other}`"))),
    }
}

/// Program, inputs and oracle, all validated before anything runs.
fn prepare(m: &MachineArgs) -> Result<(BssProgram, Vec<AlgebraicNumber>, OracleSpec)> {
    let prog = load_program(&m.program)?;
    let mode = match &m.mode {
        Some(t) => parse_mode(t)?,
        None => prog.mode,
    };
    validate_program(&prog, mode)?;
    let inputs = parse_inputs(&m.inputs)?;
    let oracle = OracleSpec::parse(&m.oracle)?;
    Ok((prog, inputs, oracle))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn status_code<V>(status: &RunStatus<V>) -> u8 {
    match status {
        RunStatus::Halted { accepted: true, .. } => EXIT_ACCEPT,
        RunStatus::Halted { accepted: false, .. } => EXIT_REJECT,
        RunStatus::Running => EXIT_RUNNING,
    }
}

fn cmd_run(m: &MachineArgs, trace_out: Option<&Path>) -> Result<u8> {
    let (prog, inputs, oracle) = prepare(m)?;
    let mut opts = RunOptions::new(m.budget);
    if trace_out.is_some() {
        opts = opts.traced();
    }
    let res = run_with(&prog, &inputs, &oracle, &opts)?;
    if let Some(path) = trace_out {
        write_out(Some(path), &res.render_trace(&prog, &inputs))?;
    }
    match &res.status {
        RunStatus::Halted { output, .. } => {
            let shown: Vec<String> = output.iter().map(|v| v.to_string()).collect();
            outln!("{}", if shown.is_empty() { "0".to_string() } else { shown.join(" ") });
        }
        RunStatus::Running => outln!("running (budget {} exhausted)", m.budget),
    }
    Ok(status_code(&res.status))
}

fn cmd_trace(m: &MachineArgs, symbolic: bool, shadow: Option<&str>, out: Option<&Path>) -> Result<u8> {
    let (prog, inputs, oracle) = prepare(m)?;
    if !symbolic {
        if shadow.is_some() {
            return Err(Error::InvalidArgument("--shadow needs --symbolic".into()));
        }
        let res = run_with(&prog, &inputs, &oracle, &RunOptions::new(m.budget).traced())?;
        write_out(out, &res.render_trace(&prog, &inputs))?;
        return Ok(status_code(&res.status));
    }
    if !inputs.is_empty() {
        return Err(Error::InvalidArgument("a symbolic run takes no inputs; x1 is the indeterminate".into()));
    }
    let shadow = parse_rational(shadow.ok_or_else(|| Error::InvalidArgument("--symbolic needs --shadow".into()))?)?;
    let sym = symbolic_run(&prog, &shadow, &oracle, &RunOptions::new(m.budget))?;
    let mut text =
        format!("# program={} mode={} oracle={} shadow={}\n", prog.name, prog.mode, oracle, format_rational(&shadow));
    text.push_str(&sym.render_path());
    match &sym.result.status {
        RunStatus::Halted { output, accepted } => {
            let shown: Vec<String> = output.iter().map(|f| f.to_string()).collect();
            text.push_str(&format!(
                "# halted accept={} output=({}) steps={}\n",
                u8::from(*accepted),
                shown.join(","),
                sym.result.steps
            ));
        }
        RunStatus::Running => text.push_str(&format!("# running steps={}\n", sym.result.steps)),
    }
    write_out(out, &text)?;
    Ok(status_code(&sym.result.status))
}

fn cmd_semidecide(problem: &str, x: &str, budget: u64) -> Result<u8> {
    let id: ProblemId = problem.parse()?;
    let value: AlgebraicNumber = x.parse()?;
    let decision = id.semidecide(&value, budget)?;
    match &decision.certificate {
        Some(c) => {
            outln!("{c}");
            Ok(EXIT_ACCEPT)
        }
        None => {
            outln!("running (work {})", decision.work);
            Ok(EXIT_RUNNING)
        }
    }
}

fn cmd_reduce(name: &str, x: &str, budget: u64, transcript: bool) -> Result<u8> {
    let reduction: Reduction = name.parse()?;
    let value: AlgebraicNumber = x.parse()?;
    let report = match reduction.run(&value, budget) {
        Err(Error::BudgetExhausted(_)) => {
            outln!("running (budget {budget} exhausted)");
            return Ok(EXIT_RUNNING);
        }
        other => other?,
    };
    if transcript {
        out!("{report}");
    }
    outln!("{}", report.summary());
    Ok(if report.accepted { EXIT_ACCEPT } else { EXIT_REJECT })
}

fn cmd_construct(what: Construct) -> Result<u8> {
    match what {
        Construct::TildeQp { p, y, n } => {
            let p = parse_integer(&p)?;
            let y = parse_rational(&y)?;
            let z = tilde_qp_construct(&p, &y, n)?;
            let err = (&z - &y).abs();
            outln!("{} (err {})", format_rational(&z), format_rational(&err));
        }
        Construct::QpApprox { x, p, k, n } => {
            let a = tilde_qp_approximate(&parse_rational(&x)?, &parse_integer(&p)?, k, n)?;
            outln!("{} (y {}, err {})", format_rational(&a.z), format_rational(&a.y), format_rational(&a.error));
        }
        Construct::DegreeApprox { x, n, eps } => {
            let x = parse_rational(&x)?;
            let a = approximate_with_degree(&x, n, &parse_rational(&eps)?)?;
            outln!("{a} (deg {})", a.degree());
        }
        Construct::RelativeDegree { x, p, n, q, eps } => {
            let a = approximate_relative_degree(
                &parse_rational(&x)?,
                &parse_integer(&p)?,
                n,
                &parse_integer(&q)?,
                &parse_rational(&eps)?,
            )?;
            outln!("{a}");
        }
        Construct::Degree { x, budget } => {
            let value: AlgebraicNumber = x.parse()?;
            let (d, p) = deg_enumerate(&EvaluationView::new(&value), budget)?;
            outln!("deg={d} minpoly={p}");
        }
        Construct::Separation { program, mode, shadow, budget } => {
            let prog = load_program(&program)?;
            let mode: SeparationMode = mode.parse()?;
            let shadow: Rational = parse_rational(&shadow)?;
            let report = separation_demo(&prog, mode, &shadow, budget)?;
            out!("{report}");
            return Ok(if report.follows { EXIT_ACCEPT } else { EXIT_REJECT });
        }
    }
    Ok(EXIT_ACCEPT)
}

fn cmd_check(suite: &str, seed: Option<u64>) -> Result<u8> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|s| s.name).collect()
    } else {
        suite_info(suite).ok_or_else(|| Error::UnknownId(format!("suite `{suite}`")))?;
        vec![suite]
    };
    if seed.is_none() {
        if let Some(s) = names.iter().filter_map(|n| suite_info(n)).find(|s| s.randomized) {
            return Err(Error::InvalidArgument(format!("suite `{}` is randomized; pass --seed", s.name)));
        }
    }
    let (mut passed, mut failed) = (0usize, 0usize);
    for name in &names {
        for line in run_suite(name, seed)? {
            outln!("{line}");
            if line.pass {
                passed += 1;
            } else {
                failed += 1;
            }
        }
    }
    outln!("# summary suites={} checks={} passed={passed} failed={failed}", names.len(), passed + failed);
    Ok(if failed == 0 { EXIT_ACCEPT } else { EXIT_REJECT })
}
