//! Register machines over the reals with exact arithmetic, sign branches,
//! indirect copy and oracle nodes.
//!
//! A configuration is `(n, i, j, x)`: the current label, two copy
//! registers and the register tape.  Runs start at `(1, 1, 1, x)` with the
//! input in `x_1, x_2, ...`; `x_0` is the register tested by branches and
//! written by oracle nodes.  A halted run outputs `x_1, x_2, ...` without
//! trailing zeros and accepts when `x_1 != 0`.

pub mod dovetail;
pub mod exec;
pub mod oracle;
pub mod parse;
pub mod symbolic;

use std::fmt;

use crate::algebraic::ArithOp;
use crate::arith::Rational;

pub use dovetail::{dovetail, linear_schedule, DovetailOutcome, StageFamily, StageOutcome};
pub use exec::{
    replay_branches, run, run_with, step, Configuration, Membership, Observation, OracleQuery, RunOptions, RunResult,
    RunStatus, TraceRecord,
};
pub use oracle::OracleSpec;
pub use parse::{parse_program, validate_program};
pub use symbolic::{path_degree_bound, symbolic_run, PathConstraint, SymbolicRun};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Full,
    /// Only addition, subtraction, comparisons and the constants 0 and 1.
    Linear,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Linear => "linear",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "linear" => Ok(Mode::Linear),
            _ => Err(crate::Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

/// Effect of a computation node on a copy register.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CopyUpdate {
    Inc,
    Zero,
    #[default]
    Keep,
}

impl CopyUpdate {
    pub fn apply(self, r: usize) -> usize {
        match self {
            CopyUpdate::Inc => r + 1,
            CopyUpdate::Zero => 0,
            CopyUpdate::Keep => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstructionKind {
    /// `x_target <- x_lhs op x_rhs`
    Compute {
        op: ArithOp,
        target: usize,
        lhs: usize,
        rhs: usize,
    },
    /// `x_target <- value`
    SetConst {
        target: usize,
        value: Rational,
    },
    /// `if x_0 >= 0 goto target`
    Branch {
        target: usize,
    },
    /// `x_i <- x_j`
    Copy,
    /// Ask whether `(x_1, ..., x_i)` lies in the oracle set; answer in `x_0`.
    Oracle,
    Halt,
}

#[derive(Clone, Debug)]
pub struct Instruction {
    pub kind: InstructionKind,
    pub i_update: CopyUpdate,
    pub j_update: CopyUpdate,
    /// Source line the instruction came from; ignored by equality.
    pub line: usize,
}

impl PartialEq for Instruction {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind && self.i_update == o.i_update && self.j_update == o.j_update
    }
}

impl Eq for Instruction {}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            InstructionKind::Compute { op, target, lhs, rhs } => {
                let name = match op {
                    ArithOp::Add => "ADD",
                    ArithOp::Sub => "SUB",
                    ArithOp::Mul => "MUL",
                    ArithOp::Div => "DIV",
                };
                write!(f, "{name} r{target} <- r{lhs} r{rhs}")?;
            }
            InstructionKind::SetConst { target, value } => write!(f, "CONST r{target} <- {value}")?,
            InstructionKind::Branch { target } => write!(f, "JGEZ {target}")?,
            InstructionKind::Copy => f.write_str("COPY")?,
            InstructionKind::Oracle => f.write_str("ORACLE")?,
            InstructionKind::Halt => f.write_str("HALT")?,
        }
        for (reg, u) in [("i", self.i_update), ("j", self.j_update)] {
            match u {
                CopyUpdate::Inc => write!(f, " {reg}:inc")?,
                CopyUpdate::Zero => write!(f, " {reg}:zero")?,
                CopyUpdate::Keep => {}
            }
        }
        Ok(())
    }
}

/// Instructions labelled `1..=N`; label `N` is the only `HALT`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BssProgram {
    pub name: String,
    pub mode: Mode,
    instructions: Vec<Instruction>,
}

impl BssProgram {
    pub(crate) fn from_parts(name: String, mode: Mode, instructions: Vec<Instruction>) -> Self {
        BssProgram { name, mode, instructions }
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Instruction at a 1-based label.
    pub fn at(&self, label: usize) -> &Instruction {
        &self.instructions[label - 1]
    }

    /// Every constant appearing in the program.
    pub fn constants(&self) -> impl Iterator<Item = &Rational> {
        self.instructions.iter().filter_map(|ins| match &ins.kind {
            InstructionKind::SetConst { value, .. } => Some(value),
            _ => None,
        })
    }

    pub fn uses_oracle(&self) -> bool {
        self.instructions.iter().any(|ins| ins.kind == InstructionKind::Oracle)
    }
}

impl fmt::Display for BssProgram {
    /// Canonical assembly: one numbered instruction per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name {}", self.name)?;
        writeln!(f, "mode {}", self.mode)?;
        for (k, ins) in self.instructions.iter().enumerate() {
            writeln!(f, "{}: {ins}", k + 1)?;
        }
        Ok(())
    }
}
