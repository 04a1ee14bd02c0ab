//! Named sets of reals, semi-deciders and oracle reductions between them,
//! and constructive separation witnesses.

pub mod reduce;
pub mod semidecide;
pub mod separation;

use std::fmt;
use std::str::FromStr;

use crate::algebraic::AlgebraicNumber;
use crate::arith::{format_rational, Integer, PrimeSet, Rational};
use crate::error::{Error, Result};
use crate::machine::{parse_program, BssProgram, OracleSpec};
use crate::poly::IntPolynomial;

pub use reduce::{
    equiv_a2, reduce_q_to_a, reduce_q_to_a_machine, reduce_q_to_a_symbolic, reduce_q_to_sq_full, reduce_sq_to_q_linear,
    A2Direction, Reduction, ReductionReport,
};
pub use semidecide::{semidecide_a, semidecide_q, semidecide_root_field, semidecide_sq, SemiDecision};
pub use separation::{separation_demo, SeparationMode, SeparationReport};

/// A subset of the reals addressable by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemId {
    Rationals,
    Algebraic,
    SquareRationals,
    DegreeAtMost(usize),
    DegreeExactly(usize),
    Qp(PrimeSet),
    RootField(PrimeSet),
}

impl ProblemId {
    /// The same set used as an oracle.
    pub fn oracle(&self) -> OracleSpec {
        match self {
            ProblemId::Rationals => OracleSpec::Rationals,
            ProblemId::Algebraic => OracleSpec::Algebraic,
            ProblemId::SquareRationals => OracleSpec::SquareRationals,
            ProblemId::DegreeAtMost(d) => OracleSpec::DegreeAtMost(*d),
            ProblemId::DegreeExactly(d) => OracleSpec::DegreeExactly(*d),
            ProblemId::Qp(ps) => OracleSpec::Qp(ps.clone()),
            ProblemId::RootField(ps) => OracleSpec::RootField(ps.clone()),
        }
    }

    pub fn contains(&self, x: &AlgebraicNumber) -> Result<bool> {
        self.oracle().member(x)
    }

    /// Runs the semi-decider for this set, if one exists.
    pub fn semidecide(&self, x: &AlgebraicNumber, budget: u64) -> Result<SemiDecision> {
        match self {
            ProblemId::Rationals => semidecide_q(x, budget),
            ProblemId::Algebraic => semidecide_a(x, budget),
            ProblemId::SquareRationals => match x.as_rational() {
                Some(q) => semidecide_sq(q, budget),
                None => Err(Error::Unsupported("the squares semi-decider takes rational inputs".into())),
            },
            ProblemId::RootField(ps) => semidecide_root_field(x, ps, budget),
            other => Err(Error::Unsupported(format!("no semi-decider for {other}"))),
        }
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match OracleSpec::parse(s)? {
            OracleSpec::Rationals => ProblemId::Rationals,
            OracleSpec::Algebraic => ProblemId::Algebraic,
            OracleSpec::SquareRationals => ProblemId::SquareRationals,
            OracleSpec::DegreeAtMost(d) => ProblemId::DegreeAtMost(d),
            OracleSpec::DegreeExactly(d) => ProblemId::DegreeExactly(d),
            OracleSpec::Qp(ps) => ProblemId::Qp(ps),
            OracleSpec::RootField(ps) => ProblemId::RootField(ps),
            _ => return Err(Error::UnknownId(format!("problem `{}`", s.trim()))),
        })
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.oracle().fmt(f)
    }
}

/// Evidence produced by an accepting semi-decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `x = r / s`.
    Fraction { r: Integer, s: Integer },
    /// A polynomial vanishing at `x`.
    Annihilator(IntPolynomial),
    /// `x * s^2 = r^2`.
    Square { r: Integer, s: Integer },
    /// `x = sum a_e * b_e` over the basis of `K`-th root monomials.
    FieldElement { k: u64, coeffs: Vec<Rational> },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Fraction { r, s } | Certificate::Square { r, s } => write!(f, "({r},{s})"),
            Certificate::Annihilator(p) => p.fmt(f),
            Certificate::FieldElement { k, coeffs } => {
                let cs: Vec<String> = coeffs.iter().map(format_rational).collect();
                write!(f, "K={k} ({})", cs.join(","))
            }
        }
    }
}

/// Source of a program shipped with the library.
pub fn shipped_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "q_to_a" => include_str!("../../programs/q_to_a.bss"),
        "q_to_sq" => include_str!("../../programs/q_to_sq.bss"),
        "sq_to_q" => include_str!("../../programs/sq_to_q.bss"),
        "sq_semidecide" => include_str!("../../programs/sq_semidecide.bss"),
        "double" => include_str!("../../programs/double.bss"),
        "mul" => include_str!("../../programs/mul.bss"),
        "branch" => include_str!("../../programs/branch.bss"),
        "countdown" => include_str!("../../programs/countdown.bss"),
        "sep_input" => include_str!("../../programs/sep_input.bss"),
        "sep_quotient" => include_str!("../../programs/sep_quotient.bss"),
        "sep_cubic" => include_str!("../../programs/sep_cubic.bss"),
        "sep_halt" => include_str!("../../programs/sep_halt.bss"),
        "sep_linear" => include_str!("../../programs/sep_linear.bss"),
        _ => return None,
    })
}

/// Names accepted by [`shipped_program`].
pub const SHIPPED_PROGRAMS: &[&str] = &[
    "branch",
    "countdown",
    "double",
    "mul",
    "q_to_a",
    "q_to_sq",
    "sep_cubic",
    "sep_halt",
    "sep_input",
    "sep_linear",
    "sep_quotient",
    "sq_semidecide",
    "sq_to_q",
];

pub fn shipped_program(name: &str) -> Result<BssProgram> {
    let src = shipped_source(name).ok_or_else(|| Error::UnknownId(format!("program `{name}`")))?;
    parse_program(src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{validate_program, Mode};

    #[test]
    fn problem_names_round_trip() {
        for name in ["Q", "A", "SQ", "A<=2", "A=3", "QP:2,3", "ROOTFIELD:2"] {
            assert_eq!(name.parse::<ProblemId>().unwrap().to_string(), name);
        }
        assert!("A<=0".parse::<ProblemId>().is_err());
        assert!("QP:2,2".parse::<ProblemId>().is_err());
        assert!("none".parse::<ProblemId>().is_err());
    }

    #[test]
    fn shipped_programs_parse_and_validate() {
        for name in SHIPPED_PROGRAMS {
            let p = shipped_program(name).unwrap();
            validate_program(&p, p.mode).unwrap();
        }
        assert!(validate_program(&shipped_program("mul").unwrap(), Mode::Linear).is_err());
        assert_eq!(shipped_program("sq_to_q").unwrap().mode, Mode::Linear);
    }
}
