//! Oracle sets.  A tuple belongs to a built-in set when every component
//! does.

use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::{parse_program, BssProgram};
use crate::algebraic::AlgebraicNumber;
use crate::arith::{nth_root_exact, qp_member, PrimeSet};
use crate::error::{Error, Result};
use crate::poly::RationalFunction;

/// Budget used by the field-membership search when answering queries.
pub const ROOT_FIELD_QUERY_BUDGET: u64 = 20_000;

#[derive(Clone, Debug)]
pub enum OracleSpec {
    /// No oracle; reaching an oracle node is an error.
    None,
    /// The rationals.
    Rationals,
    /// All algebraic reals, so every runtime value.
    Algebraic,
    /// Squares of rationals.
    SquareRationals,
    DegreeAtMost(usize),
    DegreeExactly(usize),
    /// Rationals whose reduced denominator is a non-square built from `P`.
    Qp(PrimeSet),
    /// The field generated by all roots of the given primes.  Answered by
    /// a budgeted search, so "no" is not authoritative.
    RootField(PrimeSet),
    /// Halting of a program within a step budget; an approximation of the
    /// halting problem, never exact.
    PseudoHalting {
        budget: u64,
        program: Arc<BssProgram>,
    },
}

impl OracleSpec {
    /// Parses `Q`, `A`, `SQ`, `A<=d`, `A=d`, `QP:2,3`, `ROOTFIELD:2`,
    /// `PHALT:<budget>:<program path>` and `none`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::UnknownId(format!("oracle `{t}`"));
        let degree = |d: &str| -> Result<usize> {
            let d: usize = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::InvalidArgument("degree parameter must be at least 1".into()));
            }
            Ok(d)
        };
        Ok(match t {
            "none" => OracleSpec::None,
            "Q" => OracleSpec::Rationals,
            "A" => OracleSpec::Algebraic,
            "SQ" => OracleSpec::SquareRationals,
            _ => {
                if let Some(d) = t.strip_prefix("A<=") {
                    OracleSpec::DegreeAtMost(degree(d)?)
                } else if let Some(d) = t.strip_prefix("A=") {
                    OracleSpec::DegreeExactly(degree(d)?)
                } else if let Some(ps) = t.strip_prefix("QP:") {
                    OracleSpec::Qp(ps.parse()?)
                } else if let Some(ps) = t.strip_prefix("ROOTFIELD:") {
                    OracleSpec::RootField(ps.parse()?)
                } else if let Some(rest) = t.strip_prefix("PHALT:") {
                    let (budget, path) = rest.split_once(':').ok_or_else(bad)?;
                    let budget = budget.parse().map_err(|_| bad())?;
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
                    OracleSpec::PseudoHalting { budget, program: Arc::new(parse_program(&text)?) }
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// Exact answers on every algebraic input.
    pub fn is_exact(&self) -> bool {
        !matches!(self, OracleSpec::RootField(_) | OracleSpec::PseudoHalting { .. })
    }

    /// Membership of one component.
    pub fn member(&self, x: &AlgebraicNumber) -> Result<bool> {
        Ok(match self {
            OracleSpec::None => return Err(Error::Unsupported("oracle node reached but no oracle was given".into())),
            OracleSpec::Rationals => x.is_rational(),
            OracleSpec::Algebraic => true,
            OracleSpec::SquareRationals => match x.as_rational() {
                Some(q) => !q.is_negative() && nth_root_exact(q, 2)?.is_some(),
                None => false,
            },
            OracleSpec::DegreeAtMost(d) => x.degree() <= *d,
            OracleSpec::DegreeExactly(d) => x.degree() == *d,
            OracleSpec::Qp(ps) => x.as_rational().is_some_and(|q| qp_member(q, ps)),
            OracleSpec::RootField(ps) => {
                crate::problems::semidecide_root_field(x, ps, ROOT_FIELD_QUERY_BUDGET)?.is_accepted()
            }
            OracleSpec::PseudoHalting { budget, program } => {
                let r = super::run(program, std::slice::from_ref(x), &OracleSpec::None, *budget)?;
                r.is_halted()
            }
        })
    }

    /// Membership of a tuple.
    pub fn contains(&self, query: &[AlgebraicNumber]) -> Result<bool> {
        if let OracleSpec::PseudoHalting { budget, program } = self {
            return Ok(super::run(program, query, &OracleSpec::None, *budget)?.is_halted());
        }
        for x in query {
            if !self.member(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership of `f(x)` for a transcendental `x`: a nonconstant rational
    /// function takes a transcendental value there, which lies in none of
    /// the built-in sets; a constant is tested directly.
    pub fn symbolic_member(&self, f: &RationalFunction) -> Result<bool> {
        if let OracleSpec::PseudoHalting { .. } = self {
            return Err(Error::Unsupported("the halting oracle has no symbolic semantics".into()));
        }
        match f.as_constant() {
            Some(c) => self.member(&AlgebraicNumber::from_rational(c)),
            None => match self {
                OracleSpec::None => Err(Error::Unsupported("oracle node reached but no oracle was given".into())),
                _ => Ok(false),
            },
        }
    }
}

impl fmt::Display for OracleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleSpec::None => f.write_str("none"),
            OracleSpec::Rationals => f.write_str("Q"),
            OracleSpec::Algebraic => f.write_str("A"),
            OracleSpec::SquareRationals => f.write_str("SQ"),
            OracleSpec::DegreeAtMost(d) => write!(f, "A<={d}"),
            OracleSpec::DegreeExactly(d) => write!(f, "A={d}"),
            OracleSpec::Qp(ps) => {
                write!(f, "QP:{}", ps.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            }
            OracleSpec::RootField(ps) => {
                write!(f, "ROOTFIELD:{}", ps.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            }
            OracleSpec::PseudoHalting { budget, program } => write!(f, "PHALT:{budget}:{}", program.name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::alg_nth_root;
    use crate::arith::rat;

    #[test]
    fn numeric_membership() {
        let s2 = alg_nth_root(&rat(2, 1), 2).unwrap();
        let q = AlgebraicNumber::from_rational(rat(9, 4));
        assert!(!OracleSpec::Rationals.member(&s2).unwrap());
        assert!(OracleSpec::Rationals.member(&q).unwrap());
        assert!(OracleSpec::SquareRationals.member(&q).unwrap());
        assert!(!OracleSpec::SquareRationals.member(&AlgebraicNumber::from_rational(rat(-9, 4))).unwrap());
        assert!(OracleSpec::parse("A<=2").unwrap().member(&s2).unwrap());
        assert!(!OracleSpec::parse("A=2").unwrap().member(&q).unwrap());
        assert!(OracleSpec::parse("QP:2").unwrap().member(&AlgebraicNumber::from_rational(rat(1, 8))).unwrap());
        assert!(!OracleSpec::parse("QP:2").unwrap().member(&AlgebraicNumber::from_rational(rat(1, 4))).unwrap());
        assert!(OracleSpec::Rationals.contains(&[q.clone(), q.clone()]).unwrap());
        assert!(!OracleSpec::Rationals.contains(&[q, s2]).unwrap());
        assert!(OracleSpec::parse("B").is_err());
        assert_eq!(OracleSpec::parse("QP:2,3").unwrap().to_string(), "QP:2,3");
    }

    #[test]
    fn symbolic_membership() {
        let x = RationalFunction::x();
        assert!(!OracleSpec::Algebraic.symbolic_member(&x).unwrap());
        assert!(OracleSpec::Rationals.symbolic_member(&RationalFunction::constant(rat(2, 1))).unwrap());
        assert!(!OracleSpec::SquareRationals.symbolic_member(&RationalFunction::constant(rat(2, 1))).unwrap());
    }
}
