//! Runs on a generic transcendental input.  Registers hold rational
//! functions of the indeterminate `X`; each branch sign is read off at a
//! rational shadow point, and oracle questions are answered as they would
//! be for a transcendental input.  The answers form a decision-tree path.

use std::fmt;

use num_traits::{Signed, Zero};

use super::exec::{execute, Domain, RunOptions, RunResult, TraceValue};
use super::{BssProgram, Membership, Observation, OracleSpec};
use crate::algebraic::ArithOp;
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::{degree_bound_d, RationalFunction};

/// One node of a decision-tree path: a test function, its sign, and for
/// oracle components whether the value was reported as a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathConstraint {
    pub test: RationalFunction,
    pub sign: i8,
    pub membership: Membership,
}

impl PathConstraint {
    /// The sign must be 0 exactly for the zero function.
    pub fn new(test: RationalFunction, sign: i8, membership: Membership) -> Result<Self> {
        if !(-1..=1).contains(&sign) {
            return Err(Error::InvalidArgument(format!("sign {sign} out of range")));
        }
        if test.is_zero() != (sign == 0) {
            return Err(Error::InvalidArgument(format!("sign {sign} inconsistent with test {test}")));
        }
        Ok(PathConstraint { test, sign, membership })
    }

    pub fn observation(&self) -> Observation {
        Observation { sign: self.sign, membership: self.membership }
    }

    pub fn is_membership(&self) -> bool {
        self.membership != Membership::NotQueried
    }
}

impl fmt::Display for PathConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            s if s < 0 => "<0",
            0 => "=0",
            _ => ">0",
        };
        write!(f, "test={} sign={sign} membership={}", self.test.trace_text(), self.membership)
    }
}

struct Symbolic<'o> {
    shadow: Rational,
    oracle: &'o OracleSpec,
    path: Vec<PathConstraint>,
}

impl Symbolic<'_> {
    fn shadow_sign(&self, f: &RationalFunction) -> Result<i8> {
        if f.is_zero() {
            return Ok(0);
        }
        if f.denominator().eval(&self.shadow).is_zero() {
            return Err(Error::DegenerateShadow(format!(
                "{} has a pole at the shadow {}; perturb it",
                f.trace_text(),
                self.shadow
            )));
        }
        let v = f.numerator().eval(&self.shadow) / f.denominator().eval(&self.shadow);
        if v.is_zero() {
            return Err(Error::DegenerateShadow(format!(
                "{} vanishes at the shadow {}; perturb it",
                f.trace_text(),
                self.shadow
            )));
        }
        Ok(if v.is_positive() { 1 } else { -1 })
    }
}

impl Domain for Symbolic<'_> {
    type V = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }

    fn constant(&mut self, c: &Rational) -> Result<RationalFunction> {
        Ok(RationalFunction::constant(c.clone()))
    }

    fn arith(&mut self, op: ArithOp, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
        Ok(match op {
            ArithOp::Add => a.add(b),
            ArithOp::Sub => a.sub(b),
            ArithOp::Mul => a.mul(b),
            ArithOp::Div => a.div(b)?,
        })
    }

    fn test_sign(&mut self, v: &RationalFunction) -> Result<i8> {
        let sign = self.shadow_sign(v)?;
        self.path.push(PathConstraint::new(v.clone(), sign, Membership::NotQueried)?);
        Ok(sign)
    }

    fn query(&mut self, q: &[RationalFunction]) -> Result<bool> {
        let mut all = true;
        for f in q {
            let sign = self.shadow_sign(f)?;
            let m = self.oracle.symbolic_member(f)?;
            all &= m;
            let membership = if m { Membership::In } else { Membership::Out };
            self.path.push(PathConstraint::new(f.clone(), sign, membership)?);
        }
        Ok(all)
    }

    fn is_zero(&self, v: &RationalFunction) -> bool {
        v.is_zero()
    }

    fn observations(&mut self) -> Vec<Observation> {
        self.path.iter().map(PathConstraint::observation).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SymbolicRun {
    pub result: RunResult<RationalFunction>,
    pub path: Vec<PathConstraint>,
}

impl SymbolicRun {
    pub fn render_path(&self) -> String {
        self.path.iter().map(|c| format!("{c}\n")).collect()
    }
}

/// Runs with `x_1 = X`, resolving signs at `shadow`.
pub fn symbolic_run(
    prog: &BssProgram,
    shadow: &Rational,
    oracle: &OracleSpec,
    opts: &RunOptions,
) -> Result<SymbolicRun> {
    let mut dom = Symbolic { shadow: shadow.clone(), oracle, path: Vec::new() };
    let result = execute(prog, &mut dom, &[RationalFunction::x()], opts)?;
    Ok(SymbolicRun { result, path: dom.path })
}

/// Largest degree bound over the membership tests of a path: algebraic
/// numbers of higher degree are mapped outside the rationals by every
/// nonconstant test.  `d` is the degree of the coefficient field.  A path
/// without membership tests gives 0.
pub fn path_degree_bound(path: &[PathConstraint], d: u64) -> Integer {
    path.iter()
        .filter(|c| c.is_membership())
        .map(|c| {
            let n = c.test.numerator().deg0() as u64 + 1;
            let m = c.test.denominator().deg0() as u64 + 1;
            degree_bound_d(d, n, m)
        })
        .max()
        .unwrap_or_else(Integer::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::machine::parse_program;
    use crate::poly::RatPolynomial;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(RatPolynomial::from_i64s(n), RatPolynomial::from_i64s(d)).unwrap()
    }

    #[test]
    fn branch_constraint() {
        let p = parse_program("MUL r0 <- r1 r1\nCONST r2 <- 2\nSUB r0 <- r0 r2\nJGEZ done\ndone: HALT").unwrap();
        let s = symbolic_run(&p, &rat(2, 1), &OracleSpec::None, &RunOptions::new(100)).unwrap();
        assert_eq!(s.path, vec![PathConstraint::new(rf(&[-2, 0, 1], &[1]), 1, Membership::NotQueried).unwrap()]);
        assert!(matches!(
            symbolic_run(&p, &rat(0, 1), &OracleSpec::None, &RunOptions::new(100)).map(|s| s.path.len()),
            Ok(1)
        ));
    }

    #[test]
    fn oracle_constraints() {
        // r1 <- (X + 1) / (X - 2), then ask the rationals oracle.
        let p = parse_program(
            "CONST r2 <- 1\nADD r3 <- r1 r2\nCONST r2 <- 2\nSUB r4 <- r1 r2\nDIV r1 <- r3 r4\nORACLE\nHALT",
        )
        .unwrap();
        let s = symbolic_run(&p, &rat(0, 1), &OracleSpec::Rationals, &RunOptions::new(100)).unwrap();
        assert_eq!(s.path.len(), 1);
        assert_eq!(s.path[0].membership, Membership::Out);
        assert_eq!(s.path[0].sign, -1);
        assert_eq!(path_degree_bound(&s.path, 2), Integer::from(16));
        // (2X + 2) / (X + 1) is the constant 2.
        let p =
            parse_program("CONST r2 <- 1\nADD r3 <- r1 r2\nADD r4 <- r3 r3\nDIV r1 <- r4 r3\nORACLE\nHALT").unwrap();
        let s = symbolic_run(&p, &rat(0, 1), &OracleSpec::Rationals, &RunOptions::new(100)).unwrap();
        assert_eq!(s.path[0].membership, Membership::In);
        assert_eq!(s.path[0].test, RationalFunction::constant(rat(2, 1)));
        assert!(s.result.is_halted());
    }

    #[test]
    fn degenerate_shadow() {
        let p = parse_program("JGEZ r1 done\ndone: HALT").unwrap();
        assert!(matches!(
            symbolic_run(&p, &rat(0, 1), &OracleSpec::None, &RunOptions::new(10)),
            Err(Error::DegenerateShadow(_))
        ));
    }

    #[test]
    fn degree_bounds_of_paths() {
        let affine = PathConstraint::new(rf(&[1, 1], &[1]), 1, Membership::Out).unwrap();
        assert_eq!(path_degree_bound(std::slice::from_ref(&affine), 1), Integer::from(1));
        let branch = PathConstraint::new(rf(&[1, 1], &[1]), 1, Membership::NotQueried).unwrap();
        assert_eq!(path_degree_bound(&[branch], 1), Integer::from(0));
        assert_eq!(path_degree_bound(&[], 1), Integer::from(0));
        assert!(PathConstraint::new(rf(&[1, 1], &[1]), 0, Membership::Out).is_err());
    }
}
