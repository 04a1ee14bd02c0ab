//! Witnesses against claimed oracle semi-deciders.
//!
//! The machine is run symbolically on a transcendental input until it
//! halts.  Each test on that path is a rational function of the input,
//! nonzero near the shadow point.  An input close enough to the shadow
//! keeps every sign, and an input chosen outside the reach of every
//! membership test keeps every "no" answer; it therefore follows the same
//! path to the same halt.
//!
//! Full mode uses the rationals oracle: a rational function with `n`
//! numerator and `m` denominator coefficients maps algebraic numbers of
//! degree above `max(n, m) - 1` outside the rationals, so a witness of
//! larger degree suffices.  Linear mode uses the squares oracle: affine
//! integer maps whose coefficients avoid a prime `p` send rationals with a
//! non-square denominator built from `p` to the same kind of rationals,
//! none of which is a square.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::reduce::is_rational_square;
use crate::algebraic::{approximate_with_degree, AlgebraicNumber};
use crate::arith::{
    factorize, format_rational, is_prime, qp_affine_image, qp_member, tilde_qp_approximate, Integer, PrimeSet, Rational,
};
use crate::error::{Error, Result};
use crate::machine::exec::TraceValue;
use crate::machine::{
    path_degree_bound, run, symbolic_run, validate_program, BssProgram, Mode, Observation, OracleSpec, PathConstraint,
    RunOptions, RunResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeparationMode {
    /// Rationals oracle, arbitrary arithmetic.
    Full,
    /// Squares oracle, linear machines.
    Linear,
}

impl SeparationMode {
    pub fn oracle(self) -> OracleSpec {
        match self {
            SeparationMode::Full => OracleSpec::Rationals,
            SeparationMode::Linear => OracleSpec::SquareRationals,
        }
    }
}

impl FromStr for SeparationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(SeparationMode::Full),
            "linear" => Ok(SeparationMode::Linear),
            other => Err(Error::UnknownId(format!("separation mode `{other}`"))),
        }
    }
}

impl fmt::Display for SeparationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparationMode::Full => "full",
            SeparationMode::Linear => "linear",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub mode: SeparationMode,
    pub program: String,
    pub shadow: Rational,
    pub path: Vec<PathConstraint>,
    /// Full mode: the largest degree any membership test can sort out.
    pub degree_bound: Integer,
    /// Linear mode: primes dividing some path coefficient.
    pub excluded_primes: Vec<Integer>,
    /// Linear mode: the prime set of the witness.
    pub primes: Option<PrimeSet>,
    pub witness: AlgebraicNumber,
    pub witness_run: RunResult,
    /// Every recorded observation of the witness run equals the path's.
    pub follows: bool,
}

impl SeparationReport {
    pub fn witness_degree(&self) -> usize {
        self.witness.degree()
    }

    /// Linear mode: each membership test, applied to the witness, stays in
    /// the prime's rationals and so is no square.
    pub fn closure_holds(&self) -> Result<bool> {
        let Some(ps) = &self.primes else {
            return Ok(true);
        };
        let Some(z) = self.witness.as_rational() else {
            return Ok(false);
        };
        if !qp_member(z, ps) {
            return Ok(false);
        }
        for c in self.path.iter().filter(|c| c.is_membership() && !c.test.is_constant()) {
            let Some((a, b)) = affine_integer(&c.test) else {
                return Ok(false);
            };
            let image = qp_affine_image(z, &a, &b, ps)?;
            if is_rational_square(&image)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# separation mode={} program={} shadow={}",
            self.mode,
            self.program,
            format_rational(&self.shadow)
        )?;
        for c in &self.path {
            writeln!(f, "{c}")?;
        }
        match self.mode {
            SeparationMode::Full => writeln!(f, "degree_bound={}", self.degree_bound)?,
            SeparationMode::Linear => {
                let ex: Vec<String> = self.excluded_primes.iter().map(|p| p.to_string()).collect();
                let ps = self.primes.as_ref().map(|p| p.to_string()).unwrap_or_default();
                writeln!(f, "excluded_primes={{{}}} primes={ps}", ex.join(","))?;
            }
        }
        writeln!(f, "witness={} degree={}", self.witness.trace_text(), self.witness_degree())?;
        writeln!(
            f,
            "# follows={} halted={} accept={}",
            u8::from(self.follows),
            u8::from(self.witness_run.is_halted()),
            u8::from(self.witness_run.is_accepted())
        )
    }
}

/// `f = aX + b` with integer coefficients.
fn affine_integer(f: &crate::poly::RationalFunction) -> Option<(Integer, Integer)> {
    if !f.denominator().is_constant() {
        return None;
    }
    let den = f.denominator().coeff(0);
    let num = f.numerator();
    if num.deg0() > 1 {
        return None;
    }
    let b = num.coeff(0) / &den;
    let a = num.coeff(1) / &den;
    (a.is_integer() && b.is_integer()).then(|| (a.to_integer(), b.to_integer()))
}

/// Primes dividing a numerator or denominator of some coefficient of a
/// path test.
fn path_primes(path: &[PathConstraint]) -> Result<Vec<Integer>> {
    let mut out: Vec<Integer> = Vec::new();
    for c in path {
        for poly in [c.test.numerator(), c.test.denominator()] {
            for q in poly.coeffs() {
                for n in [q.numer(), q.denom()] {
                    if n.is_zero() {
                        continue;
                    }
                    for (p, _) in factorize(&n.abs())? {
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn smallest_prime_outside(excluded: &[Integer]) -> Integer {
    let mut p = Integer::from(2);
    while excluded.contains(&p) || !is_prime(&p) {
        p += 1;
    }
    p
}

fn path_observations(path: &[PathConstraint]) -> Vec<Observation> {
    path.iter().map(PathConstraint::observation).collect()
}

/// Number of refinement attempts before giving up on a witness.
const ATTEMPTS: u32 = 40;

/// Runs `prog` symbolically at `shadow`, then builds a witness that follows
/// the resulting halting path and runs it numerically.
pub fn separation_demo(
    prog: &BssProgram,
    mode: SeparationMode,
    shadow: &Rational,
    budget: u64,
) -> Result<SeparationReport> {
    let oracle = mode.oracle();
    if mode == SeparationMode::Linear {
        validate_program(prog, Mode::Linear)?;
    }
    let sym = symbolic_run(prog, shadow, &oracle, &RunOptions::new(budget))?;
    if !sym.result.is_halted() {
        return Err(Error::InvalidArgument(format!(
            "no halting path found: {} does not halt on a transcendental input within {budget} steps",
            prog.name
        )));
    }
    let target = path_observations(&sym.path);
    let follows = |r: &RunResult| r.is_halted() && r.observations == target;
    let mut last = None;
    match mode {
        SeparationMode::Full => {
            let bound = path_degree_bound(&sym.path, 1);
            let degree = (&bound + Integer::one())
                .to_u32()
                .ok_or_else(|| Error::Unsupported(format!("degree bound {bound} too large for a witness")))?;
            let mut eps = Rational::one();
            for _ in 0..ATTEMPTS {
                eps /= Integer::from(10);
                let a = approximate_with_degree(shadow, degree, &eps)?;
                let r = run(prog, std::slice::from_ref(&a), &oracle, budget)?;
                let ok = follows(&r);
                last = Some((a, r));
                if ok {
                    break;
                }
            }
            let (witness, witness_run) = last.expect("at least one attempt");
            let follows = follows(&witness_run);
            Ok(SeparationReport {
                mode,
                program: prog.name.clone(),
                shadow: shadow.clone(),
                path: sym.path,
                degree_bound: bound,
                excluded_primes: Vec::new(),
                primes: None,
                witness,
                witness_run,
                follows,
            })
        }
        SeparationMode::Linear => {
            let excluded = path_primes(&sym.path)?;
            let p = smallest_prime_outside(&excluded);
            let primes = PrimeSet::new([p.clone()])?;
            for k in 1..=ATTEMPTS {
                let z = tilde_qp_approximate(shadow, &p, k, k)?.z;
                let a = AlgebraicNumber::from_rational(z);
                let r = run(prog, std::slice::from_ref(&a), &oracle, budget)?;
                let ok = follows(&r);
                last = Some((a, r));
                if ok {
                    break;
                }
            }
            let (witness, witness_run) = last.expect("at least one attempt");
            let follows = follows(&witness_run);
            debug_assert!(excluded.iter().all(|q| !q.is_multiple_of(&p)));
            Ok(SeparationReport {
                mode,
                program: prog.name.clone(),
                shadow: shadow.clone(),
                path: sym.path,
                degree_bound: Integer::zero(),
                excluded_primes: excluded,
                primes: Some(primes),
                witness,
                witness_run,
                follows,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::machine::Membership;
    use crate::problems::shipped_program;

    #[test]
    fn full_mode_input_query() {
        let p = shipped_program("sep_input").unwrap();
        let r = separation_demo(&p, SeparationMode::Full, &rat(1, 3), 1_000).unwrap();
        assert_eq!(r.degree_bound, int(1));
        assert!(r.follows);
        assert!(r.witness_degree() > 1);
        assert!(r.witness_run.is_accepted());
        assert_eq!(r.path[0].membership, Membership::Out);
    }

    #[test]
    fn full_mode_quotient() {
        let p = shipped_program("sep_quotient").unwrap();
        let r = separation_demo(&p, SeparationMode::Full, &rat(7, 2), 1_000).unwrap();
        assert_eq!(r.degree_bound, int(2));
        assert!(r.follows);
        assert_eq!(r.witness_degree(), 3);
    }

    #[test]
    fn full_mode_unconditional_halt() {
        let p = shipped_program("sep_halt").unwrap();
        let r = separation_demo(&p, SeparationMode::Full, &rat(5, 4), 100).unwrap();
        assert!(r.path.is_empty());
        assert_eq!(r.degree_bound, int(0));
        assert!(r.follows && r.witness.is_rational());
    }

    #[test]
    fn linear_mode_witness() {
        let p = shipped_program("sep_linear").unwrap();
        let r = separation_demo(&p, SeparationMode::Linear, &rat(2, 5), 1_000).unwrap();
        assert_eq!(r.excluded_primes, vec![int(2)]);
        assert_eq!(r.primes, Some(PrimeSet::from_u64s(&[3]).unwrap()));
        assert!(r.follows);
        assert!(r.witness.is_rational());
        assert!(r.closure_holds().unwrap());
        assert!(r.witness_run.queries.iter().all(|q| !q.answer));
    }

    #[test]
    fn non_halting_machine_is_reported() {
        let p = crate::machine::parse_program("spin: JMP spin\nHALT").unwrap();
        let e = separation_demo(&p, SeparationMode::Full, &rat(1, 2), 50).unwrap_err();
        assert!(e.to_string().contains("no halting path found"));
    }

    #[test]
    fn linear_mode_rejects_multiplication() {
        let p = shipped_program("sep_quotient").unwrap();
        assert!(separation_demo(&p, SeparationMode::Linear, &rat(1, 2), 100).is_err());
    }

    #[test]
    fn affine_recognition() {
        use crate::poly::{RatPolynomial, RationalFunction};
        let f = RationalFunction::new(RatPolynomial::from_i64s(&[1, 2]), RatPolynomial::one()).unwrap();
        assert_eq!(affine_integer(&f), Some((int(2), int(1))));
        assert_eq!(smallest_prime_outside(&[int(2), int(3)]), int(5));
    }
}
