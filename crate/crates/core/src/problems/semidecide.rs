//! Semi-deciders.  Each one halts, given enough budget, exactly on the
//! members of its set and then returns a certificate that can be checked
//! independently.  Work is counted in candidates tested, or in machine
//! steps for the assembly semi-decider.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{shipped_program, Certificate};
use crate::algebraic::{alg_eq, alg_eval_poly, alg_nth_root, AlgebraicNumber};
use crate::arith::{rat, Integer, PrimeSet, Rational};
use crate::error::{Error, Result};
use crate::machine::{
    dovetail, linear_schedule, run, DovetailOutcome, OracleSpec, RunResult, StageFamily, StageOutcome,
};
use crate::poly::roots::RatInterval;
use crate::poly::{Content1Enumerator, IntPolynomial, RatPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiDecision {
    /// Present iff the search halted.
    pub certificate: Option<Certificate>,
    pub work: u64,
}

impl SemiDecision {
    pub fn is_accepted(&self) -> bool {
        self.certificate.is_some()
    }

    fn from_dovetail(out: DovetailOutcome<Certificate>) -> Self {
        match out {
            DovetailOutcome::Accepted { certificate, work, .. } => {
                SemiDecision { certificate: Some(certificate), work }
            }
            DovetailOutcome::Running { work, .. } => SemiDecision { certificate: None, work },
        }
    }
}

impl fmt::Display for SemiDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.certificate {
            Some(c) => write!(f, "halted {c}"),
            None => write!(f, "running (work {})", self.work),
        }
    }
}

/// Stages that each test one candidate, produced lazily in order.
struct OneShot<T, G, F> {
    cache: Vec<T>,
    generate: G,
    test: F,
}

impl<T, G: FnMut() -> T, F: FnMut(&T) -> Result<Option<Certificate>>> StageFamily for OneShot<T, G, F> {
    type Certificate = Certificate;

    fn run_stage(&mut self, index: u64, _budget: u64) -> Result<(StageOutcome<Certificate>, u64)> {
        while self.cache.len() as u64 <= index {
            self.cache.push((self.generate)());
        }
        Ok(match (self.test)(&self.cache[index as usize])? {
            Some(c) => (StageOutcome::Accept(c), 1),
            None => (StageOutcome::Reject, 1),
        })
    }
}

/// Pairs `(r, s)` with `s >= 1` by `|r| + s` ascending, then `s`
/// ascending, `r` before `-r`.
fn fraction_pairs() -> impl FnMut() -> (Integer, Integer) {
    let (mut t, mut s, mut negative) = (1i64, 1i64, false);
    move || {
        let r = t - s;
        let out = (Integer::from(if negative { -r } else { r }), Integer::from(s));
        if r != 0 && !negative {
            negative = true;
        } else {
            negative = false;
            s += 1;
            if s > t {
                t += 1;
                s = 1;
            }
        }
        out
    }
}

/// Halts iff `x = r/s` for a pair of integers, tried in turn.
pub fn semidecide_q(x: &AlgebraicNumber, budget: u64) -> Result<SemiDecision> {
    let mut family = OneShot {
        cache: Vec::new(),
        generate: fraction_pairs(),
        test: |(r, s): &(Integer, Integer)| {
            let q = Rational::new(r.clone(), s.clone());
            Ok((x.as_rational() == Some(&q)).then(|| Certificate::Fraction { r: r.clone(), s: s.clone() }))
        },
    };
    Ok(SemiDecision::from_dovetail(dovetail(&mut family, budget, linear_schedule)?))
}

/// Halts with the first content-1 polynomial, leading coefficient positive,
/// that vanishes at `x`.
pub fn semidecide_a(x: &AlgebraicNumber, budget: u64) -> Result<SemiDecision> {
    let mut e = Content1Enumerator::new();
    let mut family = OneShot {
        cache: Vec::new(),
        generate: move || e.next_coeffs(),
        test: |cs: &Vec<i64>| {
            if *cs.last().expect("nonconstant") < 0 {
                return Ok(None);
            }
            let p = IntPolynomial::from_i64s(cs);
            Ok(alg_eval_poly(&p, x).is_zero().then_some(Certificate::Annihilator(p)))
        },
    };
    Ok(SemiDecision::from_dovetail(dovetail(&mut family, budget, linear_schedule)?))
}

/// Runs the linear squares machine on `x`.
pub fn semidecide_sq_run(x: &Rational, budget: u64) -> Result<RunResult> {
    let prog = shipped_program("sq_semidecide")?;
    run(&prog, &[AlgebraicNumber::from_rational(x.clone())], &OracleSpec::None, budget)
}

/// Halts iff `x` is the square of a rational; the certificate `(r, s)`
/// satisfies `x s^2 = r^2`.
pub fn semidecide_sq(x: &Rational, budget: u64) -> Result<SemiDecision> {
    let res = semidecide_sq_run(x, budget)?;
    let certificate = match res.output() {
        Some(out) => {
            let int_at = |k: usize| -> Result<Integer> {
                let v = out.get(k).map(|v| v.as_rational().cloned()).unwrap_or(Some(Rational::zero()));
                match v {
                    Some(q) if q.is_integer() => Ok(q.to_integer()),
                    _ => Err(Error::Runtime {
                        label: 0,
                        message: "squares machine produced a malformed certificate".into(),
                    }),
                }
            };
            Some(Certificate::Square { r: int_at(1)?, s: int_at(2)? })
        }
        None => None,
    };
    Ok(SemiDecision { certificate, work: res.steps })
}

/// Rationals of height `max(|n|, d)` at most `h`, lowest heights first.
fn rationals_up_to(h: u64) -> Vec<Rational> {
    let mut out = vec![rat(0, 1)];
    for k in 1..=h as i64 {
        for d in 1..k {
            if k.gcd(&d) == 1 {
                out.push(rat(k, d));
                out.push(rat(-k, d));
            }
        }
        for n in 1..=k {
            if n.gcd(&k) == 1 {
                out.push(rat(n, k));
                out.push(rat(-n, k));
            }
        }
    }
    out
}

fn count_up_to(h: u64) -> usize {
    if h == 0 {
        0
    } else {
        rationals_up_to(h).len()
    }
}

/// Basis of `Q(p_1^(1/K), ..., p_r^(1/K))` as a vector space: the products
/// of the `e_j`-th powers of the `K`-th roots with `0 <= e_j < K`.
struct Basis {
    values: Vec<AlgebraicNumber>,
    boxes: Vec<RatInterval>,
    /// For a single prime, the `K`-th root itself; candidates are then
    /// evaluated inside its field.
    root: Option<AlgebraicNumber>,
}

fn box_width() -> Rational {
    Rational::new(Integer::one(), Integer::one() << 48)
}

fn basis(primes: &[Integer], k: u64) -> Result<Basis> {
    let k32 = u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("root index {k} too large")))?;
    let mut exps: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in primes {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (0..k).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    // Lexicographic with the first prime's exponent varying fastest.
    exps.iter_mut().for_each(|e| e.reverse());
    exps.sort();
    exps.iter_mut().for_each(|e| e.reverse());
    let root =
        if primes.len() == 1 { Some(alg_nth_root(&Rational::from_integer(primes[0].clone()), k32)?) } else { None };
    let mut values = Vec::with_capacity(exps.len());
    for e in &exps {
        let v = match &root {
            Some(t) => t.pow(e[0] as u32),
            None => {
                let mut m = Integer::one();
                for (p, &x) in primes.iter().zip(e) {
                    m *= num_traits::pow(p.clone(), x as usize);
                }
                alg_nth_root(&Rational::from_integer(m), k32)?
            }
        };
        values.push(v);
    }
    let w = box_width();
    let boxes = values.iter().map(|v| v.enclosure_within(&w)).collect();
    Ok(Basis { values, boxes, root })
}

struct FieldStage {
    k: u64,
    h: u64,
    idx: Vec<usize>,
    exhausted: bool,
}

struct RootFieldSearch<'a> {
    x: &'a AlgebraicNumber,
    x_box: RatInterval,
    primes: Vec<Integer>,
    stages: Vec<FieldStage>,
    bases: HashMap<u64, Basis>,
    heights: HashMap<u64, (Vec<Rational>, usize)>,
    next: (u64, u64),
}

impl RootFieldSearch<'_> {
    /// Stages are `(K, H)` by `K + H` ascending, then `K` ascending.
    fn ensure_stage(&mut self, index: u64) {
        while self.stages.len() as u64 <= index {
            let (level, k) = self.next;
            self.stages.push(FieldStage { k, h: level - k, idx: Vec::new(), exhausted: false });
            self.next = if k + 1 < level { (level, k + 1) } else { (level + 1, 1) };
        }
    }

    fn candidate_matches(&self, basis: &Basis, coeffs: &[Rational]) -> Result<bool> {
        let mut acc = RatInterval::point(Rational::zero());
        for (c, b) in coeffs.iter().zip(&basis.boxes) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        if !acc.intersects(&self.x_box) {
            return Ok(false);
        }
        let value = match &basis.root {
            Some(t) => t.eval_rat_poly(&RatPolynomial::new(coeffs.to_vec())),
            None => {
                let mut v = AlgebraicNumber::zero();
                for (c, b) in coeffs.iter().zip(&basis.values) {
                    if !c.is_zero() {
                        v = v.add(&b.scale(c))?;
                    }
                }
                v
            }
        };
        Ok(alg_eq(&value, self.x))
    }
}

impl StageFamily for RootFieldSearch<'_> {
    type Certificate = Certificate;

    fn run_stage(&mut self, index: u64, budget: u64) -> Result<(StageOutcome<Certificate>, u64)> {
        self.ensure_stage(index);
        let (k, h) = (self.stages[index as usize].k, self.stages[index as usize].h);
        if !self.bases.contains_key(&k) {
            let b = basis(&self.primes, k)?;
            self.bases.insert(k, b);
        }
        self.heights.entry(h).or_insert_with(|| (rationals_up_to(h), count_up_to(h - 1)));
        let basis = &self.bases[&k];
        let (values, lower) = &self.heights[&h];
        let dim = basis.values.len();
        let stage = &self.stages[index as usize];
        let mut exhausted = stage.exhausted;
        let mut idx = if stage.idx.is_empty() { vec![0; dim] } else { stage.idx.clone() };
        let mut used = 0;
        let mut outcome = StageOutcome::Unfinished;
        while used < budget && !exhausted {
            // Vectors of lower height were covered by an earlier stage.
            let fresh = idx.iter().any(|&i| i >= *lower);
            let coeffs: Option<Vec<Rational>> = fresh.then(|| idx.iter().map(|&i| values[i].clone()).collect());
            let mut pos = 0;
            loop {
                if pos == dim {
                    exhausted = true;
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < values.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if let Some(coeffs) = coeffs {
                used += 1;
                if self.candidate_matches(basis, &coeffs)? {
                    outcome = StageOutcome::Accept(Certificate::FieldElement { k, coeffs });
                    break;
                }
            }
        }
        if exhausted && matches!(outcome, StageOutcome::Unfinished) {
            outcome = StageOutcome::Reject;
        }
        let stage = &mut self.stages[index as usize];
        stage.idx = idx;
        stage.exhausted = exhausted;
        Ok((outcome, used))
    }
}

/// Halts iff `x` is found in the field generated by all roots of the given
/// primes.  Stage `(K, H)` tries every coefficient vector of height `H` over
/// the basis of `K`-th root monomials, with an interval prefilter before
/// the exact comparison.  Membership cannot be refuted this way, so the
/// search runs until the budget is spent on non-members.
pub fn semidecide_root_field(x: &AlgebraicNumber, primes: &PrimeSet, budget: u64) -> Result<SemiDecision> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("the prime set must not be empty".into()));
    }
    if primes.primes().iter().any(|p| p.is_negative()) {
        return Err(Error::InvalidArgument("primes must be positive".into()));
    }
    let mut search = RootFieldSearch {
        x,
        x_box: x.enclosure_within(&box_width()),
        primes: primes.primes().to_vec(),
        stages: Vec::new(),
        bases: HashMap::new(),
        heights: HashMap::new(),
        next: (2, 1),
    };
    Ok(SemiDecision::from_dovetail(dovetail(&mut search, budget, linear_schedule)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn q(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(rat(n, d))
    }

    #[test]
    fn fraction_order() {
        let mut g = fraction_pairs();
        let first: Vec<(i64, i64)> = (0..7)
            .map(|_| {
                let (r, s) = g();
                (i64::try_from(r).unwrap(), i64::try_from(s).unwrap())
            })
            .collect();
        assert_eq!(first, vec![(0, 1), (1, 1), (-1, 1), (0, 2), (2, 1), (-2, 1), (1, 2)]);
    }

    #[test]
    fn rationals_by_height() {
        assert_eq!(rationals_up_to(1), vec![rat(0, 1), rat(1, 1), rat(-1, 1)]);
        assert_eq!(rationals_up_to(2).len(), 7);
        assert_eq!(count_up_to(0), 0);
    }

    #[test]
    fn semidecide_q_examples() {
        let d = semidecide_q(&q(3, 7), 10_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Fraction { r: int(3), s: int(7) }));
        let d = semidecide_q(&q(-5, 1), 10_000).unwrap();
        assert_eq!(d.certificate.unwrap().to_string(), "(-5,1)");
        let s2 = alg_nth_root(&rat(2, 1), 2).unwrap();
        let d = semidecide_q(&s2, 10_000).unwrap();
        assert!(!d.is_accepted());
        assert!(d.work >= 10_000);
    }

    #[test]
    fn semidecide_a_examples() {
        let s2 = alg_nth_root(&rat(2, 1), 2).unwrap();
        let d = semidecide_a(&s2, 100_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Annihilator(IntPolynomial::from_i64s(&[-2, 0, 1]))));
        let d = semidecide_a(&q(2, 1), 100_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Annihilator(IntPolynomial::from_i64s(&[-2, 1]))));
        let c = alg_nth_root(&rat(2, 1), 3).unwrap().add_rational(&rat(1, 1));
        let d = semidecide_a(&c, 200_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Annihilator(IntPolynomial::from_i64s(&[-3, 3, -3, 1]))));
    }

    #[test]
    fn semidecide_sq_examples() {
        let d = semidecide_sq(&rat(9, 4), 100_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Square { r: int(3), s: int(2) }));
        let d = semidecide_sq(&rat(0, 1), 1_000).unwrap();
        assert_eq!(d.certificate, Some(Certificate::Square { r: int(0), s: int(1) }));
        assert!(!semidecide_sq(&rat(2, 1), 20_000).unwrap().is_accepted());
        assert!(!semidecide_sq(&rat(-4, 1), 20_000).unwrap().is_accepted());
    }

    #[test]
    fn root_field_examples() {
        let two = PrimeSet::from_u64s(&[2]).unwrap();
        let s2 = alg_nth_root(&rat(2, 1), 2).unwrap();
        let d = semidecide_root_field(&s2, &two, 10_000).unwrap();
        assert_eq!(d.certificate.unwrap().to_string(), "K=2 (0,1)");
        let x = alg_nth_root(&rat(2, 1), 4).unwrap().add_rational(&rat(1, 2));
        let d = semidecide_root_field(&x, &two, 100_000).unwrap();
        assert_eq!(d.certificate.unwrap().to_string(), "K=4 (1/2,1,0,0)");
        let s3 = alg_nth_root(&rat(3, 1), 2).unwrap();
        assert!(!semidecide_root_field(&s3, &two, 20_000).unwrap().is_accepted());
        let d = semidecide_root_field(&q(-3, 2), &two, 10_000).unwrap();
        assert_eq!(d.certificate.unwrap().to_string(), "K=1 (-3/2)");
    }

    #[test]
    fn root_field_two_primes() {
        let ps = PrimeSet::from_u64s(&[2, 3]).unwrap();
        let s6 = alg_nth_root(&rat(6, 1), 2).unwrap();
        let d = semidecide_root_field(&s6, &ps, 10_000).unwrap();
        assert_eq!(d.certificate.unwrap().to_string(), "K=2 (0,0,0,1)");
    }
}
