//! Arbitrary-precision integers and rationals plus the small amount of
//! number theory the rest of the crate leans on: exact roots of rationals,
//! trial-division factorization, and the `Q_P` sets of rationals with
//! non-square, `P`-smooth denominators together with their density
//! construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

pub fn rat_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// Reduced representative of `n/d` with a positive denominator.
pub fn reduce_fraction(n: Integer, d: Integer) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

/// Parses the text form `a/b`, `-a/b` or a decimal integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::parse(format!("malformed rational `{t}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = Integer::from_str(n.trim()).map_err(|_| bad())?;
            let d = Integer::from_str(d.trim()).map_err(|_| bad())?;
            reduce_fraction(n, d)
        }
        None => Integer::from_str(t).map(rat_int).map_err(|_| bad()),
    }
}

pub fn parse_integer(text: &str) -> Result<Integer> {
    Integer::from_str(text.trim()).map_err(|_| Error::parse(format!("malformed integer `{text}`")))
}

/// `a/b` with `b > 1`, or just `a`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Exact `n`-th root of a non-negative rational, if it is rational.
pub fn nth_root_exact(x: &Rational, n: u32) -> Result<Option<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("root index must be positive".into()));
    }
    if x.is_negative() {
        return Err(Error::NegativeRadicand(format_rational(x)));
    }
    let num = integer_nth_root_exact(x.numer(), n);
    let den = integer_nth_root_exact(x.denom(), n);
    Ok(match (num, den) {
        (Some(a), Some(b)) => Some(Rational::new(a, b)),
        _ => None,
    })
}

/// `Some(r)` with `r^n = m` for `m >= 0`.
pub fn integer_nth_root_exact(m: &Integer, n: u32) -> Option<Integer> {
    if m.is_negative() {
        return None;
    }
    let r = m.nth_root(n);
    if Pow::pow(&r, n) == *m {
        Some(r)
    } else {
        None
    }
}

pub fn is_perfect_square(m: &Integer) -> bool {
    integer_nth_root_exact(m, 2).is_some()
}

/// Deterministic primality by trial division.
pub fn is_prime(n: &Integer) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() {
        return false;
    }
    let limit = n.sqrt();
    let mut d = int(2);
    while d <= limit {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += step.next().unwrap();
    }
    true
}

/// Prime factorization of `n >= 1`, primes strictly increasing.
pub fn factorize(n: &Integer) -> Result<Vec<(Integer, u32)>> {
    if n < &Integer::one() {
        return Err(Error::InvalidArgument(format!("cannot factorize {n}")));
    }
    Ok(try_factorize(n, u64::MAX).expect("unbounded trial division always completes"))
}

/// Trial division up to `limit`; `None` when a cofactor could not be
/// certified prime within that limit.
pub(crate) fn try_factorize(n: &Integer, limit: u64) -> Option<Vec<(Integer, u32)>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    if let Some(v) = n.to_u64() {
        return try_factorize_u64(v, limit).map(|f| f.into_iter().map(|(p, e)| (Integer::from(p), e)).collect());
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut d: u64 = 2;
    loop {
        if let Some(v) = rest.to_u64() {
            let tail = try_factorize_u64_from(v, d, limit)?;
            out.extend(tail.into_iter().map(|(p, e)| (Integer::from(p), e)));
            return Some(out);
        }
        if d > limit {
            return None;
        }
        let bd = Integer::from(d);
        let mut e = 0;
        while rest.is_multiple_of(&bd) {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

fn try_factorize_u64(n: u64, limit: u64) -> Option<Vec<(u64, u32)>> {
    try_factorize_u64_from(n, 2, limit)
}

fn try_factorize_u64_from(mut n: u64, start: u64, limit: u64) -> Option<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d = start.max(2);
    while n > 1 {
        if d.saturating_mul(d) > n {
            out.push((n, 1));
            break;
        }
        if d > limit {
            return None;
        }
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Some(out)
}

/// All positive divisors of a factored integer, ascending.
pub(crate) fn divisors_from_factors(factors: &[(Integer, u32)]) -> Vec<Integer> {
    let mut divs = vec![Integer::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub fn lcm_of(ns: &[Integer]) -> Result<Integer> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("lcm of an empty list".into()));
    }
    let mut acc = Integer::one();
    for n in ns {
        if n < &Integer::one() {
            return Err(Error::InvalidArgument(format!("lcm needs positive inputs, got {n}")));
        }
        acc = acc.lcm(n);
    }
    Ok(acc)
}

pub fn is_squarefree(n: &Integer) -> Result<bool> {
    Ok(factorize(n)?.iter().all(|(_, e)| *e == 1))
}

/// Distinct primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSet(Vec<Integer>);

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = Integer>) -> Result<Self> {
        let mut ps: Vec<Integer> = primes.into_iter().collect();
        ps.sort();
        for w in ps.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!("prime {} repeated", w[0])));
            }
        }
        if let Some(p) = ps.iter().find(|p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(PrimeSet(ps))
    }

    pub fn from_u64s(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| Integer::from(p)))
    }

    pub fn primes(&self) -> &[Integer] {
        &self.0
    }

    pub fn contains(&self, p: &Integer) -> bool {
        self.0.binary_search(p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether any prime of the set divides `n`. Zero is divisible by all.
    pub fn divides_any(&self, n: &Integer) -> bool {
        self.0.iter().any(|p| n.is_multiple_of(p))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Comma separated primes, e.g. `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return PrimeSet::new(Vec::new());
        }
        let ps = s.split(',').map(parse_integer).collect::<Result<Vec<_>>>()?;
        PrimeSet::new(ps)
    }
}

/// Membership in `Q_P`: the reduced denominator is not a perfect square and
/// all of its prime factors lie in `P`. The sign of `x` is irrelevant.
pub fn qp_member(x: &Rational, primes: &PrimeSet) -> bool {
    let s = x.denom();
    if is_perfect_square(s) {
        return false;
    }
    let mut rest = s.clone();
    for p in primes.primes() {
        while rest.is_multiple_of(p) {
            rest /= p;
        }
    }
    rest.is_one()
}

/// `a*x + b`, which stays in `Q_P` with the same reduced denominator.
pub fn qp_affine_image(x: &Rational, a: &Integer, b: &Integer, primes: &PrimeSet) -> Result<Rational> {
    if !qp_member(x, primes) {
        return Err(Error::InvalidArgument(format!("{} is not in Q_P for P = {primes}", format_rational(x))));
    }
    if primes.divides_any(a) {
        return Err(Error::InvalidArgument(format!("multiplier {a} has a prime factor in {primes}")));
    }
    let y = x * rat_int(a.clone()) + rat_int(b.clone());
    debug_assert_eq!(y.denom(), x.denom());
    Ok(y)
}

/// Exponent `l` with `denominator(y) = p^l`, if the denominator is a power of `p`.
pub fn p_power_exponent(y: &Rational, p: &Integer) -> Option<u32> {
    let mut rest = y.denom().clone();
    let mut l = 0;
    while rest.is_multiple_of(p) && !rest.is_one() {
        rest /= p;
        l += 1;
    }
    rest.is_one().then_some(l)
}

/// Element of `~Q_p` next to `y = t/p^l`: returns `z = r/p^(2k+1)` with
/// `k = l + n` and `r = t*p^(l+1+2n) + 1`, so that `p` does not divide `r`
/// and `|z - y| = p^-(2n+2l+1)` exactly.
pub fn tilde_qp_construct(p: &Integer, y: &Rational, n: u32) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let l = p_power_exponent(y, p).ok_or_else(|| {
        Error::InvalidArgument(format!("denominator of {} is not a power of {p}", format_rational(y)))
    })?;
    let t = y.numer();
    let k = l + n;
    let r = t * Pow::pow(p, l + 1 + 2 * n) + 1;
    let z = Rational::new(r, Pow::pow(p, 2 * k + 1));
    debug_assert_eq!((&z - y).abs(), Rational::new(Integer::one(), Pow::pow(p, 2 * n + 2 * l + 1)));
    Ok(z)
}

/// Result of the two-stage density construction: the truncation
/// `y = floor(x*p^k)/p^k` and the `~Q_p` element `z` close to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicApproximation {
    pub y: Rational,
    pub z: Rational,
    /// `|z - y|`, always `p^-(2n+2l+1)`.
    pub error: Rational,
}

/// Approximates an arbitrary rational `x` by an element of `~Q_p`; the two
/// accuracy parameters stay separate: `k` for the truncation, `n` for the
/// final step.
pub fn tilde_qp_approximate(x: &Rational, p: &Integer, k: u32, n: u32) -> Result<PAdicApproximation> {
    let scale = Pow::pow(p, k);
    let t = (x * rat_int(scale.clone())).floor().to_integer();
    let y = Rational::new(t, scale);
    let z = tilde_qp_construct(p, &y, n)?;
    let error = (&z - &y).abs();
    Ok(PAdicApproximation { y, z, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_fraction_examples() {
        assert_eq!(reduce_fraction(int(4), int(8)).unwrap(), rat(1, 2));
        assert_eq!(reduce_fraction(int(-3), int(-9)).unwrap(), rat(1, 3));
        let z = reduce_fraction(int(0), int(7)).unwrap();
        assert!(z.numer().is_zero() && z.denom().is_one());
        assert_eq!(reduce_fraction(int(1), int(0)), Err(Error::ZeroDenominator));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 17 ").unwrap(), rat(17, 1));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(nth_root_exact(&rat(8, 27), 3).unwrap(), Some(rat(2, 3)));
        assert_eq!(nth_root_exact(&rat(2, 1), 2).unwrap(), None);
        assert_eq!(nth_root_exact(&rat(1024, 59049), 5).unwrap(), Some(rat(4, 9)));
        assert_eq!(nth_root_exact(&rat(0, 1), 4).unwrap(), Some(rat(0, 1)));
        assert!(matches!(nth_root_exact(&rat(-8, 1), 3), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(&int(12)).unwrap(), vec![(int(2), 2), (int(3), 1)]);
        assert!(factorize(&int(1)).unwrap().is_empty());
        let f = factorize(&int(9699690)).unwrap();
        let primes: Vec<i64> = vec![2, 3, 5, 7, 11, 13, 17, 19];
        assert_eq!(f, primes.iter().map(|&p| (int(p), 1)).collect::<Vec<_>>());
        assert!(factorize(&int(0)).is_err());
        let big = int(1_000_000_007) * int(998_244_353);
        assert_eq!(factorize(&big).unwrap(), vec![(int(998_244_353), 1), (int(1_000_000_007), 1)]);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_of(&[int(2), int(3)]).unwrap(), int(6));
        assert_eq!(lcm_of(&[int(4), int(6)]).unwrap(), int(12));
        assert_eq!(lcm_of(&[int(9)]).unwrap(), int(9));
        assert!(lcm_of(&[]).is_err());
    }

    #[test]
    fn qp_membership() {
        let p23 = PrimeSet::from_u64s(&[2, 3]).unwrap();
        let p2 = PrimeSet::from_u64s(&[2]).unwrap();
        assert!(qp_member(&rat(5, 6), &p23));
        assert!(!qp_member(&rat(5, 4), &p2));
        assert!(!qp_member(&rat(1, 5), &p23));
        assert!(qp_member(&rat(-1, 2), &p2));
        assert!(!qp_member(&rat(3, 1), &p2));
    }

    #[test]
    fn prime_set_validation() {
        assert!(PrimeSet::from_u64s(&[2, 2]).is_err());
        assert!(PrimeSet::from_u64s(&[4]).is_err());
        assert_eq!("3,2".parse::<PrimeSet>().unwrap().primes(), &[int(2), int(3)]);
    }

    #[test]
    fn qp_affine_examples() {
        let p2 = PrimeSet::from_u64s(&[2]).unwrap();
        let p23 = PrimeSet::from_u64s(&[2, 3]).unwrap();
        let y = qp_affine_image(&rat(1, 2), &int(3), &int(1), &p2).unwrap();
        assert_eq!(y, rat(5, 2));
        assert!(qp_member(&y, &p2));
        let y = qp_affine_image(&rat(5, 6), &int(5), &int(0), &p23).unwrap();
        assert_eq!(y, rat(25, 6));
        let y = qp_affine_image(&rat(1, 2), &int(7), &int(-1), &p2).unwrap();
        assert_eq!(y, rat(5, 2));
        assert!(qp_affine_image(&rat(1, 2), &int(4), &int(0), &p2).is_err());
        assert!(qp_affine_image(&rat(1, 4), &int(3), &int(0), &p2).is_err());
    }

    #[test]
    fn tilde_qp_examples() {
        let z = tilde_qp_construct(&int(2), &rat(3, 2), 1).unwrap();
        assert_eq!(z, rat(49, 32));
        assert_eq!((&z - rat(3, 2)).abs(), rat(1, 32));
        let z = tilde_qp_construct(&int(3), &rat(1, 3), 0).unwrap();
        assert_eq!(z, rat(10, 27));
        assert_eq!((&z - rat(1, 3)).abs(), rat(1, 27));
        let z = tilde_qp_construct(&int(2), &rat(0, 1), 2).unwrap();
        assert_eq!(z, rat(1, 32));
        assert!(tilde_qp_construct(&int(2), &rat(1, 3), 1).is_err());
    }

    #[test]
    fn tilde_qp_wrapper_truncates_first() {
        let a = tilde_qp_approximate(&rat(7, 5), &int(2), 3, 1).unwrap();
        assert_eq!(a.y, rat(11, 8));
        assert!((rat(7, 5) - &a.y) < rat(1, 8));
        assert_eq!(a.error, rat(1, 2 * 2 * 2 * 2 * 2 * 2 * 2 * 2 * 2));
        assert!(qp_member(&a.z, &PrimeSet::from_u64s(&[2]).unwrap()));
    }
}
