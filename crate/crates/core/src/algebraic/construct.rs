//! Approximation by algebraic numbers of prescribed degree, and degrees of
//! radical extensions generated by roots of distinct primes.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Pow, Signed};

use super::{alg_nth_root, AlgebraicNumber};
use crate::arith::{is_prime, is_squarefree, Integer, Rational};
use crate::error::{Error, Result};

/// `p^(1/N)` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeRootGenerator {
    prime: Integer,
    root_index: u64,
}

impl PrimeRootGenerator {
    pub fn new(prime: Integer, root_index: u64) -> Result<Self> {
        if !is_prime(&prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        if root_index == 0 {
            return Err(Error::InvalidArgument("root index must be positive".into()));
        }
        Ok(PrimeRootGenerator { prime, root_index })
    }

    pub fn prime(&self) -> &Integer {
        &self.prime
    }

    pub fn root_index(&self) -> u64 {
        self.root_index
    }

    pub fn value(&self) -> Result<AlgebraicNumber> {
        let n = u32::try_from(self.root_index).map_err(|_| Error::InvalidArgument("root index too large".into()))?;
        alg_nth_root(&Rational::from(self.prime.clone()), n)
    }
}

impl fmt::Display for PrimeRootGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^(1/{})", self.prime, self.root_index)
    }
}

/// Degree over the rationals of the field generated by roots of pairwise
/// distinct primes: the product of the root indices.
pub fn besicovitch_degree(gens: &[PrimeRootGenerator]) -> Result<u64> {
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.prime == g.prime) {
            return Err(Error::InvalidArgument(format!("prime {} repeated; merge its roots first", g.prime)));
        }
    }
    gens.iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g.root_index))
        .ok_or_else(|| Error::InvalidArgument("degree overflows u64".into()))
}

/// `(t, lcm(ns))`: the roots `t^(1/n_i)` of a squarefree `t` all lie in,
/// and generate, the field of `t^(1/N)`.
pub fn lcm_primitive(t: &Integer, ns: &[u64]) -> Result<(Integer, u64)> {
    if !t.is_positive() || !is_squarefree(t)? {
        return Err(Error::InvalidArgument(format!("{t} is not a squarefree positive integer")));
    }
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidArgument("need a nonempty list of positive root indices".into()));
    }
    Ok((t.clone(), ns.iter().fold(1u64, |acc, n| acc.lcm(n))))
}

/// Smallest `k` with `10^-k <= eps`.
fn decimals_for(eps: &Rational) -> u32 {
    let mut k = 0;
    let mut unit = Rational::one();
    while &unit > eps {
        unit /= Rational::from_integer(10.into());
        k += 1;
    }
    k
}

/// `t` truncated toward zero to `k` decimals.
fn truncate(t: &AlgebraicNumber, k: u32) -> Rational {
    let scale = Rational::from_integer(Pow::pow(Integer::from(10), k));
    let s = t.scale(&scale);
    if let Some(q) = s.as_rational() {
        return q.trunc() / scale;
    }
    loop {
        let e = s.enclosure();
        let lo = e.lo.trunc();
        if lo == e.hi.trunc() {
            return lo / scale;
        }
        s.refine();
    }
}

/// `r + b` with `b = base^(1/n)` and `r` the truncation of `x - b` to the
/// decimals of `eps`.
fn shifted_root(x: &Rational, base: &Rational, n: u32, eps: &Rational) -> Result<AlgebraicNumber> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("tolerance {eps} must be positive")));
    }
    let b = alg_nth_root(base, n)?;
    let t = b.neg().add_rational(x);
    let r = truncate(&t, decimals_for(eps));
    Ok(b.add_rational(&r))
}

/// An algebraic number of degree exactly `n` within `eps` of `x`.
pub fn approximate_with_degree(x: &Rational, n: u32, eps: &Rational) -> Result<AlgebraicNumber> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    shifted_root(x, &Rational::from_integer(2.into()), n, eps)
}

/// `r + p^(1/n)` near `x`, with a certificate that its degree over the
/// field generated by all roots of the prime `q` is at least `n`.
#[derive(Clone, Debug)]
pub struct RelativeDegreeApproximant {
    pub value: AlgebraicNumber,
    pub prime: Integer,
    pub n: u64,
    pub base_prime: Integer,
}

impl RelativeDegreeApproximant {
    /// Checks the degree claim over each `ℚ(q^(1/m))` with `m <= max_m`:
    /// `[ℚ(q^(1/m), p^(1/n)) : ℚ(q^(1/m))] = n`.
    pub fn verify_up_to(&self, max_m: u64) -> Result<bool> {
        for m in 1..=max_m {
            let base = PrimeRootGenerator::new(self.base_prime.clone(), m)?;
            let top = PrimeRootGenerator::new(self.prime.clone(), self.n)?;
            let joint = besicovitch_degree(&[base.clone(), top])?;
            if joint / besicovitch_degree(&[base])? != self.n {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RelativeDegreeApproximant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has degree >= {} over Q(roots of {}) since {}^(1/{}) adjoins a factor {} to every Q({}^(1/m))",
            self.value, self.n, self.base_prime, self.prime, self.n, self.n, self.base_prime
        )
    }
}

/// `r + p^(1/n)` within `eps` of `x`, for a prime `p` distinct from `q`.
pub fn approximate_relative_degree(
    x: &Rational,
    p: &Integer,
    n: u32,
    q: &Integer,
    eps: &Rational,
) -> Result<RelativeDegreeApproximant> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if p == q {
        return Err(Error::InvalidArgument(format!("primes must differ, got {p} twice")));
    }
    PrimeRootGenerator::new(p.clone(), n.into())?;
    PrimeRootGenerator::new(q.clone(), 1)?;
    let value = shifted_root(x, &Rational::from_integer(p.clone()), n, eps)?;
    Ok(RelativeDegreeApproximant { value, prime: p.clone(), n: n.into(), base_prime: q.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::alg_sign;
    use crate::arith::{int, rat};

    fn within(a: &AlgebraicNumber, x: &Rational, eps: &Rational) -> bool {
        let d = a.add_rational(&-x);
        alg_sign(&d.add_rational(&-eps)) < 0 && alg_sign(&d.add_rational(eps)) > 0
    }

    #[test]
    fn degree_n_approximants() {
        let a = approximate_with_degree(&rat(0, 1), 2, &rat(1, 10)).unwrap();
        assert_eq!(a, alg_nth_root(&rat(2, 1), 2).unwrap().add_rational(&rat(-7, 5)));
        assert!(within(&a, &rat(0, 1), &rat(1, 10)));
        let b = approximate_with_degree(&rat(5, 1), 1, &rat(1, 1)).unwrap();
        assert_eq!(b.as_rational(), Some(&rat(5, 1)));
        let c = approximate_with_degree(&rat(1, 1), 3, &rat(1, 1)).unwrap();
        assert_eq!(c, alg_nth_root(&rat(2, 1), 3).unwrap());
        for (x, n, eps) in [(rat(-7, 3), 4u32, rat(1, 1000)), (rat(22, 7), 5, rat(3, 100))] {
            let a = approximate_with_degree(&x, n, &eps).unwrap();
            assert_eq!(a.degree(), n as usize);
            assert!(within(&a, &x, &eps));
        }
        assert!(approximate_with_degree(&rat(0, 1), 2, &rat(0, 1)).is_err());
    }

    #[test]
    fn radical_degrees() {
        let g = |p: i64, n| PrimeRootGenerator::new(int(p), n).unwrap();
        assert_eq!(besicovitch_degree(&[g(2, 2)]).unwrap(), 2);
        assert_eq!(besicovitch_degree(&[g(2, 2), g(3, 3)]).unwrap(), 6);
        assert_eq!(besicovitch_degree(&[]).unwrap(), 1);
        assert!(besicovitch_degree(&[g(2, 2), g(2, 3)]).is_err());
        assert!(PrimeRootGenerator::new(int(4), 2).is_err());
        assert_eq!(lcm_primitive(&int(2), &[2, 3]).unwrap(), (int(2), 6));
        assert_eq!(lcm_primitive(&int(6), &[4, 6]).unwrap(), (int(6), 12));
        assert_eq!(lcm_primitive(&int(2), &[1]).unwrap(), (int(2), 1));
        assert!(lcm_primitive(&int(12), &[2]).is_err());
    }

    #[test]
    fn relative_degree_certificate() {
        let a = approximate_relative_degree(&rat(1, 2), &int(3), 4, &int(2), &rat(1, 100)).unwrap();
        assert_eq!(a.value.degree(), 4);
        assert!(within(&a.value, &rat(1, 2), &rat(1, 100)));
        assert!(a.verify_up_to(6).unwrap());
        let (_, coords) = a.value.field().unwrap();
        assert_eq!(coords.coeff(1), rat(1, 1));
        assert_eq!(a.value.minpoly().deg0(), 4);
        assert!(approximate_relative_degree(&rat(0, 1), &int(2), 2, &int(2), &rat(1, 2)).is_err());
    }
}
