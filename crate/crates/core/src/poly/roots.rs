//! Sturm sequences, real root isolation, interval evaluation, resultants.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{lagrange_interpolate, IntPolynomial, RatPolynomial};
use crate::arith::{rat_int, Integer, Rational};

/// One real root of a square-free polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    /// Exactly one root in the open interval; endpoints are not roots.
    Isolated(Rational, Rational),
}

impl RealRoot {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RealRoot::Exact(r) => r == x,
            RealRoot::Isolated(lo, hi) => lo < x && x < hi,
        }
    }
}

/// Sign of `p(x)` without building the rational value.
pub fn sign_at(p: &IntPolynomial, x: &Rational) -> i8 {
    let (n, d) = (x.numer(), x.denom());
    let mut acc = Integer::zero();
    let mut dpow = Integer::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    sign_of(&acc)
}

pub(crate) fn sign_of<T: Signed>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain of a square-free polynomial, each member scaled to a
/// primitive integer polynomial by a positive factor.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone()];
    if p.is_constant() {
        return seq;
    }
    seq.push(positive_primitive(&p.derivative().to_rat()));
    loop {
        let n = seq.len();
        let r = seq[n - 2].to_rat().rem(&seq[n - 1].to_rat());
        if r.is_zero() {
            break;
        }
        seq.push(positive_primitive(&(-&r)));
    }
    seq
}

/// Primitive integer multiple by a positive rational factor.
fn positive_primitive(p: &RatPolynomial) -> IntPolynomial {
    let prim = p.to_primitive_int();
    if p.leading().is_some_and(|c| c.is_negative()) {
        -&prim
    } else {
        prim
    }
}

fn sign_changes(seq: &[IntPolynomial], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in seq {
        let s = sign_at(q, x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct roots in `(lo, hi]`.
pub fn count_roots(seq: &[IntPolynomial], lo: &Rational, hi: &Rational) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// A power of two strictly exceeding every root's absolute value.
pub fn root_bound(p: &IntPolynomial) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.deg0()].iter().map(|c| c.abs()).max().unwrap_or_default();
    // Cauchy: |z| < 1 + max|c_i| / |lc|.
    let bound = Rational::one() + Rational::new(m, lc);
    let mut b = Rational::one();
    while b <= bound {
        b *= rat_int(2);
    }
    b
}

/// Real roots of `p` in increasing order, deterministic.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RealRoot> {
    if p.is_constant() {
        return Vec::new();
    }
    let sf = p.to_rat().squarefree_part().to_primitive_int();
    let seq = sturm_sequence(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    isolate_in(&sf, &seq, -b.clone(), b, &mut out);
    out
}

fn isolate_in(p: &IntPolynomial, seq: &[IntPolynomial], lo: Rational, hi: Rational, out: &mut Vec<RealRoot>) {
    let n = count_roots(seq, &lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealRoot::Isolated(lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rat_int(2);
    if sign_at(p, &mid) != 0 {
        isolate_in(p, seq, lo, mid.clone(), out);
        isolate_in(p, seq, mid, hi, out);
        return;
    }
    let mut delta = (&hi - &lo) / rat_int(4);
    loop {
        let (a, b) = (&mid - &delta, &mid + &delta);
        if sign_at(p, &a) != 0 && sign_at(p, &b) != 0 && count_roots(seq, &a, &b) == 1 {
            isolate_in(p, seq, lo, a, out);
            out.push(RealRoot::Exact(mid));
            isolate_in(p, seq, b, hi, out);
            return;
        }
        delta /= rat_int(2);
    }
}

/// Halves an isolating interval of a square-free `p` with no root at either
/// endpoint, returning the half holding the root or the root itself.
pub fn bisect(p: &IntPolynomial, lo: &Rational, hi: &Rational) -> RealRoot {
    let mid = (lo + hi) / rat_int(2);
    let sm = sign_at(p, &mid);
    if sm == 0 {
        return RealRoot::Exact(mid);
    }
    if sign_at(p, lo) * sm < 0 {
        RealRoot::Isolated(lo.clone(), mid)
    } else {
        RealRoot::Isolated(mid, hi.clone())
    }
}

/// Closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` once the interval excludes zero or is the point zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> RatInterval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    /// `None` when the divisor interval contains zero.
    pub fn div(&self, o: &RatInterval) -> Option<RatInterval> {
        if o.contains_zero() {
            return None;
        }
        let inv = RatInterval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn intersects(&self, o: &RatInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }
}

/// Horner enclosure of `p` over `x`.
pub fn eval_interval(p: &RatPolynomial, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// `Res(a, b)` by the Euclidean remainder sequence over the rationals.
pub fn resultant(a: &RatPolynomial, b: &RatPolynomial) -> Rational {
    let (Some(n), Some(m)) = (a.degree(), b.degree()) else {
        return Rational::zero();
    };
    if m == 0 {
        return pow(&b.coeffs()[0], n);
    }
    if n == 0 {
        return pow(&a.coeffs()[0], m);
    }
    let r = a.rem(b);
    let Some(dr) = r.degree() else {
        return Rational::zero();
    };
    let lc = b.leading().unwrap();
    let mut res = pow(lc, n - dr) * resultant(b, &r);
    if (n * m).is_odd() {
        res = -res;
    }
    res
}

fn pow(x: &Rational, e: usize) -> Rational {
    num_traits::Pow::pow(x, e as u32)
}

/// Product of `g(α)` over the complex roots `α` of `m`, with multiplicity.
pub fn norm(m: &RatPolynomial, g: &RatPolynomial) -> Rational {
    let Some(dg) = g.degree() else {
        return Rational::zero();
    };
    resultant(m, g) / pow(m.leading().expect("nonzero modulus"), dg)
}

/// `∏ (X − c(α))` over the roots `α` of the monic-normalised `m`.
pub fn charpoly(m: &RatPolynomial, coords: &RatPolynomial) -> RatPolynomial {
    let n = m.deg0();
    let pts: Vec<(Rational, Rational)> = (0..=n)
        .map(|k| {
            let x0 = rat_int(k as i64);
            let g = &RatPolynomial::constant(x0.clone()) - coords;
            let v = norm(m, &g);
            (x0, v)
        })
        .collect();
    lagrange_interpolate(&pts).expect("distinct nodes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn sturm_counts() {
        let p = ip(&[-2, 0, 1]);
        let seq = sturm_sequence(&p);
        assert_eq!(count_roots(&seq, &rat(-2, 1), &rat(2, 1)), 2);
        assert_eq!(count_roots(&seq, &rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(count_roots(&sturm_sequence(&ip(&[1, 0, 1])), &rat(-9, 1), &rat(9, 1)), 0);
    }

    #[test]
    fn isolation_is_ordered_and_handles_rational_roots() {
        let roots = isolate_real_roots(&ip(&[0, -1, 0, 1]));
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|r| *r == RealRoot::Exact(rat(0, 1))));
        assert!(roots[0].contains(&rat(-1, 1)) || roots[0] == RealRoot::Exact(rat(-1, 1)));
        let r2 = isolate_real_roots(&ip(&[-2, 0, 1]));
        assert_eq!(r2.len(), 2);
        match &r2[1] {
            RealRoot::Isolated(lo, hi) => {
                assert!(sign_at(&ip(&[-2, 0, 1]), lo) < 0 && sign_at(&ip(&[-2, 0, 1]), hi) > 0);
                assert!(lo.is_positive() || lo.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(isolate_real_roots(&ip(&[1, 0, 1])).is_empty());
        let double = isolate_real_roots(&ip(&[1, -2, 1]));
        assert!(double.len() == 1 && double[0].contains(&rat(1, 1)));
    }

    #[test]
    fn resultants() {
        let a = RatPolynomial::from_i64s(&[-2, 0, 1]);
        let b = RatPolynomial::from_i64s(&[-3, 0, 1]);
        // (sqrt2^2 - 3)(( -sqrt2)^2 - 3) = 1
        assert_eq!(norm(&a, &b), rat(1, 1));
        assert_eq!(resultant(&a, &RatPolynomial::from_i64s(&[0, 1])), rat(-2, 1));
        let cp = charpoly(&a, &RatPolynomial::from_i64s(&[1, 1]));
        assert_eq!(cp, RatPolynomial::from_i64s(&[-1, -2, 1]));
    }

    #[test]
    fn interval_enclosure() {
        let p = RatPolynomial::from_i64s(&[-2, 0, 1]);
        let e = eval_interval(&p, &RatInterval::new(rat(14, 10), rat(15, 10)));
        assert!(e.lo <= rat(-4, 100) && e.hi >= rat(25, 100));
    }
}
