//! Univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored constant term first and never carry a trailing
//! zero, so the zero polynomial is the empty list and `degree` is exact.

pub mod enumerate;
pub mod field;
pub mod kronecker;
pub mod modular;
pub mod recovery;
pub mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{parse_rational, rat_int, Integer, Rational};
use crate::error::{Error, Result};

pub use enumerate::{enumerate_content1, Content1Enumerator};

pub use kronecker::{kronecker_irreducible, Irreducibility};
pub use recovery::{degree_bound_d, recover_rational_function, RationalFunction, RecoveryInstance};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

macro_rules! common_poly_api {
    ($ty:ident, $scalar:ty) => {
        impl $ty {
            pub fn new(mut coeffs: Vec<$scalar>) -> Self {
                trim(&mut coeffs);
                $ty { coeffs }
            }

            pub fn zero() -> Self {
                $ty { coeffs: Vec::new() }
            }

            pub fn one() -> Self {
                $ty::constant(<$scalar>::one())
            }

            pub fn constant(c: $scalar) -> Self {
                $ty::new(vec![c])
            }

            /// The indeterminate `X`.
            pub fn x() -> Self {
                $ty::new(vec![<$scalar>::zero(), <$scalar>::one()])
            }

            pub fn monomial(c: $scalar, k: usize) -> Self {
                let mut v = vec![<$scalar>::zero(); k + 1];
                v[k] = c;
                $ty::new(v)
            }

            pub fn coeffs(&self) -> &[$scalar] {
                &self.coeffs
            }

            pub fn into_coeffs(self) -> Vec<$scalar> {
                self.coeffs
            }

            /// Coefficient of `X^k`, zero beyond the degree.
            pub fn coeff(&self, k: usize) -> $scalar {
                self.coeffs.get(k).cloned().unwrap_or_else(<$scalar>::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn degree(&self) -> Option<usize> {
                self.coeffs.len().checked_sub(1)
            }

            /// Degree with the zero polynomial counted as 0.
            pub fn deg0(&self) -> usize {
                self.degree().unwrap_or(0)
            }

            pub fn is_constant(&self) -> bool {
                self.coeffs.len() <= 1
            }

            pub fn leading(&self) -> Option<&$scalar> {
                self.coeffs.last()
            }

            pub fn derivative(&self) -> Self {
                $ty::new(
                    self.coeffs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, c)| c * <$scalar>::from(Integer::from(k)))
                        .collect(),
                )
            }

            pub fn scale(&self, c: &$scalar) -> Self {
                $ty::new(self.coeffs.iter().map(|a| a * c).collect())
            }

            pub fn pow(&self, mut e: u32) -> Self {
                let mut base = self.clone();
                let mut acc = $ty::one();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                acc
            }

            /// `self(g(X))`.
            pub fn compose(&self, g: &Self) -> Self {
                let mut acc = $ty::zero();
                for c in self.coeffs.iter().rev() {
                    acc = &(&acc * g) + &$ty::constant(c.clone());
                }
                acc
            }

            /// `self(-X)`.
            pub fn reflect(&self) -> Self {
                $ty::new(
                    self.coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                        .collect(),
                )
            }

            /// `X^deg * self(1/X)`.
            pub fn reverse(&self) -> Self {
                let mut v = self.coeffs.clone();
                v.reverse();
                $ty::new(v)
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                $ty::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                $ty::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::zero();
                }
                let mut out = vec![<$scalar>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                $ty::new(out)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coeffs.iter().map(|c| -c.clone()).collect())
            }
        }

        impl fmt::Display for $ty {
            /// Coefficient list `[c0, c1, ..., ck]`.
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("[")?;
                if self.coeffs.is_empty() {
                    f.write_str("0")?;
                }
                for (k, c) in self.coeffs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    };
}

common_poly_api!(IntPolynomial, Integer);
common_poly_api!(RatPolynomial, Rational);

/// Parses `[c0, c1, ..., ck]` into rational coefficients.
pub fn parse_coeff_list(text: &str) -> Result<Vec<Rational>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("expected `[c0, ..., ck]`, got `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}

impl FromStr for RatPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(RatPolynomial::new(parse_coeff_list(s)?))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let cs = parse_coeff_list(s)?;
        let ints = cs
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::parse(format!("non-integer coefficient {c}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(ints))
    }
}

impl IntPolynomial {
    pub fn from_i64s(cs: &[i64]) -> Self {
        IntPolynomial::new(cs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn eval_int(&self, x: &Integer) -> Integer {
        let mut acc = Integer::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner on the homogenised form keeps everything integral.
        let (n, d) = (x.numer(), x.denom());
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Integer::zero();
        let mut dpow = Integer::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        let _ = deg;
        Rational::new(acc, num_traits::Pow::pow(d, deg as u32))
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::zero(), |g, c| g.gcd(c))
    }

    pub fn height(&self) -> Integer {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(rat_int).collect())
    }

    /// Content 1 and positive leading coefficient.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one() && self.leading().is_some_and(|c| c.is_positive())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        match content_primitive(self) {
            Ok((_, p)) => p,
            Err(_) => IntPolynomial::zero(),
        }
    }

    /// Quotient `self / d` if `d` divides `self` in `Z[X]`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = d.degree()?;
        let Some(sd) = self.degree() else {
            return Some(IntPolynomial::zero());
        };
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Integer::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(q))
    }

    pub fn divides(&self, p: &IntPolynomial) -> bool {
        p.div_exact(self).is_some()
    }
}

/// Splits a nonzero integer polynomial into its content and a primitive
/// part with positive leading coefficient, so `content * primitive = ±p`.
pub fn content_primitive(p: &IntPolynomial) -> Result<(Integer, IntPolynomial)> {
    let lc = p.leading().ok_or_else(|| Error::InvalidArgument("content of the zero polynomial".into()))?;
    let mut c = p.content();
    if lc.is_negative() {
        c = -c;
    }
    let prim = IntPolynomial::new(p.coeffs.iter().map(|a| a / &c).collect());
    Ok((c.abs(), prim))
}

impl RatPolynomial {
    pub fn from_i64s(cs: &[i64]) -> Self {
        RatPolynomial::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return (RatPolynomial::zero(), RatPolynomial::zero());
        };
        if sd < dd {
            return (RatPolynomial::zero(), self.clone());
        }
        let inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top * &inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        rem.truncate(dd);
        (RatPolynomial::new(q), RatPolynomial::new(rem))
    }

    pub fn rem(&self, d: &RatPolynomial) -> RatPolynomial {
        self.div_rem(d).1
    }

    /// Clears denominators and returns the primitive integer polynomial
    /// with positive leading coefficient (a positive-or-negative rational
    /// multiple of `self`).
    pub fn to_primitive_int(&self) -> IntPolynomial {
        let l = self.coeffs.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let ints = IntPolynomial::new(self.coeffs.iter().map(|c| (c * rat_int(l.clone())).to_integer()).collect());
        ints.primitive()
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> RatPolynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = poly_gcd(self, &self.derivative()).expect("nonzero");
        self.div_rem(&g).0.monic()
    }

    /// Extended Euclid: `(g, s)` with `s*self ≡ g (mod m)`, `g` monic gcd.
    pub fn inverse_mod(&self, m: &RatPolynomial) -> Option<RatPolynomial> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (RatPolynomial::zero(), RatPolynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(s0.scale(&inv).rem(m))
    }
}

impl From<&IntPolynomial> for RatPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        p.to_rat()
    }
}

/// Monic gcd over the rationals.
pub fn poly_gcd(p: &RatPolynomial, q: &RatPolynomial) -> Result<RatPolynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
    }
    let (mut a, mut b) = (p.monic(), q.monic());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Unique polynomial of degree below the number of points through them.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<RatPolynomial> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::InvalidArgument(format!("repeated abscissa {xi}")));
        }
    }
    // Newton divided differences, then expansion.
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut acc = RatPolynomial::zero();
    for i in (0..n).rev() {
        let lin = RatPolynomial::new(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &RatPolynomial::constant(dd[i].clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    fn rp(cs: &[i64]) -> RatPolynomial {
        RatPolynomial::from_i64s(cs)
    }

    #[test]
    fn evaluation() {
        assert_eq!(ip(&[-2, 0, 1]).eval(&rat(3, 2)), rat(1, 4));
        assert_eq!(IntPolynomial::zero().eval(&rat(5, 7)), rat(0, 1));
        assert_eq!(ip(&[-3, 3, -3, 1]).eval(&rat(1, 1)), rat(-2, 1));
        assert_eq!(rp(&[-3, 3, -3, 1]).eval(&rat(1, 1)), rat(-2, 1));
    }

    #[test]
    fn content_and_primitive_part() {
        assert_eq!(content_primitive(&ip(&[4, 0, 6])).unwrap(), (Integer::from(2), ip(&[2, 0, 3])));
        assert_eq!(content_primitive(&ip(&[-1, 1])).unwrap(), (Integer::from(1), ip(&[-1, 1])));
        assert_eq!(content_primitive(&ip(&[0, 8, 0, -4])).unwrap(), (Integer::from(4), ip(&[0, -2, 0, 1])));
        assert!(content_primitive(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&rp(&[-1, 0, 1]), &rp(&[-1, 1])).unwrap(), rp(&[-1, 1]));
        assert_eq!(poly_gcd(&rp(&[-2, 0, 1]), &rp(&[1, 0, 1])).unwrap(), rp(&[1]));
        assert_eq!(poly_gcd(&rp(&[-2, 0, 2]), &rp(&[-2, 2])).unwrap(), rp(&[-1, 1]));
        assert!(poly_gcd(&RatPolynomial::zero(), &RatPolynomial::zero()).is_err());
        assert_eq!(
            poly_gcd(&RatPolynomial::zero(), &rp(&[2, 4])).unwrap(),
            RatPolynomial::new(vec![rat(1, 2), rat(1, 1)])
        );
    }

    #[test]
    fn interpolation() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| (rat(x, 1), rat(y, 1))).collect::<Vec<_>>();
        assert_eq!(lagrange_interpolate(&pts(&[(0, 1), (1, 2)])).unwrap(), rp(&[1, 1]));
        assert_eq!(lagrange_interpolate(&pts(&[(0, 7)])).unwrap(), rp(&[7]));
        let q = lagrange_interpolate(&pts(&[(0, -1), (1, 0), (2, 3)])).unwrap();
        assert_eq!(q, rp(&[-1, 0, 1]));
        for (x, y) in [(0, -1), (1, 0), (2, 3)] {
            assert_eq!(q.eval(&rat(x, 1)), rat(y, 1));
        }
        assert!(lagrange_interpolate(&pts(&[(1, 1), (1, 2)])).is_err());
    }

    #[test]
    fn exact_division() {
        let p = ip(&[-1, 0, 1]);
        assert_eq!(p.div_exact(&ip(&[-1, 1])), Some(ip(&[1, 1])));
        assert_eq!(p.div_exact(&ip(&[-2, 1])), None);
        assert_eq!(ip(&[-2, 0, 2]).div_exact(&ip(&[0, 2])), None);
    }

    #[test]
    fn text_form() {
        let p: RatPolynomial = "[1/2, -3, 0, 4]".parse().unwrap();
        assert_eq!(p.to_string(), "[1/2, -3, 0, 4]");
        assert_eq!(RatPolynomial::zero().to_string(), "[0]");
        assert!("[1/2]".parse::<IntPolynomial>().is_err());
        assert_eq!("[ -2,0,1]".parse::<IntPolynomial>().unwrap(), ip(&[-2, 0, 1]));
    }

    #[test]
    fn modular_inverse() {
        let m = rp(&[-2, 0, 1]);
        let a = rp(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m), rp(&[1]));
        assert!(rp(&[-1, 1]).inverse_mod(&rp(&[-1, 0, 1])).is_none());
    }
}
