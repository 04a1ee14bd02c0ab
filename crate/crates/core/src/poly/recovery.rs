//! Rational functions, their recovery from exact samples, and the degree
//! bound beyond which a nonconstant function cannot take rational values.

use std::fmt;
use std::str::FromStr;

use num_traits::{Pow, Zero};

use super::field::{self, ExactField};
use super::{poly_gcd, RatPolynomial};
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

/// Reduced quotient `num / den` with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: RatPolynomial,
    den: RatPolynomial,
}

impl RationalFunction {
    pub fn new(num: RatPolynomial, den: RatPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let (n, d) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lc = d.leading().unwrap().recip();
        Ok(RationalFunction { num: n.scale(&lc), den: d.scale(&lc) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: RatPolynomial::zero(), den: RatPolynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: RatPolynomial::constant(c), den: RatPolynomial::one() }
    }

    pub fn polynomial(p: RatPolynomial) -> Self {
        RationalFunction { num: p, den: RatPolynomial::one() }
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        RationalFunction::polynomial(RatPolynomial::x())
    }

    pub fn numerator(&self) -> &RatPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &RatPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `f(x)`; a pole is a division by zero.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) - &(&o.num * &self.den);
        RationalFunction::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    /// `num / den` in coefficient-list form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once("] /") {
            Some((n, d)) => RationalFunction::new(format!("{n}]").parse()?, d.parse()?),
            None => Ok(RationalFunction::polynomial(s.parse()?)),
        }
    }
}

/// Sample data for recovering `p/q` with `deg p < n`, `deg q < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryInstance<F = Rational> {
    points: Vec<F>,
    values: Vec<F>,
    n: usize,
    m: usize,
}

impl<F: ExactField> RecoveryInstance<F> {
    pub fn new(points: Vec<F>, values: Vec<F>, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument("degree bounds must be at least 1".into()));
        }
        if points.len() != n + m || values.len() != n + m {
            return Err(Error::InvalidArgument(format!(
                "need {} samples, got {} points and {} values",
                n + m,
                points.len(),
                values.len()
            )));
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i].sub(&points[j])?.is_zero() {
                    return Err(Error::InvalidArgument(format!("repeated sample point {:?}", points[i])));
                }
            }
        }
        Ok(RecoveryInstance { points, values, n, m })
    }

    pub fn points(&self) -> &[F] {
        &self.points
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.n, self.m)
    }
}

/// Recovers numerator and monic denominator, coprime, over any exact field.
pub fn recover_generic<F: ExactField>(inst: &RecoveryInstance<F>) -> Result<(Vec<F>, Vec<F>)> {
    let (n, m) = (inst.n, inst.m);
    let mut rows = Vec::with_capacity(n + m);
    for (a, y) in inst.points.iter().zip(&inst.values) {
        let mut row = Vec::with_capacity(n + m);
        let mut pw = F::one();
        for _ in 0..n {
            row.push(pw.clone());
            pw = pw.mul(a)?;
        }
        let mut pw = y.neg()?;
        for _ in 0..m {
            row.push(pw.clone());
            pw = pw.mul(a)?;
        }
        rows.push(row);
    }
    let inconsistent =
        || Error::InconsistentInstance("no rational function of the given degrees fits the samples".into());
    let v = field::kernel_vector(&rows, n + m)?.ok_or_else(inconsistent)?;
    let pbar = field::trim(v[..n].to_vec());
    let qbar = field::trim(v[n..].to_vec());
    if qbar.is_empty() {
        return Err(inconsistent());
    }
    let h = field::gcd(&pbar, &qbar)?;
    let (p, _) = field::div_rem(&pbar, &h)?;
    let (q, _) = field::div_rem(&qbar, &h)?;
    let lc = q.last().cloned().expect("nonzero");
    let p: Vec<F> = p.iter().map(|c| c.div(&lc)).collect::<Result<_>>()?;
    let q: Vec<F> = q.iter().map(|c| c.div(&lc)).collect::<Result<_>>()?;
    for (a, y) in inst.points.iter().zip(&inst.values) {
        let qa = field::eval(&q, a)?;
        if qa.is_zero() || !field::eval(&p, a)?.sub(&y.mul(&qa)?)?.is_zero() {
            return Err(inconsistent());
        }
    }
    Ok((p, q))
}

/// Recovers the reduced `f` with monic denominator from `n + m` samples.
pub fn recover_rational_function(inst: &RecoveryInstance) -> Result<RationalFunction> {
    let (p, q) = recover_generic(inst)?;
    RationalFunction::new(RatPolynomial::new(p), RatPolynomial::new(q))
}

/// `d^(n+m) · max(n-1, m-1)`.
pub fn degree_bound_d(d: u64, n: u64, m: u64) -> Integer {
    let k = n.max(m).saturating_sub(1);
    Pow::pow(Integer::from(d), n + m) * Integer::from(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rp(cs: &[i64]) -> RatPolynomial {
        RatPolynomial::from_i64s(cs)
    }

    fn samples(f: &RationalFunction, xs: &[i64]) -> (Vec<Rational>, Vec<Rational>) {
        let pts: Vec<Rational> = xs.iter().map(|&x| rat(x, 1)).collect();
        let vals = pts.iter().map(|x| f.eval(x).unwrap()).collect();
        (pts, vals)
    }

    #[test]
    fn recovers_spec_examples() {
        let f = RationalFunction::new(rp(&[1, 1]), rp(&[-2, 1])).unwrap();
        let (p, v) = samples(&f, &[0, 1, 3, 4]);
        let inst = RecoveryInstance::new(p, v, 2, 2).unwrap();
        assert_eq!(recover_rational_function(&inst).unwrap(), f);

        let five = RationalFunction::constant(rat(5, 1));
        let (p, v) = samples(&five, &[7, -1]);
        let inst = RecoveryInstance::new(p, v, 1, 1).unwrap();
        assert_eq!(recover_rational_function(&inst).unwrap().to_string(), "[5] / [1]");

        let x = RationalFunction::x();
        let (p, v) = samples(&x, &[0, 1, 2]);
        let inst = RecoveryInstance::new(p, v, 2, 1).unwrap();
        assert_eq!(recover_rational_function(&inst).unwrap(), x);
    }

    #[test]
    fn inconsistent_samples_are_rejected() {
        // No f with deg p < 1, deg q < 1 takes two distinct values.
        let inst = RecoveryInstance::new(vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)], 1, 1).unwrap();
        assert!(matches!(recover_rational_function(&inst), Err(Error::InconsistentInstance(_))));
        assert!(RecoveryInstance::new(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)], 1, 1).is_err());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound_d(2, 2, 2), Integer::from(16));
        assert_eq!(degree_bound_d(1, 3, 2), Integer::from(2));
        assert_eq!(degree_bound_d(1, 1, 1), Integer::from(0));
    }

    #[test]
    fn text_form_round_trips() {
        let f = RationalFunction::new(rp(&[2, 2]), rp(&[1, 1])).unwrap();
        assert_eq!(f, RationalFunction::constant(rat(2, 1)));
        let g = RationalFunction::new(rp(&[1, 1]), rp(&[-2, 1])).unwrap();
        assert_eq!(g.to_string().parse::<RationalFunction>().unwrap(), g);
    }
}
