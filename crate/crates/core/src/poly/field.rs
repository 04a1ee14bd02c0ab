//! Linear algebra and polynomial arithmetic over any exact field.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// A field with exact arithmetic and a decidable zero test.
pub trait ExactField: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn div(&self, o: &Self) -> Result<Self>;

    fn neg(&self) -> Result<Self> {
        Self::zero().sub(self)
    }
}

impl ExactField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
}

/// A nonzero vector `v` with `rows · v = 0`, or `None` if the kernel is
/// trivial.  Pivots are the first nonzero entry in column order; the
/// first free variable is set to 1 and all others to 0.
pub fn kernel_vector<F: ExactField>(rows: &[Vec<F>], cols: usize) -> Result<Option<Vec<F>>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = F::one().div(&m[r][c])?;
        for x in m[r].iter_mut() {
            *x = x.mul(&inv)?;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).take(cols) {
                    *x = x.sub(&f.mul(p)?)?;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let Some(free) = (0..cols).find(|c| !pivots.iter().any(|(_, pc)| pc == c)) else {
        return Ok(None);
    };
    let mut v = vec![F::zero(); cols];
    v[free] = F::one();
    for (pr, pc) in pivots {
        v[pc] = m[pr][free].neg()?;
    }
    Ok(Some(v))
}

/// Coefficient list with trailing zeros removed.
pub fn trim<F: ExactField>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn eval<F: ExactField>(p: &[F], x: &F) -> Result<F> {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x)?.add(c)?;
    }
    Ok(acc)
}

pub fn div_rem<F: ExactField>(a: &[F], b: &[F]) -> Result<(Vec<F>, Vec<F>)> {
    let b = trim(b.to_vec());
    let Some(lc) = b.last() else {
        return Err(Error::DivisionByZero);
    };
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return Ok((Vec::new(), rem));
    }
    let db = b.len() - 1;
    let mut q = vec![F::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let qk = top.div(lc)?;
        for (i, c) in b.iter().enumerate() {
            let t = qk.mul(c)?;
            rem[k + i] = rem[k + i].sub(&t)?;
        }
        q[k] = qk;
    }
    rem.truncate(db);
    Ok((trim(q), trim(rem)))
}

pub fn monic<F: ExactField>(p: &[F]) -> Result<Vec<F>> {
    let p = trim(p.to_vec());
    let Some(lc) = p.last().cloned() else {
        return Ok(p);
    };
    p.iter().map(|c| c.div(&lc)).collect()
}

/// Monic gcd; errors when both inputs are zero.
pub fn gcd<F: ExactField>(a: &[F], b: &[F]) -> Result<Vec<F>> {
    let (mut a, mut b) = (monic(a)?, monic(b)?);
    if a.is_empty() && b.is_empty() {
        return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
    }
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b)?;
        a = b;
        b = monic(&r)?;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn kernel_of_rank_deficient_system() {
        let rows = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
        let v = kernel_vector(&rows, 3).unwrap().unwrap();
        assert_eq!(v, vec![rat(-2, 1), rat(1, 1), rat(0, 1)]);
        let full = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        assert!(kernel_vector(&full, 2).unwrap().is_none());
    }

    #[test]
    fn generic_gcd_matches_rational_gcd() {
        let a = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        let b = vec![rat(-2, 1), rat(2, 1)];
        assert_eq!(gcd(&a, &b).unwrap(), vec![rat(-1, 1), rat(1, 1)]);
    }
}
