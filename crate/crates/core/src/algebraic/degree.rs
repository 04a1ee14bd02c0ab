//! Degree of an algebraic number by blind search: enumerate content-1
//! polynomials, keep the first irreducible one that vanishes.

use num_traits::{ToPrimitive, Zero};

use super::{alg_eval_poly, AlgebraicNumber};
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::kronecker::kronecker_irreducible;
use crate::poly::{Content1Enumerator, IntPolynomial};

/// Access to an algebraic number that only answers "is `p(a) = 0`?".
pub struct EvaluationView<'a> {
    a: &'a AlgebraicNumber,
}

impl<'a> EvaluationView<'a> {
    pub fn new(a: &'a AlgebraicNumber) -> Self {
        EvaluationView { a }
    }

    pub fn is_root(&self, p: &IntPolynomial) -> bool {
        alg_eval_poly(p, self.a).is_zero()
    }

    fn filter(&self) -> Option<ModularFilter> {
        ModularFilter::new(self.a)
    }
}

const L: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % L as u128) as u64
}

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= L {
        s - L
    } else {
        s
    }
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn int_mod(n: &Integer) -> u64 {
    let m: Integer = n.modulo_l();
    m.to_u64().expect("reduced")
}

trait ModuloL {
    fn modulo_l(&self) -> Integer;
}

impl ModuloL for Integer {
    fn modulo_l(&self) -> Integer {
        num_integer::Integer::mod_floor(self, &Integer::from(L))
    }
}

fn rat_mod(x: &Rational) -> Option<u64> {
    let d = int_mod(x.denom());
    (d != 0).then(|| mulm(int_mod(x.numer()), powm(d, L - 2)))
}

/// The value reduced modulo the prime `2^61 - 1`: a nonzero residue proves
/// `p(a) != 0`, a zero residue needs the exact test.
struct ModularFilter {
    /// Monic modulus without its leading 1; empty for rationals.
    modulus: Vec<u64>,
    /// Powers `a^k` reduced modulo the modulus.
    powers: Vec<Vec<u64>>,
}

impl ModularFilter {
    fn new(a: &AlgebraicNumber) -> Option<Self> {
        let (modulus, base) = match a.field() {
            None => (Vec::new(), vec![rat_mod(a.as_rational().expect("rational"))?]),
            Some((gen, coords)) => {
                let m: Option<Vec<u64>> = gen.modulus.coeffs().iter().map(rat_mod).collect();
                let mut m = m?;
                m.pop();
                let mut c: Vec<u64> = coords.coeffs().iter().map(rat_mod).collect::<Option<_>>()?;
                c.resize(m.len(), 0);
                (m, c)
            }
        };
        let n = base.len();
        let mut one = vec![0; n];
        one[0] = 1;
        Some(ModularFilter { modulus, powers: vec![one, base] })
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len();
        if self.modulus.is_empty() {
            return vec![mulm(a[0], b[0])];
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = addm(prod[i + j], mulm(x, y));
            }
        }
        for k in (n..prod.len()).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            // y^k = -sum m_i y^(k-n+i)
            for (i, &mi) in self.modulus.iter().enumerate() {
                let idx = k - n + i;
                prod[idx] = addm(prod[idx], L - mulm(t, mi));
            }
        }
        prod.truncate(n);
        prod
    }

    fn may_vanish(&mut self, cs: &[i64]) -> bool {
        while self.powers.len() < cs.len() {
            let next = self.mul(self.powers.last().unwrap(), &self.powers[1]);
            self.powers.push(next);
        }
        let n = self.powers[0].len();
        let mut acc = vec![0u64; n];
        for (c, pw) in cs.iter().zip(&self.powers) {
            if *c == 0 {
                continue;
            }
            let cm = c.rem_euclid(L as i64) as u64;
            for (s, &v) in acc.iter_mut().zip(pw) {
                *s = addm(*s, mulm(cm, v));
            }
        }
        acc.iter().all(Zero::is_zero)
    }
}

/// `(deg a, minimal polynomial of a)` found by enumerating content-1
/// polynomials in order and returning the first irreducible annihilator
/// with positive leading coefficient.  `budget` caps the number of
/// candidates examined.
pub fn deg_enumerate(view: &EvaluationView<'_>, budget: u64) -> Result<(usize, IntPolynomial)> {
    deg_enumerate_counted(view, budget).map(|(d, p, _)| (d, p))
}

/// [`deg_enumerate`] that also reports how many candidates were examined.
pub fn deg_enumerate_counted(view: &EvaluationView<'_>, budget: u64) -> Result<(usize, IntPolynomial, u64)> {
    let mut filter = view.filter();
    let mut e = Content1Enumerator::new();
    for n in 1..=budget {
        let cs = e.next_coeffs();
        if *cs.last().expect("nonconstant") < 0 {
            continue;
        }
        if let Some(f) = filter.as_mut() {
            if !f.may_vanish(&cs) {
                continue;
            }
        }
        let p = IntPolynomial::from_i64s(&cs);
        if !view.is_root(&p) {
            continue;
        }
        if kronecker_irreducible(&p)?.is_irreducible() {
            return Ok((p.deg0(), p, n));
        }
    }
    Err(Error::BudgetExhausted(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{alg_nth_root, alg_root, RootSelector};
    use crate::arith::rat;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn degrees_of_examples() {
        let s = alg_nth_root(&rat(2, 1), 2).unwrap();
        assert_eq!(deg_enumerate(&EvaluationView::new(&s), 100_000).unwrap(), (2, ip(&[-2, 0, 1])));
        let q = AlgebraicNumber::from_rational(rat(7, 3));
        assert_eq!(deg_enumerate(&EvaluationView::new(&q), 100_000).unwrap(), (1, ip(&[-7, 3])));
        let c = alg_nth_root(&rat(2, 1), 3).unwrap().add_rational(&rat(1, 1));
        assert_eq!(deg_enumerate(&EvaluationView::new(&c), 100_000).unwrap(), (3, ip(&[-3, 3, -3, 1])));
    }

    #[test]
    fn filter_agrees_with_exact_test() {
        let a = alg_root(&ip(&[-1, -1, 0, 1]), &RootSelector::Index(0)).unwrap().add_rational(&rat(1, 2));
        let view = EvaluationView::new(&a);
        let mut f = view.filter().unwrap();
        let mut e = Content1Enumerator::new();
        for _ in 0..3000 {
            let cs = e.next_coeffs();
            let exact = view.is_root(&IntPolynomial::from_i64s(&cs));
            assert!(!exact || f.may_vanish(&cs));
            if f.may_vanish(&cs) {
                assert!(exact, "{cs:?}");
            }
        }
    }

    #[test]
    fn small_budget_is_undecided() {
        let s = alg_nth_root(&rat(2, 1), 2).unwrap();
        assert_eq!(deg_enumerate(&EvaluationView::new(&s), 3), Err(Error::BudgetExhausted(3)));
    }
}
