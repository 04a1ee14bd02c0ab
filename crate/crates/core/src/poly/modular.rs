//! Factor-degree sieve from factorizations modulo small primes.
//!
//! If `p` has a rational factor of degree `k` and a prime `q` divides
//! neither the leading coefficient nor the discriminant, then `k` is a sum
//! of degrees of irreducible factors of `p mod q`.  Intersecting those
//! subset sums over several primes bounds the possible factor degrees; when
//! only `0` and `deg p` survive, `p` is irreducible.

use num_traits::{ToPrimitive, Zero};

use super::IntPolynomial;
use crate::arith::Integer;

/// Primes tried before giving up on narrowing further.
const SIEVE_PRIMES: usize = 24;
const PRIME_LIMIT: u64 = 2000;

type Poly = Vec<u64>;

/// `allowed[k]` is false only when no rational factor of degree `k` can
/// exist.  `allowed[0]` and `allowed[deg p]` are always true.
pub fn factor_degree_sieve(p: &IntPolynomial) -> Vec<bool> {
    let n = p.deg0();
    let mut allowed = vec![true; n + 1];
    if n < 2 {
        return allowed;
    }
    let mut used = 0;
    let mut q = 2u64;
    while used < SIEVE_PRIMES && q < PRIME_LIMIT {
        q = next_prime(q);
        let Some(degrees) = factor_degrees_mod(p, q) else {
            continue;
        };
        used += 1;
        let sums = subset_sums(&degrees, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if allowed[1..n].iter().all(|a| !a) {
            break;
        }
    }
    allowed
}

/// True when the sieve alone proves `p` irreducible.
pub fn irreducible_by_reduction(p: &IntPolynomial) -> bool {
    let s = factor_degree_sieve(p);
    s.len() > 2 && s[1..s.len() - 1].iter().all(|a| !a)
}

fn next_prime(after: u64) -> u64 {
    let mut c = after + 1;
    while !(2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
        c += 1;
    }
    c
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in degrees {
        for t in (d..=n).rev() {
            if s[t - d] {
                s[t] = true;
            }
        }
    }
    s
}

/// Degrees of the irreducible factors of `p mod q`, or `None` when `q`
/// divides the leading coefficient or `p mod q` is not square-free.
fn factor_degrees_mod(p: &IntPolynomial, q: u64) -> Option<Vec<usize>> {
    let qi = Integer::from(q);
    let f: Poly = p
        .coeffs()
        .iter()
        .map(|c| {
            let r = c % &qi;
            let r = if r < Integer::zero() { r + &qi } else { r };
            r.to_u64().expect("residue fits")
        })
        .collect();
    let f = trimmed(f);
    if f.len() != p.coeffs().len() {
        return None;
    }
    let f = monic(&f, q);
    let df = trimmed(derivative(&f, q));
    if df.is_empty() || gcd(&f, &df, q).len() != 1 {
        return None;
    }
    Some(distinct_degree(f, q))
}

/// Distinct-degree factorization: the degree of every irreducible factor
/// of a monic square-free `f`.
fn distinct_degree(mut f: Poly, q: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while 2 * d <= deg(&f) {
        h = powmod(&h, q, &f, q);
        let g = gcd(&f, &sub(&h, &x, q), q);
        let dg = deg(&g);
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, dg / d));
            f = divide(&f, &g, q);
            h = rem(&h, &f, q);
        }
        d += 1;
    }
    if deg(&f) > 0 {
        out.push(deg(&f));
    }
    out
}

fn trimmed(mut v: Poly) -> Poly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn deg(f: &Poly) -> usize {
    f.len().saturating_sub(1)
}

fn mulm(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inv(a: u64, q: u64) -> u64 {
    let (mut base, mut e, mut r) = (a % q, q - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, base, q);
        }
        base = mulm(base, base, q);
        e >>= 1;
    }
    r
}

fn monic(f: &Poly, q: u64) -> Poly {
    let li = inv(*f.last().expect("nonzero"), q);
    f.iter().map(|c| mulm(*c, li, q)).collect()
}

fn derivative(f: &Poly, q: u64) -> Poly {
    f.iter().enumerate().skip(1).map(|(i, c)| mulm(*c, i as u64 % q, q)).collect()
}

fn sub(a: &Poly, b: &Poly, q: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let (x, y) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
            (x + q - y) % q
        })
        .collect();
    trimmed(out)
}

/// Quotient and remainder by a nonzero `b`.
fn divmod(a: &Poly, b: &Poly, q: u64) -> (Poly, Poly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let li = inv(*b.last().expect("nonzero divisor"), q);
    let mut quo = vec![0; r.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let c = mulm(r[i + b.len() - 1], li, q);
        quo[i] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + q - mulm(c, *bj, q)) % q;
            }
        }
    }
    (trimmed(quo), trimmed(r))
}

fn rem(a: &Poly, b: &Poly, q: u64) -> Poly {
    divmod(a, b, q).1
}

fn divide(a: &Poly, b: &Poly, q: u64) -> Poly {
    divmod(a, b, q).0
}

fn gcd(a: &Poly, b: &Poly, q: u64) -> Poly {
    let (mut a, mut b) = (trimmed(a.clone()), trimmed(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, q)
    }
}

fn mulmod(a: &Poly, b: &Poly, f: &Poly, q: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulm(*x, *y, q)) % q;
        }
    }
    rem(&trimmed(prod), f, q)
}

fn powmod(base: &Poly, mut e: u64, f: &Poly, q: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, f, q);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, q);
        }
        b = mulmod(&b, &b, f, q);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn degrees_mod_small_primes() {
        // X^2 + 1 splits mod 5 and stays irreducible mod 3.
        assert_eq!(factor_degrees_mod(&ip(&[1, 0, 1]), 5), Some(vec![1, 1]));
        assert_eq!(factor_degrees_mod(&ip(&[1, 0, 1]), 3), Some(vec![2]));
        // Not square-free mod 2.
        assert_eq!(factor_degrees_mod(&ip(&[1, 0, 1]), 2), None);
        // Leading coefficient vanishes mod 3.
        assert_eq!(factor_degrees_mod(&ip(&[1, 1, 3]), 3), None);
    }

    #[test]
    fn sieve_certifies_and_keeps_true_degrees() {
        assert!(irreducible_by_reduction(&ip(&[-2, 0, 0, 1])));
        assert!(irreducible_by_reduction(&ip(&[-1, -1, 0, 0, 0, 1])));
        // (X^2 - 2)(X^3 - 3): degrees 2 and 3 must survive.
        let p = &ip(&[-2, 0, 1]) * &ip(&[-3, 0, 0, 1]);
        let s = factor_degree_sieve(&p);
        assert!(s[2] && s[3]);
        assert!(!irreducible_by_reduction(&p));
        // X^4 + 1 factors modulo every prime yet is irreducible: the sieve
        // cannot decide it, which is allowed.
        assert!(!irreducible_by_reduction(&ip(&[1, 0, 0, 0, 1])));
    }
}
