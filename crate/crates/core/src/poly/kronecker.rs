//! Kronecker's divisor search over the integers.
//!
//! A divisor `g` of degree `k` is pinned down by its values at `k + 1`
//! integer nodes, and each value must divide the value of `p` there.  The
//! search walks those finitely many value tuples depth first, building the
//! Newton divided-difference table as it goes: every entry of the table of
//! an integer polynomial is an integer and bounded in size, which prunes
//! most branches early.  The last node's value is solved for from the
//! leading coefficient, which must divide that of `p`.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::factor_degree_sieve;
use super::{content_primitive, IntPolynomial};
use crate::arith::{divisors_from_factors, try_factorize, Integer};
use crate::error::{Error, Result};

const NODE_POOL_EXTRA: usize = 4;
const NODE_POOL_MAX: usize = 48;
const TRIAL_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial divisor with positive leading coefficient.
    Reducible(IntPolynomial),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Decides irreducibility over the integers (equivalently the rationals)
/// of a nonconstant polynomial of content 1.
pub fn kronecker_irreducible(p: &IntPolynomial) -> Result<Irreducibility> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::InvalidArgument(format!("constant polynomial {p}"))),
        Some(n) => n,
    };
    if !p.content().is_one() {
        return Err(Error::InvalidArgument(format!("content of {p} is not 1")));
    }
    let p = if p.leading().unwrap().is_negative() { -p } else { p.clone() };
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let allowed = factor_degree_sieve(&p);
    for k in (1..=n / 2).filter(|&k| allowed[k] || allowed[n - k]) {
        if let Some(g) = find_divisor(&p, k) {
            return Ok(Irreducibility::Reducible(g));
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// The irreducible factor of the square-free primitive `p` that `owns`
/// accepts, assuming exactly one irreducible factor is accepted and that
/// `owns` is inherited by every divisor containing that factor.
pub fn owning_factor(p: &IntPolynomial, owns: &mut dyn FnMut(&IntPolynomial) -> bool) -> IntPolynomial {
    let mut rest = p.primitive();
    let mut allowed = factor_degree_sieve(&rest);
    let mut k = 1;
    while k <= rest.deg0() / 2 {
        let n = rest.deg0();
        if !(allowed[k] || allowed[n - k]) {
            k += 1;
            continue;
        }
        match find_divisor(&rest, k) {
            Some(g) => {
                if owns(&g) {
                    // Smallest degree divisor holding the root: irreducible.
                    return g;
                }
                rest = rest.div_exact(&g).expect("divisor").primitive();
                allowed = factor_degree_sieve(&rest);
            }
            None => k += 1,
        }
    }
    rest
}

/// Some divisor of degree exactly `k` of the primitive `p`, positive
/// leading coefficient, or `None` if there is none.
pub fn find_divisor(p: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    let n = p.deg0();
    assert!(k >= 1 && k < n.max(2), "divisor degree out of range");
    // Zeros at integer nodes expose linear factors directly.
    let mut pool: Vec<Node> = Vec::new();
    let mut idx = 0i64;
    while pool.len() < k + 1 + NODE_POOL_EXTRA && idx < NODE_POOL_MAX as i64 {
        let x = node_at(idx);
        idx += 1;
        let v = p.eval_int(&Integer::from(x));
        if Zero::is_zero(&v) {
            let lin = IntPolynomial::from_i64s(&[-x, 1]);
            if k == 1 {
                return Some(lin);
            }
            let q = p.div_exact(&lin).expect("root");
            return find_divisor_with(&q, k - 1).map(|h| &h * &lin).or_else(|| {
                // p = lin * q; a degree-k divisor of p not through lin divides q.
                (q.deg0() > k).then(|| find_divisor(&q, k)).flatten()
            });
        }
        let Some(f) = try_factorize(&v, TRIAL_LIMIT) else {
            continue;
        };
        pool.push(Node { x, value: v, divisors: divisors_from_factors(&f) });
    }
    if pool.len() < k + 1 {
        return brute_divisor(p, k);
    }
    search(p, k, pool)
}

/// A divisor of degree `k` of `q`, any if several exist; degree 0 is the
/// constant 1.
fn find_divisor_with(q: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    if k == 0 {
        return Some(IntPolynomial::one());
    }
    if k >= q.deg0() {
        return (k == q.deg0()).then(|| q.primitive());
    }
    find_divisor(q, k)
}

fn node_at(i: i64) -> i64 {
    if i == 0 {
        0
    } else if i % 2 == 1 {
        (i + 1) / 2
    } else {
        -(i / 2)
    }
}

struct Node {
    x: i64,
    value: Integer,
    divisors: Vec<Integer>,
}

fn search(p: &IntPolynomial, k: usize, mut pool: Vec<Node>) -> Option<IntPolynomial> {
    // Fewest divisors first; the stable sort keeps node order on ties.
    pool.sort_by_key(|nd| nd.divisors.len());
    let filters: Vec<Node> = pool.split_off(k + 1);
    let chosen = pool;

    let lc = p.leading().unwrap().abs();
    let lcs = try_factorize(&lc, TRIAL_LIMIT).map(|f| divisors_from_factors(&f));

    // Landau-Mignotte: every coefficient of a degree-k divisor is at most
    // 2^k * ||p||_2 in absolute value.
    let norm2 = p.coeffs().iter().map(|c| c * c).fold(Integer::zero(), |a, b| a + b).sqrt() + 1;
    let cbound: Integer = norm2 << k;
    let xs: Vec<Integer> = chosen.iter().map(|nd| Integer::from(nd.x)).collect();
    let newton_bounds: Vec<Integer> = (0..=k)
        .map(|t| {
            let abs: Vec<Integer> = xs[..=t].iter().map(|x| x.abs()).collect();
            let s: Integer = (0..=k - t).map(|e| complete_homogeneous(&abs, e)).sum();
            &cbound * s
        })
        .collect();
    let value_bounds: Vec<Integer> = xs
        .iter()
        .map(|x| {
            let ax = x.abs();
            let mut s = Integer::zero();
            let mut pw = Integer::one();
            for _ in 0..=k {
                s += &pw;
                pw *= &ax;
            }
            &cbound * s
        })
        .collect();

    let spec = SearchSpec {
        k,
        xs,
        values: chosen.iter().map(|nd| nd.value.clone()).collect(),
        candidates: chosen
            .iter()
            .enumerate()
            .map(|(j, nd)| {
                let pos = nd.divisors.iter().filter(|d| **d <= value_bounds[j]);
                if j == 0 {
                    pos.cloned().collect()
                } else {
                    pos.flat_map(|d| [d.clone(), -d.clone()]).collect()
                }
            })
            .collect(),
        lcs: lcs.map(|v| v.into_iter().flat_map(|d| [d.clone(), -d]).collect()),
        lc,
        newton_bounds,
        filters: filters.iter().map(|nd| (Integer::from(nd.x), nd.value.clone())).collect(),
    };
    match run_search::<i128>(&spec, p) {
        Ok(found) => found,
        Err(Overflow) => run_search::<Integer>(&spec, p).unwrap_or(None),
    }
}

/// Sum of all monomials of total degree `e` in `xs`.
fn complete_homogeneous(xs: &[Integer], e: usize) -> Integer {
    // h_e(x_1..x_m) via the recurrence over variables.
    let mut h = vec![Integer::zero(); e + 1];
    h[0] = Integer::one();
    for x in xs {
        for d in 1..=e {
            let prev = h[d - 1].clone();
            h[d] += prev * x;
        }
    }
    h[e].clone()
}

/// Exhaustive fallback when too few nodes could be factored: candidate
/// divisors by coefficient bound, only reachable for huge values.
fn brute_divisor(p: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    let norm2 = p.coeffs().iter().map(|c| c * c).fold(Integer::zero(), |a, b| a + b).sqrt() + 1;
    let shifted: Integer = norm2 << k;
    let bound = shifted.to_i64().unwrap_or(i64::MAX);
    let mut coeffs = vec![-bound; k + 1];
    coeffs[k] = 1;
    loop {
        let g = IntPolynomial::from_i64s(&coeffs);
        if g.degree() == Some(k) && g.content().is_one() && p.div_exact(&g).is_some() {
            return Some(g);
        }
        let mut i = 0;
        loop {
            if i > k {
                return None;
            }
            if coeffs[i] < bound {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = if i == k { 1 } else { -bound };
            i += 1;
        }
    }
}

struct SearchSpec {
    k: usize,
    xs: Vec<Integer>,
    values: Vec<Integer>,
    candidates: Vec<Vec<Integer>>,
    lcs: Option<Vec<Integer>>,
    lc: Integer,
    newton_bounds: Vec<Integer>,
    filters: Vec<(Integer, Integer)>,
}

#[derive(Debug)]
struct Overflow;

trait Num: Clone + PartialEq + Sized {
    fn lift(v: &Integer) -> Result<Self, Overflow>;
    fn lower(&self) -> Integer;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    /// Exact quotient, or `None` when `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn divides(&self, o: &Self) -> bool;
    fn abs_gt(&self, o: &Self) -> bool;
}

impl Num for i128 {
    fn lift(v: &Integer) -> Result<Self, Overflow> {
        v.to_i128().filter(|x| x.unsigned_abs() < 1u128 << 120).ok_or(Overflow)
    }
    fn lower(&self) -> Integer {
        Integer::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (self % o == 0).then(|| self / o)
    }
    fn divides(&self, o: &Self) -> bool {
        o % self == 0
    }
    fn abs_gt(&self, o: &Self) -> bool {
        self.unsigned_abs() > o.unsigned_abs()
    }
}

impl Num for Integer {
    fn lift(v: &Integer) -> Result<Self, Overflow> {
        Ok(v.clone())
    }
    fn lower(&self) -> Integer {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn divides(&self, o: &Self) -> bool {
        o.is_multiple_of(self)
    }
    fn abs_gt(&self, o: &Self) -> bool {
        self.abs() > o.abs()
    }
}

struct Lifted<N> {
    k: usize,
    xs: Vec<N>,
    values: Vec<N>,
    candidates: Vec<Vec<N>>,
    lcs: Option<Vec<N>>,
    lc: N,
    newton_bounds: Vec<N>,
    filters: Vec<(N, N)>,
}

fn lift_all<N: Num>(v: &[Integer]) -> Result<Vec<N>, Overflow> {
    v.iter().map(N::lift).collect()
}

fn run_search<N: Num>(spec: &SearchSpec, p: &IntPolynomial) -> Result<Option<IntPolynomial>, Overflow> {
    let lifted = Lifted {
        k: spec.k,
        xs: lift_all(&spec.xs)?,
        values: lift_all(&spec.values)?,
        candidates: spec.candidates.iter().map(|c| lift_all(c)).collect::<Result<_, _>>()?,
        lcs: spec.lcs.as_ref().map(|l| lift_all(l)).transpose()?,
        lc: N::lift(&spec.lc)?,
        newton_bounds: spec
            .newton_bounds
            .iter()
            .map(|b| N::lift(b).or_else(|_| N::lift(&(Integer::one() << 119))))
            .collect::<Result<_, _>>()?,
        filters: spec.filters.iter().filter_map(|(x, v)| Some((N::lift(x).ok()?, N::lift(v).ok()?))).collect(),
    };
    let mut rows: Vec<Vec<N>> = Vec::with_capacity(spec.k + 1);
    dfs(&lifted, p, &mut rows)
}

fn dfs<N: Num>(s: &Lifted<N>, p: &IntPolynomial, rows: &mut Vec<Vec<N>>) -> Result<Option<IntPolynomial>, Overflow> {
    let j = rows.len();
    if j == s.k {
        return close(s, p, rows);
    }
    'cand: for z in &s.candidates[j] {
        let mut row = Vec::with_capacity(j + 1);
        row.push(z.clone());
        for t in 1..=j {
            let num = row[t - 1].sub(&rows[j - 1][t - 1])?;
            let den = s.xs[j].sub(&s.xs[j - t])?;
            match num.div_exact(&den) {
                Some(q) => row.push(q),
                None => continue 'cand,
            }
        }
        if row[j].abs_gt(&s.newton_bounds[j]) {
            continue;
        }
        rows.push(row);
        let found = dfs(s, p, rows)?;
        rows.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Completes the table at the last node, then checks filters and divides.
fn close<N: Num>(s: &Lifted<N>, p: &IntPolynomial, rows: &[Vec<N>]) -> Result<Option<IntPolynomial>, Overflow> {
    let k = s.k;
    let mut tops: Vec<(N, N)> = Vec::new();
    match &s.lcs {
        Some(lcs) => {
            for l in lcs {
                // Walk the last row of the table backwards from its top.
                let mut v = l.clone();
                for t in (1..=k).rev() {
                    v = v.mul(&s.xs[k].sub(&s.xs[k - t])?)?.add(&rows[k - 1][t - 1])?;
                }
                if !v.is_zero() && v.divides(&s.values[k]) {
                    tops.push((l.clone(), v));
                }
            }
        }
        None => {
            'cand: for z in &s.candidates[k] {
                let mut cur = z.clone();
                for t in 1..=k {
                    let num = cur.sub(&rows[k - 1][t - 1])?;
                    let den = s.xs[k].sub(&s.xs[k - t])?;
                    match num.div_exact(&den) {
                        Some(q) => cur = q,
                        None => continue 'cand,
                    }
                }
                if !cur.is_zero() && cur.divides(&s.lc) {
                    tops.push((cur, z.clone()));
                }
            }
        }
    }
    for (top, _) in tops {
        let mut newton: Vec<N> = (0..k).map(|t| rows[t][t].clone()).collect();
        newton.push(top);
        let mut ok = true;
        for (fx, fv) in &s.filters {
            let mut acc = newton[k].clone();
            for t in (0..k).rev() {
                acc = acc.mul(&fx.sub(&s.xs[t])?)?.add(&newton[t])?;
            }
            if acc.is_zero() || !acc.divides(fv) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut g = IntPolynomial::constant(newton[k].lower());
        for t in (0..k).rev() {
            let lin = IntPolynomial::new(vec![-s.xs[t].lower(), Integer::one()]);
            g = &(&g * &lin) + &IntPolynomial::constant(newton[t].lower());
        }
        if g.degree() == Some(k) && p.div_exact(&g).is_some() {
            return Ok(Some(content_primitive(&g).expect("nonzero").1));
        }
    }
    Ok(None)
}
