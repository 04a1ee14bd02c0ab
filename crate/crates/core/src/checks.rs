//! Property and oracle suites behind `bss check` and the acceptance target.
//!
//! Every suite compares library results against an independent oracle:
//! a closed-form construction, a brute-force search, or an exact identity.
//! Output is one line per check, `PASS|FAIL <suite>.<case> <detail>`, and
//! is byte-identical for identical suite and seed.

use std::fmt;

use num_integer::{Integer as _, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebraic::{
    alg_cmp, alg_eq, alg_eval_poly, alg_nth_root, alg_root, approximate_with_degree, besicovitch_degree,
    deg_enumerate_counted, AlgebraicNumber, EvaluationView, PrimeRootGenerator, RootSelector,
};
use crate::arith::{
    factorize, format_rational, int, p_power_exponent, qp_member, rat, tilde_qp_construct, Integer, PrimeSet, Rational,
};
use crate::error::{Error, Result};
use crate::machine::{
    parse_program, replay_branches, run, run_with, symbolic_run, validate_program, BssProgram, Mode, Observation,
    OracleSpec, PathConstraint, RunOptions, RunStatus,
};
use crate::poly::recovery::recover_generic;
use crate::poly::{
    degree_bound_d, kronecker_irreducible, recover_rational_function, IntPolynomial, RatPolynomial, RationalFunction,
    RecoveryInstance,
};
use crate::problems::{
    equiv_a2, reduce_q_to_a, reduce_q_to_a_machine, reduce_q_to_sq_full, reduce_sq_to_q_linear, semidecide_a,
    semidecide_q, semidecide_root_field, semidecide_sq, separation_demo, shipped_program, A2Direction, Certificate,
    SeparationMode,
};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}.{}", self.suite, self.case)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteInfo {
    pub name: &'static str,
    /// Needs an explicit seed.
    pub randomized: bool,
    pub about: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo { name: "degree", randomized: true, about: "blind degree search on a corpus of degree <= 5" },
    SuiteInfo { name: "kronecker", randomized: true, about: "irreducibility against exhaustive factor search" },
    SuiteInfo { name: "recovery", randomized: true, about: "rational function recovery from exact samples" },
    SuiteInfo { name: "degree-bound", randomized: true, about: "high-degree inputs leave the rationals" },
    SuiteInfo { name: "besicovitch", randomized: false, about: "degrees of prime root fields" },
    SuiteInfo { name: "density", randomized: false, about: "degree-N and ~Q_p approximations" },
    SuiteInfo { name: "reductions", randomized: true, about: "oracle reductions against direct membership" },
    SuiteInfo { name: "separation-full", randomized: false, about: "rationals-oracle witnesses" },
    SuiteInfo { name: "separation-linear", randomized: false, about: "squares-oracle witnesses for linear machines" },
    SuiteInfo { name: "vm", randomized: true, about: "golden traces, branch replay, symbolic agreement" },
    SuiteInfo { name: "semidecide", randomized: false, about: "semi-decider certificates and divergence" },
];

pub fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs one suite.  Failures inside a case become `FAIL` lines; only an
/// unknown suite or a missing seed is an error.
pub fn run_suite(name: &str, seed: Option<u64>) -> Result<Vec<CheckLine>> {
    let info = suite_info(name).ok_or_else(|| Error::UnknownId(format!("suite `{name}`")))?;
    if info.randomized && seed.is_none() {
        return Err(Error::InvalidArgument(format!("suite `{name}` is randomized and needs a seed")));
    }
    let seed = seed.unwrap_or(0);
    let mut out = Lines { suite: info.name, lines: Vec::new() };
    match info.name {
        "degree" => degree_suite(&mut out, seed),
        "kronecker" => kronecker_suite(&mut out, seed),
        "recovery" => recovery_suite(&mut out, seed),
        "degree-bound" => degree_bound_suite(&mut out, seed),
        "besicovitch" => besicovitch_suite(&mut out),
        "density" => density_suite(&mut out),
        "reductions" => reductions_suite(&mut out, seed),
        "separation-full" => separation_full_suite(&mut out),
        "separation-linear" => separation_linear_suite(&mut out),
        "vm" => vm_suite(&mut out, seed),
        "semidecide" => semidecide_suite(&mut out),
        _ => unreachable!("listed suite"),
    }
    Ok(out.lines)
}

struct Lines {
    suite: &'static str,
    lines: Vec<CheckLine>,
}

impl Lines {
    fn record(&mut self, case: impl Into<String>, outcome: Result<(bool, String)>) {
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.lines.push(CheckLine { suite: self.suite, case: case.into(), pass, detail });
    }

    /// One `FAIL` line per failing case, then a summary line for the group.
    fn tally(&mut self, group: &str, cases: impl IntoIterator<Item = (String, Result<(bool, String)>)>, note: &str) {
        let mut total = 0;
        let mut failed = 0;
        for (label, outcome) in cases {
            total += 1;
            match outcome {
                Ok((true, _)) => {}
                other => {
                    failed += 1;
                    self.record(format!("{group}:{label}"), other);
                }
            }
        }
        let detail =
            if failed == 0 { format!("{total} cases{note}") } else { format!("{failed} of {total} cases failed") };
        self.record(group, Ok((failed == 0, detail)));
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(r.gen_range(-num..=num), r.gen_range(1..=den))
}

fn same_up_to_sign(a: &IntPolynomial, b: &IntPolynomial) -> bool {
    a == b || a == &-b
}

// ---------------------------------------------------------------- corpus

/// An algebraic number together with the minimal polynomial implied by
/// its construction.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub value: AlgebraicNumber,
    pub minpoly: IntPolynomial,
}

impl CorpusEntry {
    pub fn degree(&self) -> usize {
        self.minpoly.deg0()
    }
}

/// `c3 r^3 + c2 r^2 s + c1 r s^2 + c0 s^3` for a cubic and `r/s`.
fn cubic_vanishes(cs: &[i64; 4], r: i64, s: i64) -> bool {
    cs[3] * r * r * r + cs[2] * r * r * s + cs[1] * r * s * s + cs[0] * s * s * s == 0
}

fn positive_divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// A cubic of content 1 without rational roots, hence irreducible.
fn random_irreducible_cubic(r: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let cs = [
            *[-2i64, -1, 1, 2].get(r.gen_range(0..4)).unwrap(),
            r.gen_range(-2..=2),
            r.gen_range(-2..=2),
            r.gen_range(1..=2),
        ];
        if cs.iter().fold(0i64, |g, c| g.gcd(c)) != 1 {
            continue;
        }
        let mut rational_root = false;
        for p in positive_divisors(cs[0]) {
            for q in positive_divisors(cs[3]) {
                rational_root |= cubic_vanishes(&cs, p, q) || cubic_vanishes(&cs, -p, q);
            }
        }
        if !rational_root {
            return cs;
        }
    }
}

/// At least 50 numbers of degree at most 5 whose minimal polynomials have
/// degree plus height at most 8: rationals, signed radicals, shifted roots
/// of 2, a few fixed quartics and quintics, and random cubics.
pub fn degree_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let rationals: &[(i64, i64)] = &[
        (0, 1),
        (1, 1),
        (-1, 1),
        (1, 2),
        (-3, 2),
        (2, 3),
        (5, 4),
        (-7, 3),
        (3, 1),
        (-4, 1),
        (4, 5),
        (7, 2),
        (-5, 3),
        (1, 3),
        (6, 5),
        (-7, 6),
        (5, 7),
    ];
    for &(a, b) in rationals {
        let x = rat(a, b);
        out.push(CorpusEntry {
            label: format_rational(&x),
            value: AlgebraicNumber::from_rational(x),
            minpoly: IntPolynomial::from_i64s(&[-a, b]),
        });
    }
    // (u, v, N, negate): +-(u/v)^(1/N) with minimal polynomial v X^N -+ u.
    let radicals: &[(i64, i64, u32, bool)] = &[
        (2, 1, 2, false),
        (3, 1, 2, false),
        (5, 1, 2, false),
        (6, 1, 2, false),
        (2, 1, 2, true),
        (1, 2, 2, false),
        (2, 3, 2, false),
        (3, 2, 2, false),
        (5, 4, 2, false),
        (2, 1, 3, false),
        (3, 1, 3, false),
        (5, 1, 3, false),
        (2, 1, 3, true),
        (1, 2, 3, false),
        (3, 2, 3, false),
        (3, 1, 3, true),
        (2, 1, 4, false),
        (3, 1, 4, false),
        (2, 1, 5, false),
        (3, 1, 5, false),
    ];
    for &(u, v, n, negate) in radicals {
        let root = alg_nth_root(&rat(u, v), n)?;
        let mut cs = vec![0i64; n as usize + 1];
        cs[n as usize] = v;
        cs[0] = if negate && n % 2 == 1 { u } else { -u };
        let base = if v == 1 { u.to_string() } else { format!("({u}/{v})") };
        out.push(CorpusEntry {
            label: format!("{}{base}^(1/{n})", if negate { "-" } else { "" }),
            value: if negate { root.neg() } else { root },
            minpoly: IntPolynomial::from_i64s(&cs),
        });
    }
    // r + 2^(1/N) with minimal polynomial (X - r)^N - 2.
    for &(r, n) in &[(1i64, 2u32), (-1, 2), (2, 2), (-2, 2), (1, 3), (-1, 3)] {
        let shifted = IntPolynomial::from_i64s(&[-r, 1]).pow(n);
        out.push(CorpusEntry {
            label: format!("{r}+2^(1/{n})"),
            value: alg_nth_root(&rat(2, 1), n)?.add_rational(&rat(r, 1)),
            minpoly: &shifted - &IntPolynomial::from_i64s(&[2]),
        });
    }
    // Irreducible by reduction mod 2 or by Eisenstein at 2.
    for (cs, k) in [
        (vec![-1i64, -1, 0, 0, 1], 1usize),
        (vec![-1, -1, 0, 0, 0, 1], 0),
        (vec![-2, 0, -2, 0, 1], 1),
        (vec![-2, -2, 0, 0, 0, 1], 0),
    ] {
        let p = IntPolynomial::from_i64s(&cs);
        out.push(CorpusEntry {
            label: format!("root{k}{p}"),
            value: alg_root(&p, &RootSelector::Index(k))?,
            minpoly: p,
        });
    }
    let mut r = rng(seed);
    let mut cubics: Vec<[i64; 4]> = Vec::new();
    while cubics.len() < 10 {
        let cs = random_irreducible_cubic(&mut r);
        if !cubics.contains(&cs) {
            cubics.push(cs);
        }
    }
    for cs in cubics {
        let p = IntPolynomial::from_i64s(&cs);
        out.push(CorpusEntry { label: format!("root0{p}"), value: alg_root(&p, &RootSelector::Index(0))?, minpoly: p });
    }
    for e in &mut out {
        e.label.retain(|c| c != ' ');
    }
    Ok(out)
}

// ------------------------------------------------------------ criterion 1

const DEGREE_SEARCH_BUDGET: u64 = 50_000_000;

fn degree_suite(out: &mut Lines, seed: u64) {
    let corpus = match degree_corpus(seed) {
        Ok(c) => c,
        Err(e) => return out.record("corpus", Err(e)),
    };
    out.record("corpus", Ok((corpus.len() >= 50, format!("{} numbers", corpus.len()))));
    for e in &corpus {
        let outcome = (|| {
            let stored = e.value.minpoly();
            let (d, found, examined) = deg_enumerate_counted(&EvaluationView::new(&e.value), DEGREE_SEARCH_BUDGET)?;
            let ok = same_up_to_sign(stored, &e.minpoly) && same_up_to_sign(&found, stored) && d == stored.deg0();
            Ok((ok, format!("deg={d} minpoly={} candidates={examined}", found.to_string().replace(' ', ""))))
        })();
        out.record(e.label.clone(), outcome);
    }
}

// ------------------------------------------------------------ criterion 2

/// `q` divides `p` over the integers, by long division.
fn divides_exactly(p: &[i128], q: &[i128]) -> bool {
    let k = q.len() - 1;
    let lead = q[k];
    let mut rem = p.to_vec();
    for top in (k..rem.len()).rev() {
        if rem[top] % lead != 0 {
            return false;
        }
        let f = rem[top] / lead;
        for (i, c) in q.iter().enumerate() {
            rem[top - k + i] -= f * c;
        }
    }
    rem.iter().all(|c| *c == 0)
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// True iff `p` (content 1) has a factor of degree `1..=deg/2`; searches
/// every integer candidate within the Mignotte bound.
fn exhaustive_reducible(p: &[i64]) -> bool {
    let n = p.len() - 1;
    if n < 2 {
        return false;
    }
    if p[0] == 0 {
        return true;
    }
    let p: Vec<i128> = p.iter().map(|&c| c as i128).collect();
    let norm = p.iter().map(|c| c * c).sum::<i128>().sqrt() + 1;
    for k in 1..=n / 2 {
        let bound = binomial(k, k / 2) * norm;
        let leads = positive_divisors(p[n] as i64);
        let lows = positive_divisors(p[0] as i64);
        let middle = k - 1;
        let span = (2 * bound + 1) as usize;
        let combos = span.pow(middle as u32);
        for &lead in &leads {
            for &low in &lows {
                for sign in [1i128, -1] {
                    for idx in 0..combos {
                        let mut q = vec![0i128; k + 1];
                        q[0] = sign * low as i128;
                        q[k] = lead as i128;
                        let mut rest = idx;
                        for c in q.iter_mut().take(k).skip(1) {
                            *c = (rest % span) as i128 - bound;
                            rest /= span;
                        }
                        if divides_exactly(&p, &q) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn kronecker_case(cs: &[i64]) -> Result<(bool, String)> {
    let p = IntPolynomial::from_i64s(cs);
    let expected = exhaustive_reducible(cs);
    let verdict = kronecker_irreducible(&p)?;
    let mut ok = verdict.is_irreducible() != expected;
    if let crate::poly::Irreducibility::Reducible(g) = &verdict {
        let gs: Vec<i128> = g.coeffs().iter().map(|c| c.to_i128().unwrap_or(0)).collect();
        let ps: Vec<i128> = cs.iter().map(|&c| c as i128).collect();
        ok &= g.deg0() >= 1 && g.deg0() < p.deg0() && divides_exactly(&ps, &gs);
    }
    Ok((ok, format!("{p} oracle={}", if expected { "reducible" } else { "irreducible" })))
}

fn content_one(cs: &[i64]) -> bool {
    cs.iter().fold(0i64, |g, c| g.gcd(c)) == 1
}

fn kronecker_suite(out: &mut Lines, seed: u64) {
    let mut full = Vec::new();
    for c2 in -5i64..=5 {
        for c1 in -5i64..=5 {
            for c0 in -5i64..=5 {
                if c2 != 0 && content_one(&[c0, c1, c2]) {
                    full.push(vec![c0, c1, c2]);
                }
            }
        }
    }
    let reducible = full.iter().filter(|cs| exhaustive_reducible(cs)).count();
    out.tally(
        "degree2-full",
        full.iter().map(|cs| (format!("{cs:?}").replace(' ', ""), kronecker_case(cs))),
        &format!(" agree, {reducible} reducible"),
    );
    let mut r = rng(seed);
    let mut sampled = Vec::new();
    while sampled.len() < 2000 {
        let n = r.gen_range(1..=4usize);
        let mut cs: Vec<i64> = (0..=n).map(|_| r.gen_range(-5..=5)).collect();
        if cs[n] == 0 || !content_one(&cs) {
            continue;
        }
        // Bias toward products so both verdicts are well represented.
        if n >= 2 && r.gen_bool(0.3) {
            let k = r.gen_range(1..=n / 2);
            let a: Vec<i64> = (0..=k).map(|_| r.gen_range(-2..=2)).collect();
            let b: Vec<i64> = (0..=n - k).map(|_| r.gen_range(-2..=2)).collect();
            let mut prod = vec![0i64; n + 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            if prod[n] == 0 || prod.iter().any(|c| c.abs() > 5) || !content_one(&prod) {
                continue;
            }
            cs = prod;
        }
        sampled.push(cs);
    }
    let reducible = sampled.iter().filter(|cs| exhaustive_reducible(cs)).count();
    out.tally(
        "sampled",
        sampled.iter().map(|cs| (format!("{cs:?}").replace(' ', ""), kronecker_case(cs))),
        &format!(" agree, {reducible} reducible"),
    );
}

// ------------------------------------------------------------ criterion 3

fn random_poly(r: &mut ChaCha8Rng, terms: usize) -> RatPolynomial {
    RatPolynomial::new((0..terms).map(|_| random_rational(r, 9, 4)).collect())
}

fn samples_for(p: &RatPolynomial, q: &RatPolynomial, count: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut a = 0i64;
    while points.len() < count {
        let x = rat(a, 1);
        let qa = q.eval(&x);
        if !qa.is_zero() {
            values.push(p.eval(&x) / qa);
            points.push(x);
        }
        a += 1;
    }
    (points, values)
}

fn recovery_case(r: &mut ChaCha8Rng) -> (String, Result<(bool, String)>) {
    let n = r.gen_range(1..=3usize);
    let m = r.gen_range(1..=3usize);
    let p = random_poly(r, n);
    let mut q = random_poly(r, m);
    while q.is_zero() {
        q = random_poly(r, m);
    }
    let mut lambda = random_rational(r, 9, 9);
    while lambda.is_zero() {
        lambda = random_rational(r, 9, 9);
    }
    let label = format!("n={n},m={m},p={p},q={q}").replace(' ', "");
    let outcome = (|| {
        let expected = RationalFunction::new(p.clone(), q.clone())?;
        let (points, values) = samples_for(&p, &q, n + m);
        let got = recover_rational_function(&RecoveryInstance::new(points.clone(), values, n, m)?)?;
        // Same function, stored as (lambda p, lambda q).
        let (lp, lq) = (p.scale(&lambda), q.scale(&lambda));
        let (_, scaled_values) = samples_for(&lp, &lq, n + m);
        let inst = RecoveryInstance::new(points, scaled_values, n, m)?;
        let scaled = recover_rational_function(&inst)?;
        let (gp, gq) = recover_generic(&inst)?;
        let cross = (got.numerator() * &q) == (&p * got.denominator());
        let monic = got.denominator().leading().is_some_and(One::is_one);
        let ok = got == expected
            && scaled == got
            && cross
            && monic
            && RatPolynomial::new(gp) == *got.numerator()
            && RatPolynomial::new(gq) == *got.denominator();
        Ok((ok, format!("f={got}")))
    })();
    (label, outcome)
}

fn recovery_suite(out: &mut Lines, seed: u64) {
    let mut r = rng(seed);
    let cases: Vec<_> = (0..250).map(|_| recovery_case(&mut r)).collect();
    out.tally("random", cases, " recovered exactly, scaled representations agree");
}

// ------------------------------------------------------------ criterion 4

/// Some prime `q` with `q | c_i` for `i < deg`, `q` not dividing the
/// leading coefficient and `q^2` not dividing `c_0`.
fn eisenstein_at(p: &IntPolynomial, q: i64) -> bool {
    let q = Integer::from(q);
    let cs = p.coeffs();
    let n = cs.len() - 1;
    n >= 1
        && !cs[n].is_multiple_of(&q)
        && cs[..n].iter().all(|c| c.is_multiple_of(&q))
        && !cs[0].is_multiple_of(&(&q * &q))
}

fn degree_bound_suite(out: &mut Lines, seed: u64) {
    let mut r = rng(seed);
    let mut k = 0;
    while k < 60 {
        let n = r.gen_range(1..=3usize);
        let m = r.gen_range(1..=3usize);
        let p = random_poly(&mut r, n);
        let q = random_poly(&mut r, m);
        let f = match RationalFunction::new(p.clone(), q.clone()) {
            Ok(f) if !f.is_constant() => f,
            _ => continue,
        };
        let bound = degree_bound_d(1, n as u64, m as u64).to_u32().unwrap_or(u32::MAX);
        let degree = bound + 1 + (k % 2);
        let x0 = random_rational(&mut r, 20, 7);
        let eps = rat(1, 1000);
        let outcome = (|| {
            let a = approximate_with_degree(&x0, degree, &eps)?;
            let fa = a.eval_rat_poly(&p).div(&a.eval_rat_poly(&q))?;
            // Coordinates in the basis 1, g, ..., g^(k-1) of a field whose
            // generator is certified irreducible by Eisenstein at 2; a
            // nonconstant coordinate vector means an irrational value.
            let certified = match fa.field() {
                Some((g, coords)) => eisenstein_at(g.minpoly(), 2) && coords.deg0() >= 1 && coords.deg0() < g.degree(),
                None => false,
            };
            let ok = a.degree() == degree as usize && degree > bound && certified && fa.degree() > 1;
            Ok((ok, format!("D={bound} deg(a)={} deg(f(a))={}", a.degree(), fa.degree())))
        })();
        out.record(format!("{k}:f={f}").replace(' ', ""), outcome);
        k += 1;
    }
}

// ------------------------------------------------------------ criterion 5

fn besicovitch_suite(out: &mut Lines) {
    for p in [2i64, 3, 5] {
        for n in 1..=6u32 {
            let outcome = (|| {
                let formula = besicovitch_degree(&[PrimeRootGenerator::new(int(p), n.into())?])?;
                let root = alg_nth_root(&rat(p, 1), n)?;
                let mut cs = vec![0i64; n as usize + 1];
                cs[0] = -p;
                cs[n as usize] = 1;
                let ok = formula == u64::from(n)
                    && root.degree() == n as usize
                    && root.minpoly() == &IntPolynomial::from_i64s(&cs);
                Ok((ok, format!("formula={formula} deg={}", root.degree())))
            })();
            out.record(format!("root:{p}^(1/{n})"), outcome);
        }
    }
    for p in [2i64, 3, 5] {
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                let outcome = (|| {
                    let top = alg_nth_root(&rat(p, 1), a * b)?;
                    let mid = top.pow(b);
                    let direct = alg_nth_root(&rat(p, 1), a)?;
                    let ok = top.degree() == (a * b) as usize
                        && mid.degree() == a as usize
                        && alg_eq(&mid, &direct)
                        && top.degree() / mid.degree() == b as usize;
                    Ok((
                        ok,
                        format!(
                            "[top:Q]={} [mid:Q]={} [top:mid]={}",
                            top.degree(),
                            mid.degree(),
                            top.degree() / mid.degree()
                        ),
                    ))
                })();
                out.record(format!("tower:{p},a={a},b={b}"), outcome);
            }
        }
    }
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let outcome = (|| {
                let formula = besicovitch_degree(&[
                    PrimeRootGenerator::new(int(2), a.into())?,
                    PrimeRootGenerator::new(int(3), b.into())?,
                ])?;
                let sum = alg_nth_root(&rat(2, 1), a)?.add(&alg_nth_root(&rat(3, 1), b)?)?;
                Ok((
                    formula == u64::from(a * b) && sum.degree() as u64 == formula,
                    format!("formula={formula} deg(sum)={}", sum.degree()),
                ))
            })();
            out.record(format!("joint:2^(1/{a})+3^(1/{b})"), outcome);
        }
    }
}

// ------------------------------------------------------------ criterion 6

fn is_rational_square_brute(x: &Rational) -> bool {
    let perfect = |n: &Integer| {
        let s = n.sqrt();
        &s * &s == *n
    };
    !x.is_negative() && perfect(x.numer()) && perfect(x.denom())
}

fn density_suite(out: &mut Lines) {
    let grid = (0..60i64).map(|i| {
        let x = rat(7 * i - 211, 13);
        let n = 1 + (i % 5) as u32;
        let eps = Rational::new(Integer::one(), Integer::from(10).pow(1 + (i % 4) as u32));
        let outcome = (|| {
            let a = approximate_with_degree(&x, n, &eps)?;
            let diff = a.sub(&AlgebraicNumber::from_rational(x.clone()))?;
            let dist = if diff.sign() < 0 { diff.neg() } else { diff };
            let within = alg_cmp(&dist, &AlgebraicNumber::from_rational(eps.clone()))? != std::cmp::Ordering::Greater;
            Ok((a.degree() == n as usize && within, String::new()))
        })();
        (format!("x={},N={n},eps={}", format_rational(&x), format_rational(&eps)), outcome)
    });
    out.tally("approximate-with-degree", grid.collect::<Vec<_>>(), ", degree exact and within eps");
    let mut cases = Vec::new();
    for p in [2i64, 3, 5] {
        let pp = int(p);
        let ps = PrimeSet::new([pp.clone()]).expect("prime");
        for l in 0..=4u32 {
            for n in 0..=4u32 {
                for t in -50i64..=50 {
                    let y = Rational::new(Integer::from(t), pp.pow(l));
                    let outcome = (|| {
                        let z = tilde_qp_construct(&pp, &y, n)?;
                        let reduced_l = p_power_exponent(&y, &pp).expect("power of p");
                        let expected = Rational::new(Integer::one(), pp.pow(2 * n + 2 * reduced_l + 1));
                        let ok = (&z - &y).abs() == expected && qp_member(&z, &ps) && !is_rational_square_brute(&z);
                        Ok((ok, format!("z={}", format_rational(&z))))
                    })();
                    cases.push((format!("p={p},l={l},n={n},t={t}"), outcome));
                }
            }
        }
    }
    out.tally("tilde-qp", cases, ", error identity exact, in Q_P, not a square");
}

// ------------------------------------------------------------ criterion 7

const REDUCTION_BUDGET: u64 = 100_000_000;

fn reductions_suite(out: &mut Lines, seed: u64) {
    let corpus = match degree_corpus(seed) {
        Ok(c) => c,
        Err(e) => return out.record("corpus", Err(e)),
    };
    for e in &corpus {
        let rational = e.degree() == 1;
        let outcome = (|| {
            let native = reduce_q_to_a(&e.value, REDUCTION_BUDGET)?;
            let machine = reduce_q_to_a_machine(&e.value, REDUCTION_BUDGET)?;
            let ok = native.accepted == rational
                && machine.accepted == rational
                && native.replay(REDUCTION_BUDGET)?
                && machine.queries.iter().all(|q| q.answer);
            Ok((
                ok,
                format!("native={} machine={} steps={}", native.summary(), machine.verdict(), machine.steps)
                    .replace(": ", ":"),
            ))
        })();
        out.record(format!("q-from-a:{}", e.label), outcome);
    }
    out.tally(
        "q-from-sq",
        corpus.iter().map(|e| {
            let outcome = (|| {
                let rep = reduce_q_to_sq_full(&e.value, REDUCTION_BUDGET)?;
                Ok((rep.accepted == (e.degree() == 1) && rep.replay(REDUCTION_BUDGET)?, String::new()))
            })();
            (e.label.clone(), outcome)
        }),
        " on the corpus",
    );
    out.record(
        "sq-from-q:linear-validation",
        shipped_program("sq_to_q")
            .and_then(|p| validate_program(&p, Mode::Linear).map(|_| (p.mode == Mode::Linear, "sq_to_q".into()))),
    );
    let mut grid: Vec<Rational> = Vec::new();
    for s in 1..=30i64 {
        for r in -30i64..=30 {
            let x = rat(r, s);
            if !grid.contains(&x) {
                grid.push(x);
            }
        }
    }
    let grid_len = grid.len();
    out.tally(
        "sq-from-q",
        grid.into_iter().map(|x| {
            let outcome = (|| {
                let rep = reduce_sq_to_q_linear(&AlgebraicNumber::from_rational(x.clone()), REDUCTION_BUDGET)?;
                Ok((rep.accepted == is_rational_square_brute(&x), rep.summary()))
            })();
            (format_rational(&x), outcome)
        }),
        &format!(" (all r/s with |r|,s <= 30, {grid_len} distinct values)"),
    );
    out.tally(
        "sq-from-q-irrational",
        corpus.iter().filter(|e| e.degree() > 1).map(|e| {
            let outcome = (|| {
                let rep = reduce_sq_to_q_linear(&e.value, REDUCTION_BUDGET)?;
                Ok((!rep.accepted, rep.summary()))
            })();
            (e.label.clone(), outcome)
        }),
        " rejected",
    );
    let two = || alg_nth_root(&rat(2, 1), 2);
    let inputs: Vec<(&str, Result<AlgebraicNumber>, usize)> = vec![
        ("2^(1/2)", two(), 2),
        ("1/3", Ok(AlgebraicNumber::from_rational(rat(1, 3))), 1),
        ("2^(1/3)", alg_nth_root(&rat(2, 1), 3), 3),
        ("1+2^(1/2)", two().map(|t| t.add_rational(&rat(1, 1))), 2),
        ("2^(1/4)", alg_nth_root(&rat(2, 1), 4), 4),
    ];
    for (label, x, degree) in inputs {
        for dir in [A2Direction::LeFromEq, A2Direction::EqFromLe] {
            let expected = match dir {
                A2Direction::LeFromEq => degree <= 2,
                A2Direction::EqFromLe => degree == 2,
            };
            let outcome = x.clone().and_then(|x| {
                let rep = equiv_a2(&x, dir, REDUCTION_BUDGET)?;
                Ok((
                    rep.accepted == expected && rep.replay(REDUCTION_BUDGET)?,
                    format!("{} queries={}", rep.verdict(), rep.queries.len()),
                ))
            });
            let name = match dir {
                A2Direction::LeFromEq => "a2-le-from-eq",
                A2Direction::EqFromLe => "a2-eq-from-le",
            };
            out.record(format!("{name}:{label}"), outcome);
        }
    }
}

// ------------------------------------------------------------ criterion 8

const SEPARATION_BUDGET: u64 = 10_000;

fn observations(path: &[PathConstraint]) -> Vec<Observation> {
    path.iter().map(PathConstraint::observation).collect()
}

fn separation_full_suite(out: &mut Lines) {
    for (name, shadow) in [("sep_input", rat(1, 3)), ("sep_quotient", rat(7, 2)), ("sep_cubic", rat(5, 2))] {
        let outcome = (|| {
            let prog = shipped_program(name)?;
            let rep = separation_demo(&prog, SeparationMode::Full, &shadow, SEPARATION_BUDGET)?;
            // Recomputed bound: max over membership tests of max(deg num, deg den).
            let bound = rep
                .path
                .iter()
                .filter(|c| c.is_membership())
                .map(|c| c.test.numerator().deg0().max(c.test.denominator().deg0()))
                .max()
                .unwrap_or(0);
            let rerun = run(&prog, std::slice::from_ref(&rep.witness), &OracleSpec::Rationals, SEPARATION_BUDGET)?;
            let follows = rerun.is_halted() && rerun.observations == observations(&rep.path);
            let queries = rep.path.iter().filter(|c| c.is_membership()).count();
            let ok = Integer::from(bound) == rep.degree_bound
                && rep.witness_degree() > bound
                && follows
                && rep.follows
                && rerun.queries.len() == queries;
            Ok((
                ok,
                format!(
                    "shadow={} constraints={} queries={queries} D={bound} witness={} degree={}",
                    format_rational(&shadow),
                    rep.path.len(),
                    rep.witness,
                    rep.witness_degree()
                ),
            ))
        })();
        out.record(name, outcome);
    }
}

fn coefficient_primes(path: &[PathConstraint]) -> Result<Vec<Integer>> {
    let mut primes = Vec::new();
    for c in path {
        for poly in [c.test.numerator(), c.test.denominator()] {
            for q in poly.coeffs() {
                for n in [q.numer(), q.denom()] {
                    if !n.is_zero() {
                        primes.extend(factorize(&n.abs())?.into_iter().map(|(p, _)| p));
                    }
                }
            }
        }
    }
    primes.sort();
    primes.dedup();
    Ok(primes)
}

fn separation_linear_suite(out: &mut Lines) {
    for (name, shadow) in [("sep_linear", rat(1, 3)), ("sep_linear", rat(-5, 2))] {
        let outcome = (|| {
            let prog = shipped_program(name)?;
            validate_program(&prog, Mode::Linear)?;
            let rep = separation_demo(&prog, SeparationMode::Linear, &shadow, SEPARATION_BUDGET)?;
            let primes = coefficient_primes(&rep.path)?;
            let ps = rep.primes.clone().ok_or_else(|| Error::InvalidArgument("no prime set".into()))?;
            let disjoint = ps.primes().iter().all(|p| !primes.contains(p));
            let z = rep
                .witness
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("irrational witness".into()))?;
            let rerun =
                run(&prog, std::slice::from_ref(&rep.witness), &OracleSpec::SquareRationals, SEPARATION_BUDGET)?;
            let negative = !rerun.queries.is_empty() && rerun.queries.iter().all(|q| !q.answer);
            let follows = rerun.is_halted() && rerun.observations == observations(&rep.path);
            let ok = disjoint && negative && follows && rep.follows && qp_member(&z, &ps) && rep.closure_holds()?;
            let listed: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            Ok((
                ok,
                format!(
                    "shadow={} path_primes={{{}}} P={ps} witness={} queries={}",
                    format_rational(&shadow),
                    listed.join(","),
                    format_rational(&z),
                    rerun.queries.len()
                ),
            ))
        })();
        out.record(format!("{name}@{}", format_rational(&shadow)), outcome);
    }
}

// ------------------------------------------------------------ criterion 9

/// A shipped program, its input and oracle, and the frozen trace.
pub struct GoldenCase {
    pub file: &'static str,
    pub program: &'static str,
    pub input: &'static str,
    pub oracle: &'static str,
    pub expected: &'static str,
}

pub const GOLDEN: &[GoldenCase] = &[
    GoldenCase {
        file: "double.trace",
        program: "double",
        input: "3/2",
        oracle: "none",
        expected: include_str!("../tests/golden/double.trace"),
    },
    GoldenCase {
        file: "mul.trace",
        program: "mul",
        input: "-3/2",
        oracle: "none",
        expected: include_str!("../tests/golden/mul.trace"),
    },
    GoldenCase {
        file: "branch_big.trace",
        program: "branch",
        input: "2",
        oracle: "none",
        expected: include_str!("../tests/golden/branch_big.trace"),
    },
    GoldenCase {
        file: "branch_small.trace",
        program: "branch",
        input: "1/2",
        oracle: "none",
        expected: include_str!("../tests/golden/branch_small.trace"),
    },
    GoldenCase {
        file: "branch_sqrt2.trace",
        program: "branch",
        input: "[-2,0,1]@(1,2)",
        oracle: "none",
        expected: include_str!("../tests/golden/branch_sqrt2.trace"),
    },
    GoldenCase {
        file: "countdown.trace",
        program: "countdown",
        input: "3",
        oracle: "none",
        expected: include_str!("../tests/golden/countdown.trace"),
    },
    GoldenCase {
        file: "q_to_sq_accept.trace",
        program: "q_to_sq",
        input: "-2/3",
        oracle: "SQ",
        expected: include_str!("../tests/golden/q_to_sq_accept.trace"),
    },
    GoldenCase {
        file: "q_to_sq_reject.trace",
        program: "q_to_sq",
        input: "[-2,0,1]@(1,2)",
        oracle: "SQ",
        expected: include_str!("../tests/golden/q_to_sq_reject.trace"),
    },
    GoldenCase {
        file: "sep_linear.trace",
        program: "sep_linear",
        input: "1/3",
        oracle: "SQ",
        expected: include_str!("../tests/golden/sep_linear.trace"),
    },
    GoldenCase {
        file: "sep_quotient.trace",
        program: "sep_quotient",
        input: "[-2,0,1]@(1,2)",
        oracle: "Q",
        expected: include_str!("../tests/golden/sep_quotient.trace"),
    },
];

const GOLDEN_BUDGET: u64 = 10_000;

impl GoldenCase {
    /// The trace as produced now.
    pub fn render(&self) -> Result<String> {
        let prog = shipped_program(self.program)?;
        let input: AlgebraicNumber = self.input.parse()?;
        let oracle = OracleSpec::parse(self.oracle)?;
        let res = run_with(&prog, std::slice::from_ref(&input), &oracle, &RunOptions::new(GOLDEN_BUDGET).traced())?;
        Ok(res.render_trace(&prog, &[input]))
    }
}

/// Source of a random straight-line linear program over `r1..r4` with
/// forward branches only, so every run halts.
fn random_linear_source(r: &mut ChaCha8Rng, k: usize) -> String {
    let len = r.gen_range(6..=14usize);
    let mut s = format!("name random{k}\nmode linear\n");
    let reg = |r: &mut ChaCha8Rng| r.gen_range(1..=4u32);
    for i in 0..len {
        s.push_str(&format!("l{i}: "));
        match r.gen_range(0..10) {
            0 => s.push_str(&format!("CONST r{} <- {}\n", reg(r), r.gen_range(0..=1))),
            1..=3 => s.push_str(&format!("ADD r{} <- r{} r{}\n", reg(r), reg(r), reg(r))),
            4..=6 => s.push_str(&format!("SUB r{} <- r{} r{}\n", reg(r), reg(r), reg(r))),
            _ => {
                let target = r.gen_range(i + 1..=len);
                s.push_str(&format!("JGEZ r{} l{target}\n", reg(r)));
            }
        }
    }
    s.push_str(&format!("l{len}: HALT\n"));
    s
}

fn linear_agreement(prog: &BssProgram, shadows: &[Rational]) -> Result<(bool, String)> {
    let opts = RunOptions::new(GOLDEN_BUDGET);
    for x in shadows {
        let sym = match symbolic_run(prog, x, &OracleSpec::None, &opts) {
            Err(Error::DegenerateShadow(_)) => continue,
            other => other?,
        };
        let num = run(prog, &[AlgebraicNumber::from_rational(x.clone())], &OracleSpec::None, GOLDEN_BUDGET)?;
        let (RunStatus::Halted { output: fs, .. }, RunStatus::Halted { output: vs, .. }) =
            (&sym.result.status, &num.status)
        else {
            return Ok((false, "did not halt".into()));
        };
        let mut ok = sym.result.observations == num.observations;
        for k in 0..fs.len().max(vs.len()) {
            let f = fs.get(k).cloned().unwrap_or_else(RationalFunction::zero);
            let v = vs.get(k).cloned().unwrap_or_else(AlgebraicNumber::zero);
            let affine = f.denominator().is_constant() && f.numerator().deg0() <= 1;
            ok &= affine && v.as_rational() == Some(&f.eval(x)?);
        }
        let shown: Vec<String> = fs.iter().map(|f| f.to_string().replace(' ', "")).collect();
        return Ok((
            ok,
            format!("x={} branches={} output=({})", format_rational(x), num.observations.len(), shown.join(";")),
        ));
    }
    Ok((false, "every shadow degenerate".into()))
}

fn vm_suite(out: &mut Lines, seed: u64) {
    for g in GOLDEN {
        let outcome = (|| {
            let now = g.render()?;
            let again = g.render()?;
            let branches = now.lines().filter(|l| l.contains(" branch=")).count();
            let replayed = replay_branches(&now)?;
            let ok = now == g.expected && now == again && replayed == branches;
            Ok((ok, format!("{} lines, {replayed} branches replayed", now.lines().count())))
        })();
        out.record(format!("golden:{}", g.file), outcome);
    }
    for (name, input) in [("q_to_a", "[-2,0,0,1]@(1,2)"), ("sq_to_q", "9/4")] {
        let outcome = (|| {
            let prog = shipped_program(name)?;
            let x: AlgebraicNumber = input.parse()?;
            let oracle = if name == "q_to_a" { OracleSpec::Algebraic } else { OracleSpec::Rationals };
            let res = run_with(&prog, std::slice::from_ref(&x), &oracle, &RunOptions::new(REDUCTION_BUDGET).traced())?;
            let text = res.render_trace(&prog, &[x]);
            let replayed = replay_branches(&text)?;
            Ok((res.is_halted() && replayed > 0, format!("{replayed} branches replayed over {} steps", res.steps)))
        })();
        out.record(format!("replay:{name}"), outcome);
    }
    let mut r = rng(seed);
    let shadows = [rat(7, 13), rat(-11, 17), rat(23, 5), rat(-3, 29)];
    for k in 0..20 {
        let src = random_linear_source(&mut r, k);
        let outcome = parse_program(&src).and_then(|prog| {
            validate_program(&prog, Mode::Linear)?;
            linear_agreement(&prog, &shadows)
        });
        out.record(format!("linear:{k}"), outcome);
    }
}

// ----------------------------------------------------------- criterion 10

fn root_field_value(k: u64, coeffs: &[Rational]) -> Result<AlgebraicNumber> {
    let t = alg_nth_root(&rat(2, 1), u32::try_from(k).map_err(|_| Error::InvalidArgument("root index".into()))?)?;
    Ok(t.eval_rat_poly(&RatPolynomial::new(coeffs.to_vec())))
}

fn semidecide_suite(out: &mut Lines) {
    let mut rationals: Vec<Rational> = Vec::new();
    let mut i = 0i64;
    while rationals.len() < 50 {
        let x = rat((i * 37) % 61 - 30, (i * 17) % 23 + 1);
        if !rationals.contains(&x) {
            rationals.push(x);
        }
        i += 1;
    }
    out.tally(
        "q-halts",
        rationals.iter().map(|x| {
            let outcome = (|| {
                let d = semidecide_q(&AlgebraicNumber::from_rational(x.clone()), 10_000_000)?;
                let ok = match &d.certificate {
                    Some(Certificate::Fraction { r, s }) => !s.is_zero() && r * x.denom() == s * x.numer(),
                    _ => false,
                };
                Ok((ok, d.to_string()))
            })();
            (format_rational(x), outcome)
        }),
        " with checked certificates",
    );
    for (label, x) in [("2^(1/2)", alg_nth_root(&rat(2, 1), 2)), ("2^(1/3)", alg_nth_root(&rat(2, 1), 3))] {
        let outcome = x.and_then(|x| {
            let d = semidecide_q(&x, 10_000)?;
            Ok((!d.is_accepted(), d.to_string()))
        });
        out.record(format!("q-runs:{label}"), outcome);
    }
    let outcome = (|| {
        let x = alg_nth_root(&rat(2, 1), 3)?.add_rational(&rat(1, 1));
        let d = semidecide_a(&x, 1_000_000)?;
        let ok = match &d.certificate {
            Some(Certificate::Annihilator(p)) => !p.is_zero() && alg_eval_poly(p, &x).is_zero(),
            _ => false,
        };
        Ok((ok, d.to_string()))
    })();
    out.record("a-halts:1+2^(1/3)", outcome);
    let outcome = (|| {
        let d = semidecide_sq(&rat(9, 4), 1_000_000)?;
        let ok = matches!(&d.certificate, Some(Certificate::Square { r, s }) if r * r * int(4) == s * s * int(9));
        Ok((ok, d.to_string()))
    })();
    out.record("sq-halts:9/4", outcome);
    let two = PrimeSet::from_u64s(&[2]).expect("prime");
    let mut r = rng(0x5eed);
    for n in 0..30u64 {
        let k = 1 + n % 6;
        let coeffs: Vec<Rational> = (0..k)
            .map(|_| {
                if k <= 3 {
                    let (a, b) = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-1, 2)][r.gen_range(0..6)];
                    rat(a, b)
                } else {
                    rat(r.gen_range(-1..=1), 1)
                }
            })
            .collect();
        let shown: Vec<String> = coeffs.iter().map(format_rational).collect();
        let outcome = (|| {
            let x = root_field_value(k, &coeffs)?;
            let d = semidecide_root_field(&x, &two, 5_000_000)?;
            let ok = match &d.certificate {
                Some(Certificate::FieldElement { k, coeffs }) => alg_eq(&root_field_value(*k, coeffs)?, &x),
                _ => false,
            };
            Ok((ok, d.to_string()))
        })();
        out.record(format!("root-field:K={k}({})", shown.join(",")), outcome);
    }
    let outcome = (|| {
        let d = semidecide_root_field(&alg_nth_root(&rat(3, 1), 2)?, &two, 300_000)?;
        Ok((!d.is_accepted(), d.to_string()))
    })();
    out.record("root-field-runs:3^(1/2)", outcome);
}
