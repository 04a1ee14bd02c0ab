//! Exact real algebraic numbers.
//!
//! An irrational value is stored as a polynomial in a *generator*: a real
//! root of an irreducible integer polynomial, located by an isolating
//! interval that is refined on demand.  Values over the same generator are
//! combined by polynomial arithmetic modulo its minimal polynomial; values
//! over different generators go through a resultant, whose square-free
//! part is split until the factor owning the result is found.  The minimal
//! polynomial of a value is the square-free part of its characteristic
//! polynomial, so no factoring happens inside one field.

pub mod construct;
pub mod degree;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{nth_root_exact, parse_rational, rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::kronecker::owning_factor;
use crate::poly::roots::{
    bisect, charpoly, count_roots, eval_interval, isolate_real_roots, norm, sign_at, sturm_sequence, RatInterval,
    RealRoot,
};
use crate::poly::{lagrange_interpolate, parse_coeff_list, IntPolynomial, RatPolynomial};

pub use construct::{
    approximate_relative_degree, approximate_with_degree, besicovitch_degree, lcm_primitive, PrimeRootGenerator,
    RelativeDegreeApproximant,
};
pub use degree::{deg_enumerate, deg_enumerate_counted, EvaluationView};

/// A real root of an irreducible integer polynomial of degree at least 2.
pub struct Generator {
    minpoly: IntPolynomial,
    modulus: RatPolynomial,
    interval: RwLock<(Rational, Rational)>,
}

impl Generator {
    /// `minpoly` must be primitive and irreducible with a single root in
    /// `(lo, hi)` and no root at either endpoint.
    fn new(minpoly: IntPolynomial, lo: Rational, hi: Rational) -> Arc<Self> {
        let modulus = minpoly.to_rat().monic();
        Arc::new(Generator { minpoly, modulus, interval: RwLock::new((lo, hi)) })
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg0()
    }

    /// Current isolating interval.
    pub fn interval(&self) -> (Rational, Rational) {
        self.interval.read().expect("interval lock").clone()
    }

    fn enclosure(&self) -> RatInterval {
        let (lo, hi) = self.interval();
        RatInterval::new(lo, hi)
    }

    /// Halves the isolating interval.
    pub fn refine(&self) {
        let mut guard = self.interval.write().expect("interval lock");
        let (lo, hi) = guard.clone();
        match bisect(&self.minpoly, &lo, &hi) {
            RealRoot::Isolated(a, b) => *guard = (a, b),
            RealRoot::Exact(_) => unreachable!("an irreducible polynomial of degree >= 2 has no rational root"),
        }
    }

    fn same_root(self: &Arc<Self>, other: &Arc<Generator>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.minpoly != other.minpoly {
            return false;
        }
        let (a, b) = (self.interval(), other.interval());
        let lo = a.0.max(b.0);
        let hi = a.1.min(b.1);
        lo < hi && sign_at(&self.minpoly, &lo) * sign_at(&self.minpoly, &hi) < 0
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.interval();
        write!(f, "Generator({}@({lo},{hi}))", self.minpoly)
    }
}

#[derive(Clone)]
enum Repr {
    Rational(Rational),
    /// `coords` is reduced modulo the generator and never constant.
    Field {
        gen: Arc<Generator>,
        coords: RatPolynomial,
    },
}

struct Inner {
    repr: Repr,
    minpoly: OnceLock<IntPolynomial>,
    canonical: OnceLock<(Rational, Rational)>,
}

/// An exact real algebraic number.  Cloning is cheap.
#[derive(Clone)]
pub struct AlgebraicNumber(Arc<Inner>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgConfig {
    /// Largest resultant degree attempted when combining values from
    /// unrelated fields.
    pub degree_cap: usize,
}

impl Default for AlgConfig {
    fn default() -> Self {
        AlgConfig { degree_cap: 16 }
    }
}

/// Which real root `alg_root` returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelector {
    /// The unique root in the open interval.
    Interval(Rational, Rational),
    /// The k-th real root in increasing order, from 0.
    Index(usize),
}

impl AlgebraicNumber {
    fn from_repr(repr: Repr) -> Self {
        AlgebraicNumber(Arc::new(Inner { repr, minpoly: OnceLock::new(), canonical: OnceLock::new() }))
    }

    fn with_minpoly(repr: Repr, minpoly: IntPolynomial) -> Self {
        let a = AlgebraicNumber::from_repr(repr);
        let _ = a.0.minpoly.set(minpoly);
        a
    }

    pub fn from_rational(x: Rational) -> Self {
        AlgebraicNumber::from_repr(Repr::Rational(x))
    }

    pub fn from_integer(n: i64) -> Self {
        AlgebraicNumber::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        AlgebraicNumber::from_integer(0)
    }

    pub fn one() -> Self {
        AlgebraicNumber::from_integer(1)
    }

    fn in_field(gen: &Arc<Generator>, coords: RatPolynomial) -> Self {
        let coords = coords.rem(&gen.modulus);
        if coords.is_constant() {
            return AlgebraicNumber::from_rational(coords.coeff(0));
        }
        AlgebraicNumber::from_repr(Repr::Field { gen: gen.clone(), coords })
    }

    fn generator_value(gen: Arc<Generator>) -> Self {
        let mp = gen.minpoly.clone();
        AlgebraicNumber::with_minpoly(Repr::Field { gen, coords: RatPolynomial::x() }, mp)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0.repr {
            Repr::Rational(x) => Some(x),
            Repr::Field { .. } => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }

    /// The generator and coordinates of an irrational value.
    pub fn field(&self) -> Option<(&Arc<Generator>, &RatPolynomial)> {
        match &self.0.repr {
            Repr::Rational(_) => None,
            Repr::Field { gen, coords } => Some((gen, coords)),
        }
    }

    /// A closed interval containing the value at the current refinement.
    pub fn enclosure(&self) -> RatInterval {
        match &self.0.repr {
            Repr::Rational(x) => RatInterval::point(x.clone()),
            Repr::Field { gen, coords } => eval_interval(coords, &gen.enclosure()),
        }
    }

    /// Shrinks the enclosure.
    pub fn refine(&self) {
        if let Repr::Field { gen, .. } = &self.0.repr {
            gen.refine();
        }
    }

    /// Refines until the enclosure is no wider than `w`.
    pub fn enclosure_within(&self, w: &Rational) -> RatInterval {
        loop {
            let e = self.enclosure();
            if &e.width() <= w {
                return e;
            }
            self.refine();
        }
    }

    pub fn sign(&self) -> i8 {
        loop {
            if let Some(s) = self.enclosure().sign() {
                return s;
            }
            self.refine();
        }
    }

    /// Primitive irreducible integer polynomial with positive leading
    /// coefficient vanishing at the value.
    pub fn minpoly(&self) -> &IntPolynomial {
        self.0.minpoly.get_or_init(|| match &self.0.repr {
            Repr::Rational(x) => IntPolynomial::new(vec![-x.numer().clone(), x.denom().clone()]),
            Repr::Field { gen, coords } => {
                if *coords == RatPolynomial::x() {
                    gen.minpoly.clone()
                } else {
                    charpoly(&gen.modulus, coords).squarefree_part().to_primitive_int()
                }
            }
        })
    }

    pub fn degree(&self) -> usize {
        match &self.0.repr {
            Repr::Rational(_) => 1,
            Repr::Field { .. } => self.minpoly().deg0(),
        }
    }

    /// The isolating interval of the value among the real roots of its
    /// minimal polynomial, as found by deterministic Sturm bisection.
    pub fn isolating_interval(&self) -> (Rational, Rational) {
        self.0
            .canonical
            .get_or_init(|| {
                let roots = isolate_real_roots(self.minpoly());
                if let Repr::Rational(x) = &self.0.repr {
                    return match &roots[0] {
                        RealRoot::Isolated(lo, hi) => (lo.clone(), hi.clone()),
                        RealRoot::Exact(_) => (x - Rational::one(), x + Rational::one()),
                    };
                }
                loop {
                    let e = self.enclosure();
                    for r in &roots {
                        if let RealRoot::Isolated(lo, hi) = r {
                            if lo < &e.lo && &e.hi < hi {
                                return (lo.clone(), hi.clone());
                            }
                        }
                    }
                    self.refine();
                }
            })
            .clone()
    }

    /// Position among the real roots of the minimal polynomial.
    pub fn root_index(&self) -> usize {
        if self.is_rational() {
            return 0;
        }
        let (lo, _) = self.isolating_interval();
        let seq = sturm_sequence(self.minpoly());
        let b = crate::poly::roots::root_bound(self.minpoly());
        count_roots(&seq, &-b, &lo)
    }

    pub fn neg(&self) -> Self {
        match &self.0.repr {
            Repr::Rational(x) => AlgebraicNumber::from_rational(-x),
            Repr::Field { gen, coords } => AlgebraicNumber::in_field(gen, -coords),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        alg_arith(&AlgebraicNumber::one(), self, ArithOp::Div)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        alg_arith(self, o, ArithOp::Add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        alg_arith(self, o, ArithOp::Sub)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        alg_arith(self, o, ArithOp::Mul)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        alg_arith(self, o, ArithOp::Div)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        match &self.0.repr {
            Repr::Rational(x) => AlgebraicNumber::from_rational(x + r),
            Repr::Field { gen, coords } => AlgebraicNumber::in_field(gen, coords + &RatPolynomial::constant(r.clone())),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match &self.0.repr {
            Repr::Rational(x) => AlgebraicNumber::from_rational(x * r),
            Repr::Field { gen, coords } => AlgebraicNumber::in_field(gen, coords.scale(r)),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        match &self.0.repr {
            Repr::Rational(x) => AlgebraicNumber::from_rational(Pow::pow(x, e)),
            Repr::Field { gen, coords } => {
                let mut acc = RatPolynomial::one();
                let mut base = coords.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = (&acc * &base).rem(&gen.modulus);
                    }
                    base = (&base * &base).rem(&gen.modulus);
                    e >>= 1;
                }
                AlgebraicNumber::in_field(gen, acc)
            }
        }
    }

    /// `p(self)` for a rational polynomial.
    pub fn eval_rat_poly(&self, p: &RatPolynomial) -> Self {
        match &self.0.repr {
            Repr::Rational(x) => AlgebraicNumber::from_rational(p.eval(x)),
            Repr::Field { gen, coords } => {
                let mut acc = RatPolynomial::zero();
                for c in p.coeffs().iter().rev() {
                    acc = (&(&acc * coords) + &RatPolynomial::constant(c.clone())).rem(&gen.modulus);
                }
                AlgebraicNumber::in_field(gen, acc)
            }
        }
    }

    pub(crate) fn same_field(&self, o: &Self) -> bool {
        match (&self.0.repr, &o.0.repr) {
            (Repr::Field { gen: a, .. }, Repr::Field { gen: b, .. }) => a.same_root(b),
            _ => true,
        }
    }
}

pub fn alg_from_rational(x: Rational) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(x)
}

/// Exact field operation with the default configuration.
pub fn alg_arith(a: &AlgebraicNumber, b: &AlgebraicNumber, op: ArithOp) -> Result<AlgebraicNumber> {
    alg_arith_with(a, b, op, &AlgConfig::default())
}

pub fn alg_arith_with(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    op: ArithOp,
    cfg: &AlgConfig,
) -> Result<AlgebraicNumber> {
    if op == ArithOp::Div && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    use Repr::{Field, Rational as Q};
    let out = match (&a.0.repr, &b.0.repr) {
        (Q(x), Q(y)) => AlgebraicNumber::from_rational(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x / y,
        }),
        (Field { gen, coords }, Q(y)) => {
            let c = match op {
                ArithOp::Add => coords + &RatPolynomial::constant(y.clone()),
                ArithOp::Sub => coords - &RatPolynomial::constant(y.clone()),
                ArithOp::Mul => coords.scale(y),
                ArithOp::Div => coords.scale(&y.recip()),
            };
            AlgebraicNumber::in_field(gen, c)
        }
        (Q(x), Field { gen, coords }) => {
            let xc = RatPolynomial::constant(x.clone());
            let c = match op {
                ArithOp::Add => &xc + coords,
                ArithOp::Sub => &xc - coords,
                ArithOp::Mul => coords.scale(x),
                ArithOp::Div => inverse(gen, coords).scale(x),
            };
            AlgebraicNumber::in_field(gen, c)
        }
        (Field { gen: g1, coords: c1 }, Field { gen: g2, coords: c2 }) if g1.same_root(g2) => {
            let c = match op {
                ArithOp::Add => c1 + c2,
                ArithOp::Sub => c1 - c2,
                ArithOp::Mul => c1 * c2,
                ArithOp::Div => c1 * &inverse(g1, c2),
            };
            AlgebraicNumber::in_field(g1, c)
        }
        _ => cross_field(a, b, op, cfg)?,
    };
    Ok(out)
}

fn inverse(gen: &Generator, coords: &RatPolynomial) -> RatPolynomial {
    coords.inverse_mod(&gen.modulus).expect("nonzero element of a field")
}

/// Combines values over unrelated generators through a resultant.
fn cross_field(a: &AlgebraicNumber, b: &AlgebraicNumber, op: ArithOp, cfg: &AlgConfig) -> Result<AlgebraicNumber> {
    let pa = a.minpoly().to_rat().monic();
    let mut pb = b.minpoly().to_rat().monic();
    let (n, m) = (pa.deg0(), pb.deg0());
    if n * m > cfg.degree_cap {
        return Err(Error::DegreeCap { degree: n * m, cap: cfg.degree_cap });
    }
    if op == ArithOp::Div {
        pb = pb.reverse().monic();
    }
    let y = RatPolynomial::x();
    let mut pts = Vec::with_capacity(n * m + 1);
    for k in 0..=n * m {
        let x0 = rat_int(k as i64);
        let h = match op {
            ArithOp::Add => pa.compose(&(&RatPolynomial::constant(x0.clone()) - &y)),
            ArithOp::Sub => pa.compose(&(&RatPolynomial::constant(x0.clone()) + &y)),
            ArithOp::Mul | ArithOp::Div => {
                // y^n pa(x0 / y)
                let mut cs = vec![Rational::zero(); n + 1];
                let mut xp = Rational::one();
                for (i, c) in pa.coeffs().iter().enumerate() {
                    cs[n - i] = c * &xp;
                    xp *= &x0;
                }
                RatPolynomial::new(cs)
            }
        };
        pts.push((x0, norm(&pb, &h)));
    }
    let r = lagrange_interpolate(&pts)?;
    let sf = r.squarefree_part().to_primitive_int();
    let roots = isolate_real_roots(&sf);
    loop {
        let (ea, eb) = (a.enclosure(), b.enclosure());
        let e = match op {
            ArithOp::Add => Some(ea.add(&eb)),
            ArithOp::Sub => Some(ea.sub(&eb)),
            ArithOp::Mul => Some(ea.mul(&eb)),
            ArithOp::Div => ea.div(&eb),
        };
        if let Some(e) = e {
            let hits: Vec<&RealRoot> = roots
                .iter()
                .filter(|r| match r {
                    RealRoot::Exact(x) => &e.lo <= x && x <= &e.hi,
                    RealRoot::Isolated(lo, hi) => lo < &e.hi && &e.lo < hi,
                })
                .collect();
            if hits.len() == 1 {
                return Ok(match hits[0] {
                    RealRoot::Exact(x) => AlgebraicNumber::from_rational(x.clone()),
                    RealRoot::Isolated(lo, hi) => from_isolated_root(&sf, lo, hi),
                });
            }
        }
        a.refine();
        b.refine();
    }
}

/// The root of the square-free `p` isolated by `(lo, hi)`, attached to
/// the irreducible factor that owns it.
fn from_isolated_root(p: &IntPolynomial, lo: &Rational, hi: &Rational) -> AlgebraicNumber {
    let m = if certified_irreducible(p) {
        p.primitive()
    } else {
        owning_factor(p, &mut |g| sign_at(g, lo) * sign_at(g, hi) < 0)
    };
    if m.deg0() == 1 {
        let c = m.coeffs();
        return AlgebraicNumber::from_rational(Rational::new(-c[0].clone(), c[1].clone()));
    }
    AlgebraicNumber::generator_value(Generator::new(m, lo.clone(), hi.clone()))
}

/// Cheap sufficient conditions for irreducibility: Eisenstein's criterion
/// after a small integer shift, binomials `s X^N - r` with `r/s > 0` not a
/// `q`-th power for any prime `q | N`, and factor degrees modulo small primes.
pub fn certified_irreducible(p: &IntPolynomial) -> bool {
    let Some(n) = p.degree() else {
        return false;
    };
    if n == 1 {
        return true;
    }
    if !p.content().is_one() {
        return false;
    }
    let cs = p.coeffs();
    if cs[1..n].iter().all(Zero::is_zero) && (cs[0].is_negative() != cs[n].is_negative()) {
        let x = Rational::new(cs[0].abs(), cs[n].abs());
        let primes = crate::arith::factorize(&Integer::from(n)).expect("positive");
        return primes
            .iter()
            .all(|(q, _)| nth_root_exact(&x, u32::try_from(q).unwrap_or(u32::MAX)).ok().flatten().is_none());
    }
    (-3..=3).any(|t: i64| {
        let shifted = p.compose(&IntPolynomial::from_i64s(&[t, 1]));
        eisenstein(&shifted)
    }) || crate::poly::modular::irreducible_by_reduction(p)
}

fn eisenstein(p: &IntPolynomial) -> bool {
    let cs = p.coeffs();
    let n = cs.len() - 1;
    let c0 = cs[0].abs();
    if c0.is_zero() {
        return false;
    }
    let Some(factors) = crate::arith::try_factorize(&c0, 10_000) else {
        return false;
    };
    factors.iter().any(|(q, e)| *e == 1 && !(&cs[n] % q).is_zero() && cs[1..n].iter().all(|c| (c % q).is_zero()))
}

/// A real root of `p`, attached to its irreducible factor.
pub fn alg_root(p: &IntPolynomial, which: &RootSelector) -> Result<AlgebraicNumber> {
    if p.is_constant() {
        return Err(Error::InvalidArgument(format!("constant polynomial {p}")));
    }
    let sf = p.to_rat().squarefree_part().to_primitive_int();
    let roots = isolate_real_roots(&sf);
    if roots.is_empty() {
        return Err(Error::NoRealRoot);
    }
    let chosen = match which {
        RootSelector::Index(k) => roots
            .get(*k)
            .cloned()
            .ok_or_else(|| Error::AmbiguousSelector(format!("root index {k} but only {} real roots", roots.len())))?,
        RootSelector::Interval(lo, hi) => {
            if lo >= hi {
                return Err(Error::InvalidArgument(format!("empty interval ({lo},{hi})")));
            }
            let inside: Vec<RealRoot> = roots.into_iter().filter_map(|r| locate_in(&sf, r, lo, hi)).collect();
            match inside.len() {
                0 => return Err(Error::NoRealRoot),
                1 => inside.into_iter().next().unwrap(),
                k => return Err(Error::AmbiguousSelector(format!("{k} real roots in ({lo},{hi})"))),
            }
        }
    };
    Ok(match chosen {
        RealRoot::Exact(x) => AlgebraicNumber::from_rational(x),
        RealRoot::Isolated(lo, hi) => from_isolated_root(&sf, &lo, &hi),
    })
}

/// The root refined so that it is decided whether it lies in `(lo, hi)`;
/// `None` when it does not.
fn locate_in(p: &IntPolynomial, root: RealRoot, lo: &Rational, hi: &Rational) -> Option<RealRoot> {
    let mut r = root;
    loop {
        match &r {
            RealRoot::Exact(x) => return (lo < x && x < hi).then_some(r),
            RealRoot::Isolated(a, b) => {
                if b <= lo || hi <= a {
                    return None;
                }
                let lo_inside = a < lo && lo < b;
                let hi_inside = a < hi && hi < b;
                if lo_inside && sign_at(p, lo) == 0 {
                    return None;
                }
                if hi_inside && sign_at(p, hi) == 0 {
                    return None;
                }
                if !lo_inside && !hi_inside {
                    return Some(r);
                }
                r = bisect(p, a, b);
            }
        }
    }
}

/// The positive real `N`-th root of a positive rational.
pub fn alg_nth_root(x: &Rational, n: u32) -> Result<AlgebraicNumber> {
    if !x.is_positive() {
        return Err(Error::NegativeRadicand(x.to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("root index must be positive".into()));
    }
    let mut x = x.clone();
    let mut n = n;
    // Capelli: X^n - x is irreducible once x is no q-th power for q | n.
    'outer: loop {
        for (q, _) in crate::arith::factorize(&Integer::from(n))? {
            let q = u32::try_from(&q).expect("small prime");
            if let Some(y) = nth_root_exact(&x, q)? {
                x = y;
                n /= q;
                continue 'outer;
            }
        }
        break;
    }
    if n == 1 {
        return Ok(AlgebraicNumber::from_rational(x));
    }
    let mut cs = vec![Integer::zero(); n as usize + 1];
    cs[0] = -x.numer().clone();
    cs[n as usize] = x.denom().clone();
    let mp = IntPolynomial::new(cs);
    let roots = isolate_real_roots(&mp);
    // The largest real root is the only positive one.
    let Some(RealRoot::Isolated(lo, hi)) = roots.last().cloned() else {
        unreachable!("irreducible binomial has an irrational positive root")
    };
    Ok(AlgebraicNumber::generator_value(Generator::new(mp, lo, hi)))
}

pub fn alg_sign(a: &AlgebraicNumber) -> i8 {
    a.sign()
}

pub fn alg_eq(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    match (&a.0.repr, &b.0.repr) {
        (Repr::Rational(x), Repr::Rational(y)) => x == y,
        (Repr::Rational(_), _) | (_, Repr::Rational(_)) => false,
        (Repr::Field { gen: g1, coords: c1 }, Repr::Field { gen: g2, coords: c2 }) => {
            if g1.same_root(g2) {
                return c1 == c2;
            }
            a.minpoly() == b.minpoly() && a.isolating_interval() == b.isolating_interval()
        }
    }
}

/// Exact comparison.
pub fn alg_cmp(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Ordering> {
    if alg_eq(a, b) {
        return Ok(Ordering::Equal);
    }
    // Disjoint enclosures settle it without arithmetic.
    loop {
        let (ea, eb) = (a.enclosure(), b.enclosure());
        if ea.hi < eb.lo {
            return Ok(Ordering::Less);
        }
        if eb.hi < ea.lo {
            return Ok(Ordering::Greater);
        }
        if a.same_field(b) {
            return Ok(a.sub(b)?.sign().cmp(&0));
        }
        a.refine();
        b.refine();
    }
}

/// `p(a)`; zero exactly when the minimal polynomial of `a` divides `p`.
pub fn alg_eval_poly(p: &IntPolynomial, a: &AlgebraicNumber) -> AlgebraicNumber {
    a.eval_rat_poly(&p.to_rat())
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        alg_eq(self, other)
    }
}

impl Eq for AlgebraicNumber {}

impl fmt::Display for AlgebraicNumber {
    /// `a/b` for rationals, `[c0,...,ck]@(lo,hi)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.repr {
            Repr::Rational(x) => write!(f, "{x}"),
            Repr::Field { .. } => {
                let cs: Vec<String> = self.minpoly().coeffs().iter().map(|c| c.to_string()).collect();
                let (lo, hi) = self.isolating_interval();
                write!(f, "[{}]@({lo},{hi})", cs.join(","))
            }
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for AlgebraicNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some((poly, iv)) = t.split_once('@') else {
            return Ok(AlgebraicNumber::from_rational(parse_rational(t)?));
        };
        let cs = parse_coeff_list(poly)?;
        let p = RatPolynomial::new(cs).to_primitive_int();
        let inner = iv
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("expected `(lo,hi)` after `@` in `{t}`")))?;
        let (lo, hi) = inner.split_once(',').ok_or_else(|| Error::parse(format!("expected `(lo,hi)` in `{t}`")))?;
        alg_root(&p, &RootSelector::Interval(parse_rational(lo)?, parse_rational(hi)?))
    }
}

impl From<Rational> for AlgebraicNumber {
    fn from(x: Rational) -> Self {
        AlgebraicNumber::from_rational(x)
    }
}

impl crate::poly::field::ExactField for AlgebraicNumber {
    fn zero() -> Self {
        AlgebraicNumber::zero()
    }
    fn one() -> Self {
        AlgebraicNumber::one()
    }
    fn is_zero(&self) -> bool {
        AlgebraicNumber::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        AlgebraicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        AlgebraicNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        AlgebraicNumber::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        AlgebraicNumber::div(self, o)
    }
    fn neg(&self) -> Result<Self> {
        Ok(AlgebraicNumber::neg(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    fn sqrt2() -> AlgebraicNumber {
        alg_nth_root(&rat(2, 1), 2).unwrap()
    }

    #[test]
    fn from_rational_minpolys() {
        assert_eq!(alg_from_rational(rat(3, 2)).minpoly(), &ip(&[-3, 2]));
        assert_eq!(alg_from_rational(rat(0, 1)).minpoly(), &ip(&[0, 1]));
        assert_eq!(alg_from_rational(rat(-5, 1)).minpoly(), &ip(&[5, 1]));
    }

    #[test]
    fn roots_of_polynomials() {
        let r = alg_root(&ip(&[-2, 0, 1]), &RootSelector::Interval(rat(1, 1), rat(2, 1))).unwrap();
        assert_eq!(r, sqrt2());
        assert_eq!(alg_root(&ip(&[1, 0, 1]), &RootSelector::Index(0)), Err(Error::NoRealRoot));
        let c = alg_root(&ip(&[-3, 3, -3, 1]), &RootSelector::Index(0)).unwrap();
        assert_eq!(c.minpoly(), &ip(&[-3, 3, -3, 1]));
        let e = c.enclosure();
        assert!(e.lo >= rat(1, 1) || alg_cmp(&c, &alg_from_rational(rat(2, 1))).unwrap() == Ordering::Greater);
        assert_eq!(alg_cmp(&c, &alg_from_rational(rat(3, 1))).unwrap(), Ordering::Less);
        assert!(matches!(
            alg_root(&ip(&[-2, 0, 1]), &RootSelector::Interval(rat(-2, 1), rat(2, 1))),
            Err(Error::AmbiguousSelector(_))
        ));
        // A reducible input yields the owning factor.
        let p = &ip(&[-2, 0, 1]) * &ip(&[-3, 0, 1]);
        let r = alg_root(&p, &RootSelector::Interval(rat(17, 10), rat(18, 10))).unwrap();
        assert_eq!(r.minpoly(), &ip(&[-3, 0, 1]));
        let r = alg_root(&p, &RootSelector::Index(3)).unwrap();
        assert_eq!(r.minpoly(), &ip(&[-3, 0, 1]));
        let q = alg_root(&(&ip(&[-1, 2]) * &ip(&[-2, 0, 1])), &RootSelector::Interval(rat(0, 1), rat(1, 1))).unwrap();
        assert_eq!(q, alg_from_rational(rat(1, 2)));
    }

    #[test]
    fn nth_roots() {
        assert_eq!(alg_nth_root(&rat(2, 1), 2).unwrap().minpoly(), &ip(&[-2, 0, 1]));
        assert_eq!(alg_nth_root(&rat(2, 1), 1).unwrap(), alg_from_rational(rat(2, 1)));
        assert_eq!(alg_nth_root(&rat(2, 1), 6).unwrap().degree(), 6);
        assert_eq!(alg_nth_root(&rat(4, 1), 2).unwrap(), alg_from_rational(rat(2, 1)));
        assert_eq!(alg_nth_root(&rat(4, 1), 4).unwrap(), sqrt2());
        assert!(alg_nth_root(&rat(0, 1), 2).is_err());
        assert!(alg_nth_root(&rat(-2, 1), 3).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let s = sqrt2();
        assert_eq!(s.mul(&s).unwrap(), alg_from_rational(rat(2, 1)));
        assert!(s.add(&s.neg()).unwrap().is_zero());
        let c = alg_nth_root(&rat(2, 1), 3).unwrap();
        let one_plus = AlgebraicNumber::one().add(&c).unwrap();
        assert_eq!(one_plus.minpoly(), &ip(&[-3, 3, -3, 1]));
        assert_eq!(alg_sign(&s), 1);
        assert_eq!(alg_sign(&AlgebraicNumber::zero()), 0);
        assert_eq!(alg_sign(&s.add_rational(&rat(-3, 2))), -1);
        assert_eq!(s.div(&AlgebraicNumber::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn cross_field_arithmetic() {
        let s2 = sqrt2();
        let s3 = alg_nth_root(&rat(3, 1), 2).unwrap();
        let sum = s2.add(&s3).unwrap();
        assert_eq!(sum.minpoly(), &ip(&[1, 0, -10, 0, 1]));
        let prod = s2.mul(&s3).unwrap();
        assert_eq!(prod.minpoly(), &ip(&[-6, 0, 1]));
        let q = s2.div(&s3).unwrap();
        assert_eq!(q.minpoly(), &ip(&[-2, 0, 3]));
        let diff = sum.sub(&s3).unwrap();
        assert_eq!(diff, s2);
        let f4 = alg_nth_root(&rat(2, 1), 4).unwrap();
        let sq = f4.mul(&f4).unwrap();
        assert_eq!(sq, s2);
        // sqrt2 from a separate generator object equals 2^(1/4) squared.
        let back = sq.sub(&s2).unwrap();
        assert!(back.is_zero());
        let y = alg_nth_root(&rat(2, 1), 3).unwrap().add(&s2).unwrap();
        assert_eq!(y.degree(), 6);
    }

    #[test]
    fn evaluation_and_text_form() {
        let s = sqrt2();
        assert!(alg_eval_poly(&ip(&[-2, 0, 1]), &s).is_zero());
        assert_eq!(alg_eval_poly(&ip(&[-2, 0, 1]), &AlgebraicNumber::one()), AlgebraicNumber::from_integer(-1));
        assert!(alg_eval_poly(&ip(&[-4, 0, 0, 0, 1]), &s).is_zero());
        let text = s.to_string();
        assert_eq!(text.parse::<AlgebraicNumber>().unwrap(), s);
        assert_eq!(text.parse::<AlgebraicNumber>().unwrap().to_string(), text);
        assert_eq!("[ -2,0,1]@(1,2)".parse::<AlgebraicNumber>().unwrap(), s);
        assert_eq!("3/2".parse::<AlgebraicNumber>().unwrap().to_string(), "3/2");
        let y = s.add_rational(&rat(1, 3));
        assert_eq!(y.to_string().parse::<AlgebraicNumber>().unwrap(), y);
    }

    #[test]
    fn refinement_does_not_change_answers() {
        let s = sqrt2().add_rational(&rat(-141, 100));
        let before = (alg_sign(&s), s.to_string());
        for _ in 0..20 {
            s.refine();
        }
        assert_eq!(before, (alg_sign(&s), s.to_string()));
    }
}
