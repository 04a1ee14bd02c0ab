//! Randomized invariants of the public API.

use std::cmp::Ordering;

use bss_core::algebraic::{alg_cmp, alg_eq, alg_nth_root, AlgebraicNumber};
use bss_core::arith::{qp_member, rat, tilde_qp_construct, Integer, PrimeSet, Rational};
use bss_core::machine::{parse_program, run, validate_program, Mode, OracleSpec};
use bss_core::poly::modular::factor_degree_sieve;
use bss_core::poly::{
    kronecker_irreducible, recover_rational_function, IntPolynomial, RatPolynomial, RationalFunction, RecoveryInstance,
};
use bss_core::problems::{reduce_sq_to_q_linear, semidecide_q, semidecide_sq, Certificate};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

const GENERATORS: [(i64, u32); 3] = [(2, 2), (2, 3), (3, 2)];

/// `a + b * t` with `t` the `k`-th entry of `GENERATORS` written as a root.
fn in_field(k: usize) -> impl Strategy<Value = AlgebraicNumber> {
    (small_rat(), small_rat()).prop_map(move |(a, b)| {
        let (base, n) = GENERATORS[k];
        alg_nth_root(&rat(base, 1), n).unwrap().scale(&b).add_rational(&a)
    })
}

fn field_element() -> impl Strategy<Value = AlgebraicNumber> {
    (0..GENERATORS.len()).prop_flat_map(in_field)
}

/// Three elements of one field, so every intermediate stays within it.
fn same_field_triple() -> impl Strategy<Value = (AlgebraicNumber, AlgebraicNumber, AlgebraicNumber)> {
    (0..GENERATORS.len()).prop_flat_map(|k| (in_field(k), in_field(k), in_field(k)))
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(-4i64..=4, d + 1))
        .prop_filter("nonconstant", |cs| *cs.last().unwrap() != 0)
        .prop_map(|cs| IntPolynomial::from_i64s(&cs))
}

fn is_square(x: &Rational) -> bool {
    let root = |n: &Integer| {
        let mut k = Integer::from(0);
        while &k * &k < *n {
            k += 1;
        }
        &k * &k == *n
    };
    *x >= rat(0, 1) && root(x.numer()) && root(x.denom())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in same_field_triple()) {
        prop_assert!(alg_eq(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
        prop_assert!(alg_eq(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(alg_eq(&left, &right));
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert!(alg_eq(&a.div(&b).unwrap().mul(&b).unwrap(), &a));
        }
    }

    #[test]
    fn mixed_fields_commute(a in field_element(), b in field_element()) {
        let s = a.add(&b).unwrap();
        prop_assert!(alg_eq(&s, &b.add(&a).unwrap()));
        prop_assert!(s.degree() <= a.degree() * b.degree());
        prop_assert!(alg_eq(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
    }

    #[test]
    fn order_agrees_with_sign(a in field_element(), b in field_element()) {
        let d = a.sub(&b).unwrap();
        let expected = match d.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        };
        prop_assert_eq!(alg_cmp(&a, &b).unwrap(), expected);
    }

    #[test]
    fn text_round_trip(a in field_element()) {
        let back: AlgebraicNumber = a.to_string().parse().unwrap();
        prop_assert!(alg_eq(&a, &back));
        prop_assert_eq!(back.to_string(), a.to_string());
    }

    #[test]
    fn products_are_reducible(f in int_poly(2), g in int_poly(2)) {
        let p = &f * &g;
        let p = p.primitive();
        prop_assert!(!kronecker_irreducible(&p).unwrap().is_irreducible());
        // The modular sieve never rules out a degree that really occurs.
        prop_assert!(factor_degree_sieve(&p)[f.deg0()]);
    }

    #[test]
    fn recovery_round_trip(
        p in prop::collection::vec(small_rat(), 1..=3),
        q in prop::collection::vec(small_rat(), 1..=3),
    ) {
        let (n, m) = (p.len(), q.len());
        let (p, q) = (RatPolynomial::new(p), RatPolynomial::new(q));
        prop_assume!(!q.is_zero());
        let mut points = Vec::new();
        let mut values = Vec::new();
        let mut a = -3i64;
        while points.len() < n + m {
            let x = rat(a, 2);
            if q.eval(&x) != rat(0, 1) {
                values.push(p.eval(&x) / q.eval(&x));
                points.push(x);
            }
            a += 1;
        }
        let got = recover_rational_function(&RecoveryInstance::new(points, values, n, m).unwrap()).unwrap();
        prop_assert_eq!(got, RationalFunction::new(p, q).unwrap());
    }

    #[test]
    fn squares_semidecider_agrees(r in -12i64..=12, s in 1i64..=12) {
        let x = rat(r, s);
        let sq = &x * &x;
        let d = semidecide_sq(&sq, 2_000_000).unwrap();
        match d.certificate {
            Some(Certificate::Square { r, s }) => prop_assert_eq!(Rational::new(r.clone() * r, s.clone() * s), sq.clone()),
            other => prop_assert!(false, "no certificate: {:?}", other),
        }
        let rep = reduce_sq_to_q_linear(&AlgebraicNumber::from_rational(x.clone()), 100_000_000).unwrap();
        prop_assert_eq!(rep.accepted, is_square(&x));
    }

    #[test]
    fn rationals_semidecider_certificate(x in small_rat()) {
        let d = semidecide_q(&AlgebraicNumber::from_rational(x.clone()), 1_000_000).unwrap();
        match d.certificate {
            Some(Certificate::Fraction { r, s }) => prop_assert_eq!(Rational::new(r, s), x),
            other => prop_assert!(false, "no certificate: {:?}", other),
        }
    }

    #[test]
    fn tilde_qp_error_identity(t in -60i64..=60, l in 0u32..=4, n in 0u32..=4, k in 0usize..3) {
        let p = Integer::from([2, 3, 7][k]);
        let y = Rational::new(Integer::from(t), p.pow(l));
        let z = tilde_qp_construct(&p, &y, n).unwrap();
        let mut reduced = 0;
        let mut den = y.denom().clone();
        while den > Integer::from(1) {
            den /= &p;
            reduced += 1;
        }
        let err = if z > y { &z - &y } else { &y - &z };
        prop_assert_eq!(err, Rational::new(Integer::from(1), p.pow(2 * n + 2 * reduced + 1)));
        prop_assert!(qp_member(&z, &PrimeSet::new([p]).unwrap()));
        prop_assert!(!is_square(&z));
    }

    #[test]
    fn linear_validation(ops in prop::collection::vec(0u8..6, 1..12)) {
        let mut src = String::from("name gen\nmode full\n");
        let mut nonlinear = false;
        for op in &ops {
            src.push_str(match op {
                0 => "        ADD r2 <- r1 r2\n",
                1 => "        SUB r3 <- r2 r1\n",
                2 => "        CONST r2 <- 1\n",
                3 => { nonlinear = true; "        MUL r2 <- r1 r1\n" }
                4 => { nonlinear = true; "        CONST r3 <- 5/2\n" }
                _ => { nonlinear = true; "        DIV r2 <- r1 r3\n" }
            });
        }
        src.push_str("        HALT\n");
        let prog = parse_program(&src).unwrap();
        prop_assert_eq!(validate_program(&prog, Mode::Linear).is_err(), nonlinear);
        prop_assert!(validate_program(&prog, Mode::Full).is_ok());
    }

    #[test]
    fn runs_are_deterministic(x in small_rat()) {
        let prog = bss_core::problems::shipped_program("branch").unwrap();
        let input = [AlgebraicNumber::from_rational(x)];
        let a = run(&prog, &input, &OracleSpec::None, 1000).unwrap();
        let b = run(&prog, &input, &OracleSpec::None, 1000).unwrap();
        prop_assert_eq!(a.output(), b.output());
        prop_assert_eq!(a.observations, b.observations);
        prop_assert_eq!(a.steps, b.steps);
    }
}
