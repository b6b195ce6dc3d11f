use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use super::*;

fn q() -> QScalar {
    QScalar::q_pow(1)
}

#[test]
fn qnum_small_values() {
    assert!(qnum(0).is_zero());
    assert!(qnum(1).is_one());
    // [2] = q + q^-1
    assert_eq!(qnum(2), &q() + &QScalar::q_pow(-1));
}

#[test]
fn qnum_matches_ratio_definition() {
    let lambda = QScalar::lambda();
    for m in -9i64..=9 {
        let ratio = &(&QScalar::q_pow(m) - &QScalar::q_pow(-m)) / &lambda;
        assert_eq!(qnum(m), ratio, "[{m}]");
    }
}

#[test]
fn qnum_is_odd() {
    for m in 0..=12 {
        assert_eq!(qnum(-m), -&qnum(m));
    }
}

#[test]
fn qnum_pascal_identity() {
    // [m+n] = q^n [m] + q^-m [n]
    for m in 0..=8i64 {
        for n in 0..=8i64 {
            let lhs = qnum(m + n);
            let rhs = &(&QScalar::q_pow(n) * &qnum(m)) + &(&QScalar::q_pow(-m) * &qnum(n));
            assert_eq!(lhs, rhs, "m={m} n={n}");
        }
    }
}

#[test]
fn qfact_small_values() {
    assert!(qfact(0).unwrap().is_one());
    assert_eq!(qfact(2).unwrap(), qnum(2));
    // [3]! = (q + q^-1)(q^2 + 1 + q^-2)
    let expected = &qnum(2) * &qnum(3);
    assert_eq!(qfact(3).unwrap(), expected);
    assert_eq!(qfact(-1), Err(QArithError::NegativeFactorial));
}

#[test]
fn eval_examples() {
    let v = qnum(2).eval_at(1.1).unwrap();
    assert!((v - (1.1 + 1.0 / 1.1)).abs() < 1e-15);
    assert!((QScalar::lambda().eval_at(1.0).unwrap()).abs() < 1e-15);
    let v3 = qnum(3).eval_at(2.0).unwrap();
    assert!((v3 - 5.25).abs() < 1e-12);
}

#[test]
fn eval_reports_poles() {
    let s = QScalar::from_ratio(HalfLaurent::one(), &HalfLaurent::q_pow(1) - &HalfLaurent::one())
        .unwrap();
    assert_eq!(s.eval_at(1.0), Err(QArithError::Pole));
}

#[test]
fn canonical_form_cancels() {
    // (q^2 - 1)/(q - 1) = q + 1
    let num = &HalfLaurent::q_pow(2) - &HalfLaurent::one();
    let den = &HalfLaurent::q_pow(1) - &HalfLaurent::one();
    let s = QScalar::from_ratio(num, den).unwrap();
    assert_eq!(s, &q() + &QScalar::one());
    assert!(s.denom().is_one());
}

#[test]
fn denominator_lowest_coefficient_is_one() {
    // 1/(-q + q^3): den must be normalized to lowest coefficient +1
    let s = QScalar::from_ratio(
        HalfLaurent::one(),
        &HalfLaurent::q_pow(3) - &HalfLaurent::q_pow(1),
    )
    .unwrap();
    let (lo, _) = s.denom().exp_range().unwrap();
    assert_eq!(lo, 0);
    assert!(s.denom().coeff(0).is_one());
    // and the value is still right: s * (q^3 - q) = 1
    let back = &s * &(&QScalar::q_pow(3) - &q());
    assert!(back.is_one());
}

#[test]
fn cq_scalar_i_squared_is_minus_one() {
    let i = CQScalar::i();
    assert_eq!(&i * &i, CQScalar::from_real(-&QScalar::one()));
    let z = CQScalar { re: q(), im: qnum(2) };
    assert_eq!(z.conj().conj(), z);
    let prod = &z * &z.conj();
    assert!(prod.im.is_zero());
}

#[test]
fn display_examples() {
    assert_eq!(format!("{}", qnum(2)), "q + q^-1");
    assert_eq!(format!("{}", QScalar::t_pow(1)), "q^(1/2)");
    assert_eq!(format!("{}", QScalar::zero()), "0");
    let third = QScalar::from_rational(BigRational::new(1.into(), 3.into()));
    assert_eq!(format!("{}", &third * &q()), "1/3*q");
}

#[test]
fn parse_display_round_trip_examples() {
    for s in [
        "q + q^-1",
        "(q^2 - 1)/(q^2 + 1)",
        "q^(1/2) - q^(-1/2)",
        "-3/2*q^4 + 7",
        "0",
    ] {
        let v = parse_qscalar(s).unwrap();
        let printed = format!("{v}");
        let reparsed = parse_qscalar(&printed).unwrap();
        assert_eq!(v, reparsed, "round trip through '{printed}'");
    }
}

fn arb_halflaurent(max_exp: i64) -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-max_exp..=max_exp, -9i64..=9), 1..4).prop_map(|terms| {
        let mut p = HalfLaurent::zero();
        for (e, c) in terms {
            p = &p + &HalfLaurent::monomial(e, BigRational::from_integer(c.into()));
        }
        p
    })
}

fn arb_qscalar() -> impl Strategy<Value = QScalar> {
    (arb_halflaurent(12), arb_halflaurent(6)).prop_map(|(n, d)| {
        let d = if d.is_zero() { HalfLaurent::one() } else { d };
        QScalar::from_ratio(n, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_qscalar(), b in arb_qscalar(), c in arb_qscalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn eval_commutes_with_arithmetic(
        a in arb_halflaurent(40),
        b in arb_halflaurent(40),
        q0 in prop::sample::select(alloc::vec![1.1f64, 1.5, 2.0]),
    ) {
        let sa = QScalar::from_ratio(a, HalfLaurent::one()).unwrap();
        let sb = QScalar::from_ratio(b, HalfLaurent::one()).unwrap();
        let lhs = (&sa * &sb).eval_at(q0).unwrap();
        let rhs = sa.eval_at(q0).unwrap() * sb.eval_at(q0).unwrap();
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() / scale < 1e-12);
        let lhs2 = (&sa + &sb).eval_at(q0).unwrap();
        let rhs2 = sa.eval_at(q0).unwrap() + sb.eval_at(q0).unwrap();
        let scale2 = 1.0 + lhs2.abs().max(rhs2.abs());
        prop_assert!((lhs2 - rhs2).abs() / scale2 < 1e-12);
    }

    #[test]
    fn parse_print_round_trip(s in arb_qscalar()) {
        let printed = format!("{s}");
        let reparsed = parse_qscalar(&printed).unwrap();
        prop_assert_eq!(s, reparsed);
    }

    #[test]
    fn division_inverts_multiplication(a in arb_qscalar(), b in arb_qscalar()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(&prod / &b, a);
    }
}

#[test]
fn exact_div_factorials() {
    // [6]! / [4]! = [5][6]
    let f6 = qfact(6).unwrap();
    let f4 = qfact(4).unwrap();
    let quo = f6.numer().exact_div(f4.numer()).unwrap();
    let expect = &qnum(5) * &qnum(6);
    assert_eq!(quo, expect.numer().clone());
    // and a non-divisor is rejected
    let bad = f6.numer().exact_div(&(&HalfLaurent::q_pow(1) + &HalfLaurent::from_int(3)));
    assert_eq!(bad, Err(QArithError::InexactDivision));
}

#[test]
fn big_qfact_canonicalization_stays_fast() {
    // exercise the modular gcd on factorial-scale polynomials
    let f20 = qfact(20).unwrap();
    let f18 = qfact(18).unwrap();
    let ratio = &f20 / &f18;
    assert_eq!(ratio, &qnum(19) * &qnum(20));
    let xs: Vec<QScalar> = (1..=20).map(qnum).collect();
    let mut acc = QScalar::zero();
    for x in &xs {
        acc = &acc + &(&QScalar::one() / x);
    }
    // sanity: evaluates finitely
    assert!(acc.eval_at(1.5).unwrap().is_finite());
}
