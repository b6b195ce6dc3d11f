use alloc::vec;

use super::*;
use crate::qarith::qnum;

fn q() -> QScalar {
    QScalar::q_pow(1)
}

fn qi() -> QScalar {
    QScalar::q_pow(-1)
}

fn lam() -> QScalar {
    QScalar::lambda()
}

/// The SL_q(2) relations as rules over a < b < c < d:
/// ba -> q⁻¹ab, ca -> q⁻¹ac, da -> ad - λbc, cb -> bc, db -> q⁻¹bd, dc -> q⁻¹cd.
fn slq2() -> RewriteSystem {
    let ab = Alphabet::new(["a", "b", "c", "d"]);
    let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
    let w = |x: u8, y: u8| NCPoly::from_word(vec![x, y]);
    RewriteSystem::new(
        ab,
        vec![
            ((b, a), w(a, b).scale(&qi())),
            ((c, a), w(a, c).scale(&qi())),
            ((d, a), w(a, d).sub(&w(b, c).scale(&lam()))),
            ((c, b), w(b, c)),
            ((d, b), w(b, d).scale(&qi())),
            ((d, c), w(c, d).scale(&qi())),
        ],
    )
    .unwrap()
}

#[test]
fn normal_order_basics() {
    let sys = slq2();
    // b·a -> q⁻¹ a·b
    let nf = sys.normal_order(&NCPoly::from_word(vec![1, 0]), DEFAULT_FUEL).unwrap();
    assert_eq!(nf, NCPoly::from_word(vec![0, 1]).scale(&qi()));
    // ordered word is already normal
    let w = NCPoly::from_word(vec![0, 1, 2, 3]);
    assert_eq!(sys.normal_order(&w, DEFAULT_FUEL).unwrap(), w);
}

#[test]
fn normal_order_delta_x_rule() {
    // ∂x = 1 + q x∂ over x < ∂
    let ab = Alphabet::new(["x", "del"]);
    let rule = NCPoly::one().add(&NCPoly::from_word(vec![0, 1]).scale(&q()));
    let sys = RewriteSystem::new(ab, vec![((1, 0), rule)]).unwrap();
    let nf = sys.normal_order(&NCPoly::from_word(vec![1, 0]), DEFAULT_FUEL).unwrap();
    let expect = NCPoly::one().add(&NCPoly::from_word(vec![0, 1]).scale(&q()));
    assert_eq!(nf, expect);
}

#[test]
fn normal_order_is_idempotent_and_linear() {
    let sys = slq2();
    let p = NCPoly::from_word(vec![3, 2, 1, 0]).add(&NCPoly::from_word(vec![2, 0]).scale(&qnum(3)));
    let nf = sys.normal_order(&p, DEFAULT_FUEL).unwrap();
    assert_eq!(sys.normal_order(&nf, DEFAULT_FUEL).unwrap(), nf);
    // linearity
    let r = NCPoly::from_word(vec![1, 0, 3]);
    let a = qnum(2);
    let b = -&q();
    let lhs = sys
        .normal_order(&p.scale(&a).add(&r.scale(&b)), DEFAULT_FUEL)
        .unwrap();
    let rhs = sys
        .normal_order(&p, DEFAULT_FUEL)
        .unwrap()
        .scale(&a)
        .add(&sys.normal_order(&r, DEFAULT_FUEL).unwrap().scale(&b));
    assert_eq!(lhs, rhs);
}

#[test]
fn grading_preserved_for_homogeneous_systems() {
    let sys = slq2(); // inhomogeneous only in da-rule? no: ad - λbc is degree 2: homogeneous
    let p = NCPoly::from_word(vec![3, 3, 2, 1, 0]);
    let nf = sys.normal_order(&p, DEFAULT_FUEL).unwrap();
    assert!(nf.terms().all(|(w, _)| w.len() == 5));
}

#[test]
fn pbw_passes_for_slq2() {
    assert!(slq2().pbw_overlap_check().is_empty());
}

#[test]
fn pbw_passes_for_commutative_pair() {
    let ab = Alphabet::new(["a", "b"]);
    let sys = RewriteSystem::new(ab, vec![((1, 0), NCPoly::from_word(vec![0, 1]))]).unwrap();
    assert!(sys.pbw_overlap_check().is_empty());
}

#[test]
fn pbw_fails_with_the_counterexample_witness() {
    // yx -> xy + x² + y² over x < y; y² is larger than yx, so the order is
    // violated and the quotient collapses
    let ab = Alphabet::new(["x", "y"]);
    let (x, y) = (0u8, 1u8);
    let rhs = NCPoly::from_word(vec![x, y])
        .add(&NCPoly::from_word(vec![x, x]))
        .add(&NCPoly::from_word(vec![y, y]));
    // the checked constructor must reject this orientation
    assert!(matches!(
        RewriteSystem::new(ab.clone(), vec![((y, x), rhs.clone())]),
        Err(NcError::BadReplacement { .. })
    ));
    let sys = RewriteSystem::new_unchecked(ab, vec![((y, x), rhs)]);
    let failures = sys.pbw_overlap_check();
    assert!(!failures.is_empty());
    // witness: x³ + x²y + xy² + y³ = 0
    let expect = NCPoly::from_word(vec![x, x, x])
        .add(&NCPoly::from_word(vec![x, x, y]))
        .add(&NCPoly::from_word(vec![x, y, y]))
        .add(&NCPoly::from_word(vec![y, y, y]));
    let found = failures
        .iter()
        .any(|f| f.witness.as_ref().map(|p| *p == expect).unwrap_or(false));
    assert!(found, "expected the cubic witness among failures");
}

#[test]
fn detq_is_central() {
    let sys = slq2();
    let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
    // det_q = ad - q bc
    let z = NCPoly::from_word(vec![a, d]).sub(&NCPoly::from_word(vec![b, c]).scale(&q()));
    let residuals = sys
        .commutant_residual(&z, &[a, b, c, d], DEFAULT_FUEL)
        .unwrap();
    assert!(residuals.iter().all(|r| r.is_zero()));
    // a alone is not central: [a, b] != 0
    let res_a = sys.commutant_residual(&NCPoly::gen(a), &[b], DEFAULT_FUEL).unwrap();
    assert!(!res_a[0].is_zero());
    // 1 is central
    let res_one = sys
        .commutant_residual(&NCPoly::one(), &[a, b, c, d], DEFAULT_FUEL)
        .unwrap();
    assert!(res_one.iter().all(|r| r.is_zero()));
}

#[test]
fn annihilation_pairs_reduce_inverse_words() {
    // normal form keeps Λ powers leftmost: Λ⁻¹ < Λ < x with ΛΛ⁻¹ -> 1,
    // Λ⁻¹Λ -> 1, and xΛ -> q⁻¹Λx, xΛ⁻¹ -> qΛ⁻¹x (from Λx = qxΛ)
    let ab = Alphabet::new(["Li", "L", "x"]);
    let (li, l, x) = (0u8, 1u8, 2u8);
    let sys = RewriteSystem::new(
        ab,
        vec![
            ((l, li), NCPoly::one()),
            ((li, l), NCPoly::one()),
            ((x, l), NCPoly::from_word(vec![l, x]).scale(&qi())),
            ((x, li), NCPoly::from_word(vec![li, x]).scale(&q())),
        ],
    )
    .unwrap();
    // Λ x Λ⁻¹ -> q Λ Λ⁻¹ x -> q x
    let w = NCPoly::from_word(vec![l, x, li]);
    let nf = sys.normal_order(&w, DEFAULT_FUEL).unwrap();
    assert_eq!(nf, NCPoly::gen(x).scale(&q()));
    assert!(sys.pbw_overlap_check().is_empty());
}

#[test]
fn system_from_pairs_compiles_slq2() {
    let ab = Alphabet::new(["a", "b", "c", "d"]);
    let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
    let w = |x: u8, y: u8| NCPoly::from_word(vec![x, y]);
    // relations written as equalities lhs - rhs = 0
    let relations = vec![
        w(a, b).sub(&w(b, a).scale(&q())),
        w(a, c).sub(&w(c, a).scale(&q())),
        w(a, d).sub(&w(d, a)).sub(&w(b, c).scale(&lam())),
        w(b, c).sub(&w(c, b)),
        w(b, d).sub(&w(d, b).scale(&q())),
        w(c, d).sub(&w(d, c).scale(&q())),
    ];
    let sys = system_from_pairs(ab, &relations).unwrap();
    assert_eq!(sys.num_rules(), 6);
    let reference = slq2();
    for (pair, rhs) in reference.rules() {
        assert_eq!(sys.rule(*pair), Some(rhs), "pair {pair:?}");
    }
}

#[test]
fn system_from_pairs_rejects_conflicts_and_unorientable() {
    let ab = Alphabet::new(["x", "y"]);
    let (x, y) = (0u8, 1u8);
    let w = |a: u8, b: u8| NCPoly::from_word(vec![a, b]);
    // duplicate pair with a different coefficient
    let rels = vec![
        w(y, x).sub(&w(x, y).scale(&q())),
        w(y, x).sub(&w(x, y).scale(&qi())),
    ];
    assert!(matches!(
        system_from_pairs(ab.clone(), &rels),
        Err(NcError::ConflictingRule { .. })
    ));
    // exact duplicates merge fine
    let rels2 = vec![
        w(y, x).sub(&w(x, y).scale(&q())),
        w(y, x).sub(&w(x, y).scale(&q())),
    ];
    assert_eq!(system_from_pairs(ab.clone(), &rels2).unwrap().num_rules(), 1);
    // non-orientable: cubic leading word
    let rels3 = vec![NCPoly::from_word(vec![x, y, x]).sub(&NCPoly::gen(x))];
    let sys3 = system_from_pairs(ab, &rels3);
    assert!(matches!(sys3, Err(NcError::NonOrientable { .. })));
}

#[test]
fn relation_text_round_trip() {
    let text = "\
# SL_q(2)
generators: a b c d
a b = q b a
a c = q c a
a d = d a + (q - q^-1) b c
b c = c b
b d = q d b
c d = q d c
";
    let sys = parse_relation_system(text).unwrap();
    let reference = slq2();
    assert_eq!(sys.num_rules(), 6);
    for (pair, rhs) in reference.rules() {
        assert_eq!(sys.rule(*pair), Some(rhs), "pair {pair:?}");
    }
    // rendering a rule produces parseable text
    let rendered = sys.alphabet().render(sys.rule((3, 0)).unwrap());
    assert!(!rendered.is_empty());
}

#[test]
fn fuel_exhaustion_reports_word() {
    // x -> loop via unchecked bad rule: yx -> yx is not constructible
    // (identical-word replacement violates the order even unchecked checks
    // nothing), so use the counterexample system, which cycles on y x x.
    let ab = Alphabet::new(["x", "y"]);
    let (x, y) = (0u8, 1u8);
    let rhs = NCPoly::from_word(vec![x, y])
        .add(&NCPoly::from_word(vec![x, x]))
        .add(&NCPoly::from_word(vec![y, y]));
    let sys = RewriteSystem::new_unchecked(ab, vec![((y, x), rhs)]);
    let out = sys.normal_order(&NCPoly::from_word(vec![y, x, x]), 10_000);
    assert!(matches!(out, Err(NcError::NonTermination { .. })));
}

#[test]
fn leading_word_and_monic() {
    let p = NCPoly::from_word(vec![0, 1]).scale(&qnum(2)).add(&NCPoly::from_word(vec![1]));
    assert_eq!(p.leading_word(), Some(&vec![0u8, 1u8]));
    let m = p.monic();
    assert!(m.coeff(&vec![0, 1]).is_one());
    // words of equal length compare lexicographically
    let a: Word = vec![0, 1];
    let b: Word = vec![1, 0];
    assert!(word_lt(&a, &b));
    assert!(word_lt(&vec![2], &a));
}
