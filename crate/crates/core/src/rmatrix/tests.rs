use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::ncalg::Word;

fn q() -> QScalar {
    QScalar::q_pow(1)
}

fn qp(k: i64) -> QScalar {
    QScalar::q_pow(k)
}

fn lam() -> QScalar {
    QScalar::lambda()
}

#[test]
fn r_gl2_is_the_explicit_matrix() {
    let r = r_gl(2);
    // rows/cols 11, 12, 21, 22 with entries (q; λ,1; 1,0; q)
    let expect = [
        [q(), QScalar::zero(), QScalar::zero(), QScalar::zero()],
        [QScalar::zero(), lam(), QScalar::one(), QScalar::zero()],
        [QScalar::zero(), QScalar::one(), QScalar::zero(), QScalar::zero()],
        [QScalar::zero(), QScalar::zero(), QScalar::zero(), q()],
    ];
    for row in 0..4 {
        for col in 0..4 {
            assert_eq!(*r.matrix().at(row, col), expect[row][col], "({row},{col})");
        }
    }
    // R̂^{12}_{21} = 1 (0-based: (0,1),(1,0))
    assert!(r.get(0, 1, 1, 0).is_one());
}

#[test]
fn r_gl3_diagonal_entry() {
    let r = r_gl(3);
    assert_eq!(*r.get(0, 0, 0, 0), q());
    // symmetry R̂^{ab}_{cd} = R̂^{cd}_{ab} for n = 2 and 3
    for n in [2usize, 3] {
        let r = r_gl(n);
        assert_eq!(r.pair_transpose(), r, "n={n}");
    }
}

#[test]
fn yang_baxter_holds_for_gl_and_inverses() {
    for n in [2usize, 3] {
        let r = r_gl(n);
        assert_eq!(ybe_residual(&r), 0, "r_gl({n})");
        let rinv = r.inverse().unwrap();
        assert_eq!(ybe_residual(&rinv), 0, "r_gl({n})^-1");
    }
    assert_eq!(ybe_residual(&RMatrix::identity(2)), 0);
    // a perturbed matrix fails
    let mut bad = r_gl(2);
    bad.set(0, 0, 1, 1, QScalar::one());
    assert!(ybe_residual(&bad) > 0);
}

#[test]
fn projector_decomposition() {
    let (a, s) = projectors_gl(&r_gl(2)).unwrap();
    assert_eq!(a.multiplicity, QScalar::from_int(1));
    assert_eq!(s.multiplicity, QScalar::from_int(3));
    assert_eq!(a.eigenvalue, -&qp(-1));
    assert_eq!(s.eigenvalue, q());
    // n = 3: ranks 3 and 6
    let (a3, s3) = projectors_gl(&r_gl(3)).unwrap();
    assert_eq!(a3.multiplicity, QScalar::from_int(3));
    assert_eq!(s3.multiplicity, QScalar::from_int(6));
    // identity does not satisfy the characteristic equation
    assert!(matches!(
        projectors_gl(&RMatrix::identity(2)),
        Err(RMatrixError::CharacteristicEquation)
    ));
}

/// The SL_q(2) rewrite system over a < b < c < d.
fn slq2() -> RewriteSystem {
    system_from_pairs(t_alphabet(2), &rtt_relations(&r_gl(2))).unwrap()
}

#[test]
fn rtt_relations_reduce_to_the_six_rules() {
    let sys = slq2();
    assert_eq!(sys.num_rules(), 6);
    let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
    let w = |x: u8, y: u8| NCPoly::from_word(vec![x, y]);
    // ba -> q⁻¹ab, ca -> q⁻¹ac, da -> ad - λbc, cb -> bc, db -> q⁻¹bd, dc -> q⁻¹cd
    assert_eq!(sys.rule((b, a)), Some(&w(a, b).scale(&qp(-1))));
    assert_eq!(sys.rule((c, a)), Some(&w(a, c).scale(&qp(-1))));
    assert_eq!(sys.rule((d, a)), Some(&w(a, d).sub(&w(b, c).scale(&lam()))));
    assert_eq!(sys.rule((c, b)), Some(&w(b, c)));
    assert_eq!(sys.rule((d, b)), Some(&w(b, d).scale(&qp(-1))));
    assert_eq!(sys.rule((d, c)), Some(&w(c, d).scale(&qp(-1))));
    // every one of the 16 emitted relations normal-orders to zero
    for rel in rtt_relations(&r_gl(2)) {
        assert!(sys.normal_order(&rel, DEFAULT_FUEL).unwrap().is_zero());
    }
    assert!(sys.pbw_overlap_check().is_empty());
}

#[test]
fn rtt_worked_example_bd() {
    // (i,j,r,s) = (1,2,2,2): λ bd + db - q bd
    let rels = rtt_relations(&r_gl(2));
    // index: ((i·2+j)·2+r)·2+s with 0-based indices
    let rel = &rels[((0 * 2 + 1) * 2 + 1) * 2 + 1];
    let bd: Word = vec![1, 3];
    let db: Word = vec![3, 1];
    assert_eq!(rel.coeff(&bd), &lam() - &q());
    assert!(rel.coeff(&db).is_one());
    assert_eq!(rel.num_terms(), 2);
}

#[test]
fn flip_matrix_makes_t_entries_commute() {
    let rels = rtt_relations(&r_flip(2));
    let sys = system_from_pairs(t_alphabet(2), &rels).unwrap();
    // every rule is a plain transposition
    for (pair, rhs) in sys.rules() {
        assert_eq!(*rhs, NCPoly::from_word(vec![pair.1, pair.0]), "{pair:?}");
    }
    assert!(sys.pbw_overlap_check().is_empty());
}

#[test]
fn t_matrices_of_the_rmatrix_satisfy_rtt() {
    // (t^α_γ)_{ab} = R̂^{aα}_{γb} solve the RTT relations exactly
    for n in [2usize, 3] {
        let r = r_gl(n);
        let t_mat = |alpha: usize, gamma: usize| {
            QMat::from_fn(n, |a, b| r.get(a, alpha, gamma, b).clone())
        };
        for rel in rtt_relations(&r) {
            let mut acc = QMat::zero(n);
            for (word, coeff) in rel.terms() {
                let mut prod = QMat::identity(n);
                for g in word {
                    let (i, j) = ((*g as usize) / n, (*g as usize) % n);
                    prod = prod.mul(&t_mat(i, j));
                }
                acc = acc.add(&prod.scale(coeff));
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }
}

// ---------------------------------------------------------------------------
// Plane systems: every generated n = 2 system must coincide rule-by-rule
// with the explicit lists.
// ---------------------------------------------------------------------------

fn rule_of(sys: &RewriteSystem, hi: &str, lo: &str) -> NCPoly {
    let a = sys.alphabet();
    sys.rule((a.index_of(hi).unwrap(), a.index_of(lo).unwrap()))
        .cloned()
        .unwrap_or_else(|| panic!("missing rule {hi} {lo}"))
}

fn word_p(sys: &RewriteSystem, names: &[&str]) -> NCPoly {
    let a = sys.alphabet();
    NCPoly::from_word(names.iter().map(|n| a.index_of(n).unwrap()).collect())
}

#[test]
fn plane_xx() {
    let sys = plane_system(&r_gl(2), &PlaneKind::XX).unwrap();
    assert_eq!(sys.num_rules(), 1);
    // x²x¹ -> q⁻¹ x¹x² (i.e. x¹x² = q x²x¹)
    assert_eq!(rule_of(&sys, "x2", "x1"), word_p(&sys, &["x1", "x2"]).scale(&qp(-1)));
    assert!(sys.pbw_overlap_check().is_empty());
}

#[test]
fn plane_xdel_matches_explicit_list() {
    let sys = plane_system(&r_gl(2), &PlaneKind::XDel).unwrap();
    assert_eq!(sys.num_rules(), 4);
    // ∂₁x¹ = 1 + q²x¹∂₁ + qλ x²∂₂
    let expect = NCPoly::one()
        .add(&word_p(&sys, &["x1", "d1"]).scale(&qp(2)))
        .add(&word_p(&sys, &["x2", "d2"]).scale(&(&q() * &lam())));
    assert_eq!(rule_of(&sys, "d1", "x1"), expect);
    // ∂₁x² = q x²∂₁, ∂₂x¹ = q x¹∂₂
    assert_eq!(rule_of(&sys, "d1", "x2"), word_p(&sys, &["x2", "d1"]).scale(&q()));
    assert_eq!(rule_of(&sys, "d2", "x1"), word_p(&sys, &["x1", "d2"]).scale(&q()));
    // ∂₂x² = 1 + q²x²∂₂
    let expect = NCPoly::one().add(&word_p(&sys, &["x2", "d2"]).scale(&qp(2)));
    assert_eq!(rule_of(&sys, "d2", "x2"), expect);
}

#[test]
fn plane_xdelhat_matches_explicit_list() {
    let sys = plane_system(&r_gl(2), &PlaneKind::XDelHat).unwrap();
    assert_eq!(sys.num_rules(), 4);
    // ∂̂₁x¹ = 1 + q⁻²x¹∂̂₁
    let expect = NCPoly::one().add(&word_p(&sys, &["x1", "dh1"]).scale(&qp(-2)));
    assert_eq!(rule_of(&sys, "dh1", "x1"), expect);
    // ∂̂₁x² = q⁻¹x²∂̂₁, ∂̂₂x¹ = q⁻¹x¹∂̂₂
    assert_eq!(rule_of(&sys, "dh1", "x2"), word_p(&sys, &["x2", "dh1"]).scale(&qp(-1)));
    assert_eq!(rule_of(&sys, "dh2", "x1"), word_p(&sys, &["x1", "dh2"]).scale(&qp(-1)));
    // ∂̂₂x² = 1 + q⁻²x²∂̂₂ - λ/q x¹∂̂₁
    let expect = NCPoly::one()
        .add(&word_p(&sys, &["x2", "dh2"]).scale(&qp(-2)))
        .sub(&word_p(&sys, &["x1", "dh1"]).scale(&(&lam() * &qp(-1))));
    assert_eq!(rule_of(&sys, "dh2", "x2"), expect);
}

#[test]
fn plane_deldel_and_hats() {
    let sys = plane_system(&r_gl(2), &PlaneKind::DelDel).unwrap();
    assert_eq!(sys.num_rules(), 1);
    // ∂₂∂₁ = q ∂₁∂₂ (from ∂₁∂₂ = q⁻¹∂₂∂₁)
    assert_eq!(rule_of(&sys, "d2", "d1"), word_p(&sys, &["d1", "d2"]).scale(&q()));
    let sys = plane_system(&r_gl(2), &PlaneKind::DelHatDelHat).unwrap();
    assert_eq!(rule_of(&sys, "dh2", "dh1"), word_p(&sys, &["dh1", "dh2"]).scale(&q()));
    // mixed ∂̂∂: ∂̂₁∂₁ = q²∂₁∂̂₁, ∂̂₁∂₂ = q∂₂∂̂₁,
    // ∂̂₂∂₁ = q∂₁∂̂₂ + λq∂₂∂̂₁, ∂̂₂∂₂ = q²∂₂∂̂₂
    let sys = plane_system(&r_gl(2), &PlaneKind::DelHatDel).unwrap();
    assert_eq!(sys.num_rules(), 4);
    assert_eq!(rule_of(&sys, "dh1", "d1"), word_p(&sys, &["d1", "dh1"]).scale(&qp(2)));
    assert_eq!(rule_of(&sys, "dh1", "d2"), word_p(&sys, &["d2", "dh1"]).scale(&q()));
    let expect = word_p(&sys, &["d1", "dh2"])
        .scale(&q())
        .add(&word_p(&sys, &["d2", "dh1"]).scale(&(&lam() * &q())));
    assert_eq!(rule_of(&sys, "dh2", "d1"), expect);
    assert_eq!(rule_of(&sys, "dh2", "d2"), word_p(&sys, &["d2", "dh2"]).scale(&qp(2)));
}

#[test]
fn plane_xxbar_matches_explicit_list() {
    // inverted from x¹x̄₁ = x̄₁x¹ - qλ x̄₂x², x¹x̄₂ = q x̄₂x¹,
    // x²x̄₁ = q x̄₁x², x²x̄₂ = x̄₂x²
    let sys = plane_system(&r_gl(2), &PlaneKind::XXbar).unwrap();
    assert_eq!(sys.num_rules(), 4);
    let expect = word_p(&sys, &["x1", "xb1"])
        .add(&word_p(&sys, &["x2", "xb2"]).scale(&(&q() * &lam())));
    assert_eq!(rule_of(&sys, "xb1", "x1"), expect);
    assert_eq!(rule_of(&sys, "xb1", "x2"), word_p(&sys, &["x2", "xb1"]).scale(&qp(-1)));
    assert_eq!(rule_of(&sys, "xb2", "x1"), word_p(&sys, &["x1", "xb2"]).scale(&qp(-1)));
    assert_eq!(rule_of(&sys, "xb2", "x2"), word_p(&sys, &["x2", "xb2"]));
}

#[test]
fn plane_xdx_matches_explicit_list() {
    // dx¹x¹ = q²x¹dx¹, dx¹x² = qx²dx¹ + (q²-1)x¹dx²,
    // dx²x¹ = qx¹dx², dx²x² = q²x²dx²
    let sys = plane_system(&r_gl(2), &PlaneKind::XDx).unwrap();
    assert_eq!(sys.num_rules(), 4);
    assert_eq!(rule_of(&sys, "dx1", "x1"), word_p(&sys, &["x1", "dx1"]).scale(&qp(2)));
    let expect = word_p(&sys, &["x2", "dx1"])
        .scale(&q())
        .add(&word_p(&sys, &["x1", "dx2"]).scale(&(&qp(2) - &QScalar::one())));
    assert_eq!(rule_of(&sys, "dx1", "x2"), expect);
    assert_eq!(rule_of(&sys, "dx2", "x1"), word_p(&sys, &["x1", "dx2"]).scale(&q()));
    assert_eq!(rule_of(&sys, "dx2", "x2"), word_p(&sys, &["x2", "dx2"]).scale(&qp(2)));
}

#[test]
fn plane_xy_kappa_matches_explicit_list() {
    // x¹y¹ = κy¹x¹, x¹y² = (κ/q)y²x¹ + (κ/q)λ y¹x², x²y¹ = (κ/q)y¹x²,
    // x²y² = κy²x²; here κ = 1
    let sys = plane_system(&r_gl(2), &PlaneKind::XYKappa(QScalar::one())).unwrap();
    assert_eq!(sys.num_rules(), 4);
    assert_eq!(rule_of(&sys, "x1", "y1"), word_p(&sys, &["y1", "x1"]));
    let expect = word_p(&sys, &["y2", "x1"])
        .scale(&qp(-1))
        .add(&word_p(&sys, &["y1", "x2"]).scale(&(&lam() * &qp(-1))));
    assert_eq!(rule_of(&sys, "x1", "y2"), expect);
    assert_eq!(rule_of(&sys, "x2", "y1"), word_p(&sys, &["y1", "x2"]).scale(&qp(-1)));
    assert_eq!(rule_of(&sys, "x2", "y2"), word_p(&sys, &["y2", "x2"]));
}

// ---------------------------------------------------------------------------
// Composite systems: confluence certificates
// ---------------------------------------------------------------------------

#[test]
fn composite_systems_are_confluent() {
    let r = r_gl(2);
    let cases: Vec<(&str, Vec<PlaneKind>)> = vec![
        ("x+del", vec![PlaneKind::XX, PlaneKind::XDel]),
        (
            "x+del+delhat",
            vec![
                PlaneKind::XX,
                PlaneKind::XDel,
                PlaneKind::DelDel,
                PlaneKind::XDelHat,
                PlaneKind::DelHatDelHat,
                PlaneKind::DelHatDel,
            ],
        ),
        (
            "x+xbar",
            vec![PlaneKind::XX, PlaneKind::XbarXbar, PlaneKind::XXbar],
        ),
        ("x+dx", vec![PlaneKind::XX, PlaneKind::XDx]),
        (
            "x+y",
            vec![
                PlaneKind::YY,
                PlaneKind::XX,
                PlaneKind::XYKappa(QScalar::one()),
            ],
        ),
    ];
    for (name, kinds) in cases {
        let sys = combined_plane_system(&r, &kinds).unwrap();
        let failures = sys.pbw_overlap_check();
        assert!(failures.is_empty(), "{name}: {} failures", failures.len());
    }
}

#[test]
fn xbar_x_contraction_is_central() {
    // x̄_l x^l commutes with every x^k and x̄_k under Γ = qR̂⁻¹
    let r = r_gl(2);
    let sys = combined_plane_system(
        &r,
        &[PlaneKind::XX, PlaneKind::XbarXbar, PlaneKind::XXbar],
    )
    .unwrap();
    let a = sys.alphabet();
    let g = |n: &str| a.index_of(n).unwrap();
    let z = NCPoly::from_word(vec![g("xb1"), g("x1")])
        .add(&NCPoly::from_word(vec![g("xb2"), g("x2")]));
    let gens = [g("x1"), g("x2"), g("xb1"), g("xb2")];
    let residuals = sys.commutant_residual(&z, &gens, DEFAULT_FUEL).unwrap();
    for (i, r) in residuals.iter().enumerate() {
        assert!(r.is_zero(), "generator {} not commuting", i);
    }
}

#[test]
fn derivative_of_d_scales_by_q_minus_2() {
    // ∂_i (dx^l ∂_l) = q⁻² (dx^l ∂_l) ∂_i in the x,∂,dx algebra
    let r = r_gl(2);
    let sys = combined_plane_system(
        &r,
        &[
            PlaneKind::XX,
            PlaneKind::XDel,
            PlaneKind::DelDel,
            PlaneKind::XDx,
            PlaneKind::DelDx,
        ],
    )
    .unwrap();
    let a = sys.alphabet();
    let g = |n: &str| a.index_of(n).unwrap();
    let d_form = NCPoly::from_word(vec![g("dx1"), g("d1")])
        .add(&NCPoly::from_word(vec![g("dx2"), g("d2")]));
    for di in ["d1", "d2"] {
        let lhs = NCPoly::gen(g(di)).ncmul(&d_form);
        let rhs = d_form.ncmul(&NCPoly::gen(g(di))).scale(&qp(-2));
        let res = sys
            .normal_order(&lhs.sub(&rhs), DEFAULT_FUEL)
            .unwrap();
        assert!(res.is_zero(), "{di}");
    }
}

// ---------------------------------------------------------------------------
// One-dimensional Heisenberg derivation
// ---------------------------------------------------------------------------

#[test]
fn heisenberg_1d_all_identities_hold() {
    let report = heisenberg_1d_check();
    for item in &report.items {
        assert!(
            item.passed,
            "{}: witness {:?}",
            item.name,
            item.witness.as_deref()
        );
    }
    assert!(report.all_passed());
    // the suite covers the named identities
    let names: Vec<&str> = report.items.iter().map(|i| i.name.as_str()).collect();
    assert!(names.iter().any(|n| n.contains("dtilde x")));
    assert!(names.iter().any(|n| n.contains("i Lambda^-1")));
    assert!(names.iter().any(|n| n.contains("Lambda p")));
}

// ---------------------------------------------------------------------------
// Fixture format
// ---------------------------------------------------------------------------

#[test]
fn fixture_round_trip() {
    for r in [r_gl(2), r_gl(3)] {
        let text = to_fixture(&r);
        let back = from_fixture(&text).unwrap();
        assert_eq!(back, r);
    }
    let table = pretty_table(&r_gl(2));
    assert_eq!(table.lines().count(), 4);
    assert!(from_fixture("nonsense").is_err());
}
