//! R-matrix suite: Yang–Baxter checks, projector identities, RTT reduction,
//! quantum-plane lists, the confluence certificates, the deliberate PBW
//! counterexample, and the one-dimensional Heisenberg derivation.

use qdha_core::ncalg::{system_from_pairs, Alphabet, NCPoly, RewriteSystem, DEFAULT_FUEL};
use qdha_core::qarith::QScalar;
use qdha_core::rmatrix::{
    combined_plane_system, heisenberg_1d_check, plane_system, projectors_gl, r_flip, r_gl,
    rtt_relations, t_alphabet, ybe_residual, PlaneKind, QMat,
};

use crate::config::RunConfig;
use crate::report::CheckResult;

pub fn checks(_cfg: &RunConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let r2 = r_gl(2);
    let r3 = r_gl(3);

    // explicit 4×4 entries
    let lam = QScalar::lambda();
    let q = QScalar::q_pow(1);
    let explicit_ok = *r2.get(0, 0, 0, 0) == q
        && *r2.get(0, 1, 0, 1) == lam
        && r2.get(0, 1, 1, 0).is_one()
        && r2.get(1, 0, 0, 1).is_one()
        && r2.get(1, 0, 1, 0).is_zero()
        && *r2.get(1, 1, 1, 1) == q;
    out.push(CheckResult::exact("gl2-matrix-explicit-entries", explicit_ok, None));

    out.push(CheckResult::exact("ybe-gl2", ybe_residual(&r2) == 0, None));
    out.push(CheckResult::exact("ybe-gl3", ybe_residual(&r3) == 0, None));
    out.push(CheckResult::exact(
        "ybe-gl2-inverse",
        ybe_residual(&r2.inverse().expect("invertible")) == 0,
        None,
    ));
    out.push(CheckResult::exact(
        "ybe-gl3-inverse",
        ybe_residual(&r3.inverse().expect("invertible")) == 0,
        None,
    ));
    out.push(CheckResult::exact(
        "rhat-pair-symmetry",
        r2.pair_transpose() == r2 && r3.pair_transpose() == r3,
        None,
    ));

    // projectors
    match projectors_gl(&r2) {
        Ok((a, s)) => {
            out.push(CheckResult::exact(
                "projectors-gl2-identities",
                a.multiplicity == QScalar::from_int(1) && s.multiplicity == QScalar::from_int(3),
                None,
            ));
        }
        Err(e) => out.push(CheckResult::exact(
            "projectors-gl2-identities",
            false,
            Some(e.to_string()),
        )),
    }

    // RTT: 16 relations -> 6 rules, each reducing to zero
    let rels = rtt_relations(&r2);
    let sys = system_from_pairs(t_alphabet(2), &rels).expect("orientable");
    let all_reduce = rels
        .iter()
        .all(|rel| sys.normal_order(rel, DEFAULT_FUEL).map(|p| p.is_zero()).unwrap_or(false));
    out.push(CheckResult::exact(
        "rtt-16-relations-reduce-to-6-rules",
        sys.num_rules() == 6 && all_reduce,
        None,
    ));

    // det_q = ad - qbc is central; a alone is not
    let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
    let detq = NCPoly::from_word(vec![a, d])
        .sub(&NCPoly::from_word(vec![b, c]).scale(&QScalar::q_pow(1)));
    let central = sys
        .commutant_residual(&detq, &[a, b, c, d], DEFAULT_FUEL)
        .map(|rs| rs.iter().all(NCPoly::is_zero))
        .unwrap_or(false);
    let a_not_central = sys
        .commutant_residual(&NCPoly::gen(a), &[b], DEFAULT_FUEL)
        .map(|rs| !rs[0].is_zero())
        .unwrap_or(false);
    out.push(CheckResult::exact("detq-central", central && a_not_central, None));

    // flip matrix: all T entries commute
    let flip_sys = system_from_pairs(t_alphabet(2), &rtt_relations(&r_flip(2))).expect("orientable");
    let flip_ok = flip_sys
        .rules()
        .all(|(pair, rhs)| *rhs == NCPoly::from_word(vec![pair.1, pair.0]));
    out.push(CheckResult::exact("flip-matrix-commutative", flip_ok, None));

    // the matrices t^α_γ = R̂^{aα}_{γb} satisfy RTT exactly
    let mut t_ok = true;
    for r in [&r2, &r3] {
        let n = r.n();
        let t_mat =
            |alpha: usize, gamma: usize| QMat::from_fn(n, |ai, bi| r.get(ai, alpha, gamma, bi).clone());
        for rel in rtt_relations(r) {
            let mut acc = QMat::zero(n);
            for (word, coeff) in rel.terms() {
                let mut prod = QMat::identity(n);
                for g in word {
                    let (i, j) = ((*g as usize) / n, (*g as usize) % n);
                    prod = prod.mul(&t_mat(i, j));
                }
                acc = acc.add(&prod.scale(coeff));
            }
            t_ok &= acc.is_zero();
        }
    }
    out.push(CheckResult::exact("t-matrices-satisfy-rtt", t_ok, None));

    // plane-relation lists (n = 2) fingerprints
    let count_ok = |kind: PlaneKind, n_rules: usize| -> bool {
        plane_system(&r2, &kind)
            .map(|s| s.num_rules() == n_rules)
            .unwrap_or(false)
    };
    out.push(CheckResult::exact(
        "plane-lists-generate",
        count_ok(PlaneKind::XX, 1)
            && count_ok(PlaneKind::XDel, 4)
            && count_ok(PlaneKind::XDelHat, 4)
            && count_ok(PlaneKind::XXbar, 4)
            && count_ok(PlaneKind::XDx, 4)
            && count_ok(PlaneKind::XYKappa(QScalar::one()), 4),
        None,
    ));

    // confluence certificates
    let certs: Vec<(&str, Vec<PlaneKind>)> = vec![
        ("pbw-slq2", vec![]),
        ("pbw-x-del", vec![PlaneKind::XX, PlaneKind::XDel]),
        (
            "pbw-x-del-delhat-full",
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
            "pbw-x-xbar",
            vec![PlaneKind::XX, PlaneKind::XbarXbar, PlaneKind::XXbar],
        ),
        ("pbw-x-dx", vec![PlaneKind::XX, PlaneKind::XDx]),
        (
            "pbw-x-y-kappa-1",
            vec![PlaneKind::YY, PlaneKind::XX, PlaneKind::XYKappa(QScalar::one())],
        ),
    ];
    for (name, kinds) in certs {
        let sys = if kinds.is_empty() {
            system_from_pairs(t_alphabet(2), &rtt_relations(&r2)).expect("orientable")
        } else {
            combined_plane_system(&r2, &kinds).expect("orientable")
        };
        let failures = sys.pbw_overlap_check();
        out.push(CheckResult::exact(
            name,
            failures.is_empty(),
            failures.first().map(|f| format!("{} ({})", f.word, f.kind)),
        ));
    }

    // centrality of x̄_l x^l under Γ = qR̂⁻¹
    let mixed = combined_plane_system(
        &r2,
        &[PlaneKind::XX, PlaneKind::XbarXbar, PlaneKind::XXbar],
    )
    .expect("orientable");
    let ab = mixed.alphabet();
    let g = |n: &str| ab.index_of(n).unwrap();
    let z = NCPoly::from_word(vec![g("xb1"), g("x1")])
        .add(&NCPoly::from_word(vec![g("xb2"), g("x2")]));
    let central = mixed
        .commutant_residual(&z, &[g("x1"), g("x2"), g("xb1"), g("xb2")], DEFAULT_FUEL)
        .map(|rs| rs.iter().all(NCPoly::is_zero))
        .unwrap_or(false);
    out.push(CheckResult::exact("xbar-x-contraction-central", central, None));

    // ∂d = q⁻²d∂ in the x, ∂, dx algebra
    let xd = combined_plane_system(
        &r2,
        &[
            PlaneKind::XX,
            PlaneKind::XDel,
            PlaneKind::DelDel,
            PlaneKind::XDx,
            PlaneKind::DelDx,
        ],
    )
    .expect("orientable");
    let ab = xd.alphabet();
    let g = |n: &str| ab.index_of(n).unwrap();
    let d_form = NCPoly::from_word(vec![g("dx1"), g("d1")])
        .add(&NCPoly::from_word(vec![g("dx2"), g("d2")]));
    let scaling_ok = ["d1", "d2"].iter().all(|di| {
        let lhs = NCPoly::gen(g(di)).ncmul(&d_form);
        let rhs = d_form.ncmul(&NCPoly::gen(g(di))).scale(&QScalar::q_pow(-2));
        xd.normal_order(&lhs.sub(&rhs), DEFAULT_FUEL)
            .map(|p| p.is_zero())
            .unwrap_or(false)
    });
    out.push(CheckResult::exact("derivative-of-d-scaling", scaling_ok, None));

    // the PBW counterexample must fail with the cubic witness
    let ab = Alphabet::new(["x", "y"]);
    let (x, y) = (0u8, 1u8);
    let rhs = NCPoly::from_word(vec![x, y])
        .add(&NCPoly::from_word(vec![x, x]))
        .add(&NCPoly::from_word(vec![y, y]));
    let bad = RewriteSystem::new_unchecked(ab, vec![((y, x), rhs)]);
    let failures = bad.pbw_overlap_check();
    let witness = NCPoly::from_word(vec![x, x, x])
        .add(&NCPoly::from_word(vec![x, x, y]))
        .add(&NCPoly::from_word(vec![x, y, y]))
        .add(&NCPoly::from_word(vec![y, y, y]));
    let found = failures
        .iter()
        .any(|f| f.witness.as_ref().map(|p| *p == witness).unwrap_or(false));
    out.push(CheckResult::exact(
        "pbw-counterexample-fails-with-cubic-witness",
        !failures.is_empty() && found,
        None,
    ));

    // the one-dimensional Heisenberg derivation
    let report = heisenberg_1d_check();
    for item in &report.items {
        out.push(CheckResult::exact(
            &format!("heisenberg-1d/{}", slug(&item.name)),
            item.passed,
            item.witness.clone(),
        ));
    }
    out
}

fn slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
        .collect::<String>()
        .split('-')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}
