//! Exact calculus suite: Leibniz rules, group-like scaling, Green's theorem,
//! the operator homomorphism, partial integration and the integrals, all
//! with zero residual over exact scalars on randomized Laurent pairs.

use qdha_core::fieldcalc::{
    definite_integral, grad_inverse, jackson_product, l_shift, nabla, FieldElem,
};
use qdha_core::qarith::QScalar;

use crate::config::RunConfig;
use crate::report::CheckResult;
use crate::rng::Rng;

const PAIRS: usize = 100;

pub fn checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = Rng::new(0x5eed_ca1c);

    let mut leibniz_ok = true;
    let mut group_like_ok = true;
    let mut green_ok = true;
    let mut partial_ok = true;
    let mut grad_inv_ok = true;
    for _ in 0..PAIRS {
        let f = rng.field(8, 4);
        let g = rng.field(8, 4);
        let fg = &f * &g;
        let d = nabla(&fg);
        let r1 = &(&nabla(&f) * &l_shift(&g, -1)) + &(&l_shift(&f, 1) * &nabla(&g));
        let r2 = &(&nabla(&f) * &l_shift(&g, 1)) + &(&l_shift(&f, -1) * &nabla(&g));
        leibniz_ok &= d == r1 && d == r2;
        group_like_ok &= l_shift(&fg, 1) == &l_shift(&f, 1) * &l_shift(&g, 1)
            && l_shift(&fg, -1) == &l_shift(&f, -1) * &l_shift(&g, -1);
        let lhs = &(&nabla(&nabla(&f)) * &g) - &(&f * &nabla(&nabla(&g)));
        let inner = &(&nabla(&f) * &l_shift(&g, -1)) - &(&l_shift(&f, -1) * &nabla(&g));
        green_ok &= lhs == nabla(&inner);
        // partial integration: the combined integrand is always in the image
        let a = &nabla(&f) * &l_shift(&g, -1);
        let b = &l_shift(&f, 1) * &nabla(&g);
        let total = grad_inverse(&(&a + &b)).expect("image of nabla");
        let fg_no_const = &fg - &FieldElem::from_scalar(fg.coeff(0));
        partial_ok &= total == fg_no_const;
        // right inverse on an x^-1-free sample
        let mut h = rng.field(8, 4);
        h.remove_term(-1);
        grad_inv_ok &= nabla(&grad_inverse(&h).expect("x^-1-free")) == h;
    }
    out.push(CheckResult::exact("leibniz-both-forms-randomized", leibniz_ok, None));
    out.push(CheckResult::exact("l-group-like-randomized", group_like_ok, None));
    out.push(CheckResult::exact("greens-theorem-randomized", green_ok, None));
    out.push(CheckResult::exact("partial-integration-randomized", partial_ok, None));
    out.push(CheckResult::exact("grad-inverse-right-inverse", grad_inv_ok, None));

    // homomorphism relation on monomials x^m, m in [-10, 10]
    let th = QScalar::t_pow(1);
    let thi = QScalar::t_pow(-1);
    let x1 = FieldElem::x_pow(1);
    let hom_ok = (-10..=10).all(|m| {
        let xm = FieldElem::x_pow(m);
        let lhs = &(&x1 * &nabla(&xm)).scale(&th) - &nabla(&(&x1 * &xm)).scale(&thi);
        lhs == l_shift(&xm, 1).scale(&-&thi)
    });
    out.push(CheckResult::exact("homomorphism-on-monomials", hom_ok, None));

    // x^-1 rejection and the error path
    out.push(CheckResult::exact(
        "grad-inverse-rejects-x-inverse",
        grad_inverse(&FieldElem::x_pow(-1)).is_err(),
        None,
    ));

    // definite integral against the closed forms at this q0
    let q0 = cfg.q0;
    let mut integral_err = 0.0f64;
    for n in [-3i64, -1, 0, 2] {
        let got = definite_integral(&FieldElem::x_pow(n), -8, 6, q0, true).expect("even window");
        let powi = |e: i64| q0.powi(e as i32);
        let want = if n == -1 {
            (q0 - 1.0 / q0) * ((6 - (-8)) / 2) as f64
        } else {
            let qn = (powi(n + 1) - powi(-(n + 1))) / (q0 - 1.0 / q0);
            (powi(6 * (n + 1)) - powi(-8 * (n + 1))) / qn
        };
        integral_err = integral_err.max((got - want).abs() / (1.0 + want.abs()));
    }
    out.push(CheckResult::bounded("definite-integral-closed-form", integral_err, 1e-10));

    // Jackson product: positivity and symmetry on a sample
    let f = &FieldElem::x_pow(1) + &FieldElem::x_pow(3).scale(&-&QScalar::one());
    let g = &FieldElem::x_pow(2) + &FieldElem::one();
    let nf = jackson_product(&f, &f, q0, -12..=0);
    let fg = jackson_product(&f, &g, q0, -12..=0);
    let gf = jackson_product(&g, &f, q0, -12..=0);
    out.push(CheckResult::exact("jackson-norm-positive", nf > 0.0, None));
    out.push(CheckResult::bounded(
        "jackson-hermitian",
        (fg - gf).abs() / (1.0 + fg.abs()),
        1e-12,
    ));
    out
}
