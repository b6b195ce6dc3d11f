//! Lattice q-Fourier suite: normalization constant stability, Gram and
//! Plancherel residuals, double-transform inversion, linearity.

use num_complex::Complex64;
use qdha_core::qfourier::{
    double_transform_residual, gram_residual, normalization_nq, plancherel_residual, transform,
    LatticeFunction,
};
use qdha_core::qspecial::TrigKind;

use crate::config::RunConfig;
use crate::report::CheckResult;

pub fn checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let q0 = cfg.q0;
    let mut out = Vec::new();

    let nq_fine = normalization_nq(q0, 1e-16).expect("q0 > 1");
    let nq_deeper = normalization_nq(q0, 1e-30).expect("q0 > 1");
    out.push(CheckResult::bounded(
        "nq-product-truncation-stable",
        (nq_fine - nq_deeper).abs() / nq_fine.abs(),
        1e-12,
    ));

    let (sum_lo, sum_hi) = cfg.window;
    for kind in [TrigKind::Cos, TrigKind::Sin] {
        let gram = gram_residual(kind, -3..=3, sum_lo..=sum_hi, q0).expect("q0 > 1");
        out.push(CheckResult::bounded(&format!("gram-{kind}"), gram, 1e-6));
    }

    let c = |re: f64, im: f64| Complex64::new(re, im);
    let g = LatticeFunction::from_samples(
        q0,
        [
            (-5, c(0.3, -0.2)),
            (-2, c(-1.0, 0.4)),
            (0, c(0.7, 0.0)),
            (3, c(0.1, 0.9)),
            (5, c(-0.45, 0.2)),
        ],
    );
    for kind in [TrigKind::Cos, TrigKind::Sin] {
        let p = plancherel_residual(kind, &g, -40..=40).expect("nonzero");
        out.push(CheckResult::bounded(&format!("plancherel-{kind}"), p, 1e-8));
        let d = double_transform_residual(kind, &g, -40..=40).expect("nonzero");
        out.push(CheckResult::bounded(&format!("double-transform-{kind}"), d, 1e-8));
    }
    // single-point and σ-symmetric samples
    let delta = LatticeFunction::delta(q0, 2);
    out.push(CheckResult::bounded(
        "plancherel-delta",
        plancherel_residual(TrigKind::Cos, &delta, -40..=40).expect("nonzero"),
        1e-8,
    ));
    let two = LatticeFunction::from_samples(q0, [(-1, c(1.0, 0.0)), (1, c(1.0, 0.0))]);
    out.push(CheckResult::bounded(
        "plancherel-symmetric-pair",
        plancherel_residual(TrigKind::Sin, &two, -40..=40).expect("nonzero"),
        1e-8,
    ));

    // linearity of the transform
    let f2 = LatticeFunction::from_samples(q0, [(-1, c(0.5, 0.0)), (2, c(0.0, 1.0))]);
    let a = c(2.0, -1.0);
    let b = c(0.0, 3.0);
    let mut combo = LatticeFunction::new(q0);
    for n in -5..=5 {
        combo.set(n, a * g.at(n) + b * f2.at(n));
    }
    let t_combo = transform(TrigKind::Cos, &combo, -8..=8).expect("q0 > 1");
    let tg = transform(TrigKind::Cos, &g, -8..=8).expect("q0 > 1");
    let tf = transform(TrigKind::Cos, &f2, -8..=8).expect("q0 > 1");
    let mut lin_err = 0.0f64;
    for nu in -8..=8 {
        let want = a * tg.at(nu) + b * tf.at(nu);
        lin_err = lin_err.max((t_combo.at(nu) - want).norm() / (1.0 + want.norm()));
    }
    out.push(CheckResult::bounded("transform-linearity", lin_err, 1e-12));
    out
}
