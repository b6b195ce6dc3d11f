//! q-trigonometric suite: exact coefficient identities, the deformed
//! Pythagoras identity, series-vs-oracle agreement, and the even/odd lattice
//! divergence split behind the figure reproduction.

use qdha_core::qarith::QScalar;
use qdha_core::qspecial::lattice::odd_lattice_pairs;
use qdha_core::qspecial::{
    pythagoras_coeff, trig_coeffs, trig_eval, trig_laplace_residual, trig_nabla_residual,
    trig_recurrence_failures, LatticeTrigTable, TrigKind,
};

use crate::config::RunConfig;
use crate::report::CheckResult;

fn powi(x: f64, n: i64) -> f64 {
    x.powi(n as i32)
}

pub fn checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let q0 = cfg.q0;
    let mut out = Vec::new();

    out.push(CheckResult::exact(
        "pythagoras-order-0-is-one",
        pythagoras_coeff(0).is_one(),
        None,
    ));
    let mut py_ok = true;
    for n in 1..=20 {
        py_ok &= pythagoras_coeff(n).is_zero();
    }
    out.push(CheckResult::exact("pythagoras-orders-1-to-20-vanish", py_ok, None));

    out.push(CheckResult::exact(
        "recurrence-coefficients-through-order-40",
        trig_recurrence_failures(40).is_empty(),
        None,
    ));

    for kind in [TrigKind::Cos, TrigKind::Sin] {
        out.push(CheckResult::exact(
            &format!("nabla-identity-{kind}-cap-20"),
            trig_nabla_residual(kind, &QScalar::one(), 20).is_zero(),
            None,
        ));
        out.push(CheckResult::exact(
            &format!("laplace-eigenfunction-{kind}-cap-40"),
            trig_laplace_residual(kind, &QScalar::one(), 40).is_zero(),
            None,
        ));
    }

    // numeric evaluation against the exact-coefficient oracle (60 terms)
    let oracle = |kind: TrigKind, x0: f64| -> f64 {
        let coeffs = trig_coeffs(kind, 60).expect("small k");
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let deg = match kind {
                    TrigKind::Cos => 2 * k as i64,
                    TrigKind::Sin => 2 * k as i64 + 1,
                };
                c.eval_at(q0).expect("no pole") * powi(x0, deg)
            })
            .sum()
    };
    let mut eval_err = 0.0f64;
    for (kind, x0) in [(TrigKind::Cos, 1.0), (TrigKind::Sin, 1.0), (TrigKind::Cos, 2.0)] {
        let got = trig_eval(kind, x0, q0, 1e-16).expect("converges");
        let want = oracle(kind, x0);
        eval_err = eval_err.max((got - want).abs() / (1.0 + want.abs()));
    }
    out.push(CheckResult::bounded("trig-eval-matches-exact-oracle", eval_err, 1e-12));

    // figure-reproduction property: even-lattice weighted tails fall below
    // 1e-12 past a finite cutoff while odd-lattice values exceed 1e3
    let table = LatticeTrigTable::build(q0, 0, 45).expect("q0 > 1");
    let weighted = |m: i64| {
        let w = powi(q0, 2 * m);
        (w * table.cos_at(m) * table.cos_at(m))
            .abs()
            .max((w * table.sin_at(m) * table.sin_at(m)).abs())
    };
    let cutoff = (0..=45).find(|&m| (m..=45).all(|k| weighted(k) < 1e-12));
    out.push(CheckResult::exact(
        "even-lattice-weighted-tail-below-1e-12",
        cutoff.map(|c| c <= 40).unwrap_or(false),
        Some(format!("cutoff {:?}", cutoff)),
    ));
    let odd = odd_lattice_pairs(q0, 0, 40).expect("q0 > 1");
    out.push(CheckResult::exact(
        "odd-lattice-values-exceed-1e3",
        odd.iter().any(|(c, _)| c.abs() > 1e3) && odd.iter().any(|(_, s)| s.abs() > 1e3),
        None,
    ));
    out
}
