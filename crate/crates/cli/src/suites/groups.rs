//! sl_q(2)/su_q(2) suite: representation residuals across spins and sample
//! deformation values, explicit low-spin matrices, exact radical-free data,
//! the coproduct, τ-scaling, and the quantum-plane covariance certificates.

use qdha_core::qarith::QScalar;
use qdha_core::qgroups::{coproduct_residual, suq2_plane_covariance, suq2_rep, suq2_residuals};

use crate::config::RunConfig;
use crate::report::CheckResult;

pub fn checks(_cfg: &RunConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();

    // j ∈ {1/2, 1, 3/2, 2, 4} at q0 ∈ {1.1, 1.5}
    let mut worst = 0.0f64;
    let mut exact_ok = true;
    for two_j in [1i64, 2, 3, 4, 8] {
        for q0 in [1.1, 1.5] {
            let res = suq2_residuals(&suq2_rep(two_j, q0));
            worst = worst.max(res.max());
            exact_ok &= res.exact_ok;
        }
    }
    out.push(CheckResult::bounded("suq2-residuals-all-spins", worst, 1e-10));
    out.push(CheckResult::exact("suq2-exact-radical-free-data", exact_ok, None));

    // explicit j = 1/2 and j = 1 matrix elements at a sample point
    let q0 = 1.3f64;
    let rep = suq2_rep(1, q0);
    let half_ok = (rep.tplus.at(1, 0) - 1.0 / q0).abs() < 1e-14
        && (rep.tminus.at(0, 1) - q0).abs() < 1e-14
        && (rep.t3.at(0, 0) + q0).abs() < 1e-14
        && (rep.t3.at(1, 1) - 1.0 / q0).abs() < 1e-14
        && rep.t3_diag[0] == -&QScalar::q_pow(1)
        && rep.t3_diag[1] == QScalar::q_pow(-1);
    out.push(CheckResult::exact("suq2-spin-half-explicit", half_ok, None));
    let rep1 = suq2_rep(2, q0);
    let s = (1.0 + q0 * q0).sqrt();
    let one_ok = (rep1.tplus.at(1, 0) - s / q0).abs() < 1e-13
        && (rep1.tplus.at(2, 1) - s / (q0 * q0)).abs() < 1e-13
        && (rep1.tminus.at(0, 1) - q0 * s).abs() < 1e-13
        && (rep1.tminus.at(1, 2) - s).abs() < 1e-13
        && (rep1.t3.at(0, 0) + q0 * (1.0 + q0 * q0)).abs() < 1e-13
        && (rep1.t3.at(2, 2) - (1.0 + 1.0 / (q0 * q0)) / q0).abs() < 1e-13;
    out.push(CheckResult::exact("suq2-spin-one-explicit", one_ok, None));

    // coproduct closes the algebra on tensor products
    let mut cop = 0.0f64;
    for (j1, j2, q0) in [(1i64, 1i64, 1.1), (1, 2, 1.5), (2, 3, 1.1)] {
        cop = cop.max(coproduct_residual(j1, j2, q0));
    }
    out.push(CheckResult::bounded("coproduct-residuals", cop, 1e-10));

    // τ T⁺ τ⁻¹ = q⁻⁴ T⁺
    let mut tau_err = 0.0f64;
    for (two_j, q0) in [(2i64, 1.1), (5, 1.5)] {
        let rep = suq2_rep(two_j, q0);
        let dim = rep.dim();
        let mut tau_inv = qdha_core::qgroups::FMat::zero(dim);
        for idx in 0..dim {
            tau_inv.set(idx, idx, 1.0 / rep.tau.at(idx, idx));
        }
        let lhs = rep.tau.mul(&rep.tplus).mul(&tau_inv);
        let rhs = rep.tplus.scale(q0.powi(-4));
        tau_err = tau_err.max(lhs.sub(&rhs).max_abs());
    }
    out.push(CheckResult::bounded("tau-scaling-conjugated", tau_err, 1e-12));

    // plane covariance certificates (exact)
    let report = suq2_plane_covariance();
    for item in &report.items {
        out.push(CheckResult::exact(
            &format!("covariance/{}", slug(&item.name)),
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
