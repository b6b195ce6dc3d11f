//! Representation suite: exact operator algebra on the truncated lattice,
//! momentum eigenbasis residuals for both selfadjoint-extension families,
//! the `Λ` family maps, the reducible-basis Gram matrix, the `H = p²/2`
//! spectrum with its `q⁴` spacing, and the single-sector obstruction.

use num_complex::Complex64;
use qdha_core::latrep::{
    algebra_residual_exact, algebra_residual_numeric, build_ops_exact, build_ops_numeric,
    eigen_residual, hamiltonian_check, lambda_map_residual, momentum_state,
    reducible_gram_residual, Family, SigmaSet, Window,
};

use crate::config::RunConfig;
use crate::report::CheckResult;

pub fn checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let q0 = cfg.q0;
    let (wlo, whi) = cfg.window;
    let window = Window::new(wlo, whi, SigmaSet::Both);
    let mut out = Vec::new();

    // exact-mode algebra: must be exactly zero on the interior
    let small = Window::new(-10, 10, SigmaSet::Both);
    let (xe, le, pe) = build_ops_exact(&small);
    out.push(CheckResult::exact(
        "algebra-exact-mode-zero",
        algebra_residual_exact(&xe, &le, &pe) == 0,
        None,
    ));
    out.push(CheckResult::exact("p-hermitian-exact", pe.adjoint() == pe, None));
    // Λ†Λ = 1 on columns whose image stays inside
    let ltl = le.adjoint().mul(&le);
    let unitary_ok = (small.nmin..small.nmax).all(|n| {
        let c = small.index(n, 1).unwrap();
        ltl.get(c, c) == qdha_core::qarith::CQScalar::one()
    });
    out.push(CheckResult::exact("lambda-unitary-interior", unitary_ok, None));

    let (x, lam, p) = build_ops_numeric(&window, q0);
    out.push(CheckResult::bounded(
        "algebra-numeric-interior",
        algebra_residual_numeric(&x, &lam, &p, q0),
        1e-12,
    ));

    // momentum eigenstates: both families, both τ, irreducible and reducible
    let mut eig_err = 0.0f64;
    for family in [Family::I, Family::II] {
        for tau in [1i8, -1] {
            for nu in [-1i64, 0, 1, 2] {
                let st = momentum_state(tau, nu, family, true, &window, q0).expect("window ok");
                let mu = st.eigenvalue(q0, 1);
                eig_err = eig_err.max(eigen_residual(&p, &st, Complex64::new(mu, 0.0)));
            }
        }
    }
    out.push(CheckResult::bounded("momentum-eigen-residuals", eig_err, 1e-6));

    // Λ maps family I(ν) -> II(ν) and II(ν) -> I(ν-1)
    let mut map_err = 0.0f64;
    for tau in [1i8, -1] {
        for nu in [-1i64, 0, 1] {
            let fi = momentum_state(tau, nu, Family::I, true, &window, q0).expect("ok");
            let fii = momentum_state(tau, nu, Family::II, true, &window, q0).expect("ok");
            map_err = map_err.max(lambda_map_residual(&lam, &fi, &fii));
            let fi_down = momentum_state(tau, nu - 1, Family::I, true, &window, q0).expect("ok");
            map_err = map_err.max(lambda_map_residual(&lam, &fii, &fi_down));
        }
    }
    out.push(CheckResult::bounded("lambda-family-maps", map_err, 1e-6));

    // Gram of the reducible basis needs the geometric left tail far out
    let wide = Window::new(-190, 80, SigmaSet::Both);
    let gram = reducible_gram_residual(&wide, q0, 3).expect("window ok");
    out.push(CheckResult::bounded("reducible-basis-gram", gram, 1e-6));

    // H = p²/2: residuals, τ degeneracy, q⁴ spacing, family interlace
    let entries = hamiltonian_check(&window, q0, -2..=2).expect("window ok");
    let hmax = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    out.push(CheckResult::bounded("hamiltonian-residuals", hmax, 1e-6));
    let tau_degenerate = entries.iter().all(|e| {
        entries
            .iter()
            .any(|o| o.family == e.family && o.nu == e.nu && o.tau == -e.tau
                && o.eigenvalue == e.eigenvalue)
    });
    out.push(CheckResult::exact("hamiltonian-tau-degeneracy", tau_degenerate, None));
    let f1: Vec<f64> = entries
        .iter()
        .filter(|e| e.family == Family::I && e.tau == 1)
        .map(|e| e.eigenvalue)
        .collect();
    let mut spacing_err = 0.0f64;
    for w in f1.windows(2) {
        spacing_err = spacing_err.max((w[1] / w[0] - q0.powi(4)).abs());
    }
    out.push(CheckResult::bounded("family-i-spacing-q4", spacing_err, 1e-9));
    let f1_0 = entries
        .iter()
        .find(|e| e.family == Family::I && e.tau == 1 && e.nu == 0)
        .unwrap();
    let f2_0 = entries
        .iter()
        .find(|e| e.family == Family::II && e.tau == 1 && e.nu == 0)
        .unwrap();
    out.push(CheckResult::bounded(
        "family-interlace-q2-in-h",
        (f1_0.eigenvalue / f2_0.eigenvalue - q0 * q0).abs(),
        1e-9,
    ));

    // single-sector obstruction (the no-selfadjointness witness)
    let wp = Window::new(wlo, whi, SigmaSet::Plus);
    let st = momentum_state(1, 0, Family::I, false, &wp, q0).expect("ok");
    out.push(CheckResult::exact(
        "single-sector-obstruction-positive",
        st.single_sector_obstruction(1) > 1e-3,
        None,
    ));
    out
}
