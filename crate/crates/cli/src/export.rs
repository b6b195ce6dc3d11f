//! Table exports: figure-reproduction data, spectra, transforms, and the
//! eigenfunction table, as deterministic CSV or JSON.

use anyhow::{bail, Result};
use num_complex::Complex64;
use qdha_core::latrep::{hamiltonian_check, SigmaSet, Window};
use qdha_core::qarith::QScalar;
use qdha_core::qfourier::{transform, LatticeFunction};
use qdha_core::qspecial::lattice::odd_lattice_pairs;
use qdha_core::qspecial::{LatticeTrigTable, TrigKind};
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::fmt_f64;

pub const EXPORT_KINDS: &[&str] = &["fig12", "spectrum", "transform", "eigen_table"];

/// Produce the named table as a string in the requested format.
pub fn export_table(kind: &str, cfg: &RunConfig, json: bool) -> Result<String> {
    match kind {
        "fig12" => fig12(cfg),
        "spectrum" => spectrum(cfg),
        "transform" => transform_table(cfg),
        "eigen_table" => eigen_table(cfg, json),
        other => bail!("unknown export kind '{other}' (expected one of {EXPORT_KINDS:?})"),
    }
}

/// `(n, q^n, cos_q(q^n), sin_q(q^n))` over the window, both parities: the
/// even-lattice values decay (weighted tails below 1e-12 past a finite
/// cutoff) while the odd-lattice values diverge.
fn fig12(cfg: &RunConfig) -> Result<String> {
    let q0 = cfg.q0;
    let (lo, hi) = cfg.window;
    let m_lo = lo.div_euclid(2) - 1;
    let m_hi = hi.div_euclid(2) + 1;
    let even = LatticeTrigTable::build(q0, m_lo, m_hi).map_err(|e| anyhow::anyhow!("{e}"))?;
    let odd = odd_lattice_pairs(q0, m_lo, m_hi).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut out = String::from("n,x,cos_q,sin_q\n");
    for n in lo..=hi {
        let x = q0.powi(n as i32);
        let (c, s) = if n.rem_euclid(2) == 0 {
            let m = n / 2;
            (even.cos_at(m), even.sin_at(m))
        } else {
            let m = n.div_euclid(2);
            odd[(m - m_lo) as usize]
        };
        out.push_str(&format!("{n},{},{},{}\n", fmt_f64(x), fmt_f64(c), fmt_f64(s)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SpectrumRow {
    q0: f64,
    window: (i64, i64),
    family: String,
    tau: i8,
    nu: i64,
    eigenvalue: String,
    residual: String,
}

/// JSON spectrum report of `H = p²/2` on the reducible momentum basis.
fn spectrum(cfg: &RunConfig) -> Result<String> {
    let (lo, hi) = cfg.window;
    let window = Window::new(lo, hi, SigmaSet::Both);
    let entries = hamiltonian_check(&window, cfg.q0, -2..=2)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let rows: Vec<SpectrumRow> = entries
        .iter()
        .map(|e| SpectrumRow {
            q0: cfg.q0,
            window: cfg.window,
            family: e.family.to_string(),
            tau: e.tau,
            nu: e.nu,
            eigenvalue: fmt_f64(e.eigenvalue),
            residual: fmt_f64(e.residual),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&rows)? + "\n")
}

/// CSV of the cos-kernel transform of the delta at `n = 0`:
/// rows `(ν, q^(2ν), Re ĝ, Im ĝ)`.
fn transform_table(cfg: &RunConfig) -> Result<String> {
    let (lo, hi) = cfg.window;
    let delta = LatticeFunction::delta(cfg.q0, 0);
    let ghat = transform(TrigKind::Cos, &delta, lo..=hi).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut out = String::from("nu,x,re,im\n");
    for nu in lo..=hi {
        let v: Complex64 = ghat.at(nu);
        out.push_str(&format!(
            "{nu},{},{},{}\n",
            fmt_f64(cfg.q0.powi(2 * nu as i32)),
            fmt_f64(v.re),
            fmt_f64(v.im)
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct EigenRow {
    subspace: String,
    kind: String,
    k: i64,
    eigenvalue_exact: String,
    eigenvalue_float: String,
    formula: String,
}

/// The eigenfunction table of `∇²` on the four lattice subspaces: basis
/// functions `N_q √(2q/λ) q^k K(x q^(2k+1))` (even) and `K(x q^(2k))` (odd)
/// with eigenvalues `-q^(4k+1)/λ²`, `-q^(4k+3)/λ²`, `-q^(4k-1)/λ²`,
/// `-q^(4k+1)/λ²`; the σ = -1 subspaces carry the same table.
fn eigen_table(cfg: &RunConfig, json: bool) -> Result<String> {
    let lambda_sq = {
        let l = QScalar::lambda();
        &l * &l
    };
    let mut rows = Vec::new();
    type ExpFn = fn(i64) -> i64;
    let entries: [(&str, &str, &str, ExpFn); 4] = [
        ("even", "cos", "-q^(4k+1)/lambda^2", |k| 4 * k + 1),
        ("even", "sin", "-q^(4k+3)/lambda^2", |k| 4 * k + 3),
        ("odd", "cos", "-q^(4k-1)/lambda^2", |k| 4 * k - 1),
        ("odd", "sin", "-q^(4k+1)/lambda^2", |k| 4 * k + 1),
    ];
    for sigma in ["sigma=+1", "sigma=-1"] {
        for (parity, kind, exponent_formula, exponent) in entries {
            for k in 0..=5i64 {
                let exact = &(-&QScalar::q_pow(exponent(k))) / &lambda_sq;
                rows.push(EigenRow {
                    subspace: format!("{sigma} {parity}"),
                    kind: kind.into(),
                    k,
                    eigenvalue_float: fmt_f64(exact.eval_at(cfg.q0).expect("no pole")),
                    eigenvalue_exact: format!("{exact}"),
                    formula: exponent_formula.into(),
                });
            }
        }
    }
    if json {
        return Ok(serde_json::to_string_pretty(&rows)? + "\n");
    }
    let mut out = String::from("subspace,kind,k,eigenvalue_exact,eigenvalue_float,formula\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},\"{}\",{},{}\n",
            r.subspace, r.kind, r.k, r.eigenvalue_exact, r.eigenvalue_float, r.formula
        ));
    }
    Ok(out)
}
