//! Numeric evaluation of `cos_q`/`sin_q`, including stable values on the
//! q-lattice.
//!
//! Direct series summation is fine near the origin but loses all precision at
//! even lattice points `q^(2m)` for moderate `m`: the partial sums peak many
//! orders of magnitude above the (superexponentially small) result. The
//! even-lattice values are instead produced by the defining recurrences
//!
//! `sin_q(q⁻²x) = sin_q(x) - x·cos_q(x)`,
//! `cos_q(q⁻²x) = cos_q(x) + q⁻²x·sin_q(q⁻²x)`,
//!
//! run downward from an arbitrary seed well above the window (the wanted
//! solution dominates the downward direction) and normalized against the
//! series value at `x = 1`. Odd-lattice values grow with the argument, so the
//! same recurrences run upward from a small odd point are stable for them.

use alloc::vec::Vec;
use core::fmt;

use crate::numf;

/// Errors from numeric q-trig evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum TrigEvalError {
    /// `q0 <= 1` is outside the convergence regime assumed throughout.
    QOutOfRange(f64),
    /// Nonpositive tolerance.
    BadTolerance(f64),
    /// The partial sums did not settle within the term cap.
    NoConvergence { terms: usize },
    /// Downward recurrence failed its cross-check against the series.
    RecurrenceCheckFailed { mismatch: f64 },
}

impl fmt::Display for TrigEvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrigEvalError::QOutOfRange(q) => write!(f, "q0 = {q} must be > 1"),
            TrigEvalError::BadTolerance(t) => write!(f, "tolerance {t} must be > 0"),
            TrigEvalError::NoConvergence { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            TrigEvalError::RecurrenceCheckFailed { mismatch } => {
                write!(f, "lattice recurrence cross-check failed ({mismatch:e})")
            }
        }
    }
}

use super::TrigKind;

/// Default cap on series terms; terms decay superexponentially for `q0 > 1`,
/// so this only guards pathological inputs.
pub const DEFAULT_TERM_CAP: usize = 500;

/// Sum the series for `cos_q(x0)` or `sin_q(x0)` at `q = q0 > 1` until the
/// next term is below `tol · (1 + |partial sum|)`.
pub fn trig_eval(kind: TrigKind, x0: f64, q0: f64, tol: f64) -> Result<f64, TrigEvalError> {
    if q0 <= 1.0 {
        return Err(TrigEvalError::QOutOfRange(q0));
    }
    if tol <= 0.0 {
        return Err(TrigEvalError::BadTolerance(tol));
    }
    let lambda = q0 - 1.0 / q0;
    let qnum = |m: i64| (numf::powi(q0, m) - numf::powi(q0, -m)) / lambda;
    let x2 = x0 * x0;
    let mut term = match kind {
        TrigKind::Cos => 1.0,
        TrigKind::Sin => x0 * q0 / lambda,
    };
    let mut sum = term;
    for k in 1..=DEFAULT_TERM_CAP as i64 {
        term *= match kind {
            TrigKind::Cos => -x2 / (q0 * qnum(2 * k - 1) * qnum(2 * k) * lambda * lambda),
            TrigKind::Sin => -x2 * q0 / (qnum(2 * k) * qnum(2 * k + 1) * lambda * lambda),
        };
        sum += term;
        if numf::fabs(term) < tol * (1.0 + numf::fabs(sum)) {
            return Ok(sum);
        }
    }
    Err(TrigEvalError::NoConvergence { terms: DEFAULT_TERM_CAP })
}

fn series_pair(x: f64, q0: f64) -> (f64, f64) {
    let c = trig_eval(TrigKind::Cos, x, q0, 1e-18).expect("series at small x");
    let s = trig_eval(TrigKind::Sin, x, q0, 1e-18).expect("series at small x");
    (c, s)
}

/// Tabulated `cos_q`/`sin_q` on an even-lattice window `x = q^(2m)`,
/// `m ∈ [mmin, mmax]`.
pub struct LatticeTrigTable {
    pub q0: f64,
    mmin: i64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl LatticeTrigTable {
    /// Build the table. Values for `m <= 0` come from the series; values for
    /// `m > 0` come from the normalized downward recurrence.
    pub fn build(q0: f64, mmin: i64, mmax: i64) -> Result<Self, TrigEvalError> {
        if q0 <= 1.0 {
            return Err(TrigEvalError::QOutOfRange(q0));
        }
        assert!(mmin <= mmax);
        let len = (mmax - mmin + 1) as usize;
        let mut cos = alloc::vec![0.0; len];
        let mut sin = alloc::vec![0.0; len];
        let idx = |m: i64| (m - mmin) as usize;
        for m in mmin..=0.min(mmax) {
            let (c, s) = series_pair(numf::powi(q0, 2 * m), q0);
            cos[idx(m)] = c;
            sin[idx(m)] = s;
        }
        if mmax > 0 {
            // downward recurrence with Miller-style seeding; values live in a
            // scratch buffer for m in [1, mmax] until normalized
            let lo = 1.max(mmin);
            let mut scratch_c = alloc::vec![0.0; (mmax - lo + 1) as usize];
            let mut scratch_s = alloc::vec![0.0; (mmax - lo + 1) as usize];
            let guard = 20 + mmax / 4;
            let mtop = mmax + guard;
            let mut c = 1.0f64;
            let mut s = 0.0f64;
            let mut m = mtop;
            while m > 0 {
                // step from x = q^(2m) down to q^(2m-2)
                let x = numf::powi(q0, 2 * m);
                let s_lower = s - x * c;
                let c_lower = c + x / (q0 * q0) * s_lower;
                c = c_lower;
                s = s_lower;
                m -= 1;
                if m <= mmax && m >= lo {
                    scratch_c[(m - lo) as usize] = c;
                    scratch_s[(m - lo) as usize] = s;
                }
                // keep magnitudes in range; the final normalization absorbs it
                let mag = numf::fabs(c).max(numf::fabs(s));
                if mag > 1e250 {
                    c *= 1e-250;
                    s *= 1e-250;
                    for v in scratch_c.iter_mut().chain(scratch_s.iter_mut()) {
                        *v *= 1e-250;
                    }
                }
            }
            // normalize against the series at x = q^0 = 1 and cross-check
            let (c0, s0) = series_pair(1.0, q0);
            let factor = c0 / c;
            let sin_mismatch = numf::fabs(s * factor - s0) / (1.0 + numf::fabs(s0));
            if sin_mismatch > 1e-9 {
                return Err(TrigEvalError::RecurrenceCheckFailed { mismatch: sin_mismatch });
            }
            for m in lo..=mmax {
                cos[idx(m)] = scratch_c[(m - lo) as usize] * factor;
                sin[idx(m)] = scratch_s[(m - lo) as usize] * factor;
            }
        }
        Ok(LatticeTrigTable { q0, mmin, cos, sin })
    }

    /// `cos_q(q^(2m))`
    pub fn cos_at(&self, m: i64) -> f64 {
        self.cos[(m - self.mmin) as usize]
    }

    /// `sin_q(q^(2m))`
    pub fn sin_at(&self, m: i64) -> f64 {
        self.sin[(m - self.mmin) as usize]
    }

    pub fn kernel_at(&self, kind: TrigKind, m: i64) -> f64 {
        match kind {
            TrigKind::Cos => self.cos_at(m),
            TrigKind::Sin => self.sin_at(m),
        }
    }
}

/// `cos_q`/`sin_q` on the odd lattice `x = q^(2m+1)`, `m ∈ [mmin, mmax]`,
/// by upward recurrence from a small odd point (stable: odd-lattice values
/// diverge with the argument).
pub fn odd_lattice_pairs(q0: f64, mmin: i64, mmax: i64) -> Result<Vec<(f64, f64)>, TrigEvalError> {
    if q0 <= 1.0 {
        return Err(TrigEvalError::QOutOfRange(q0));
    }
    assert!(mmin <= mmax);
    let start = (-1).min(mmin - 1);
    let (mut c, mut s) = series_pair(numf::powi(q0, 2 * start + 1), q0);
    let mut out = Vec::with_capacity((mmax - mmin + 1) as usize);
    let mut m = start;
    while m < mmax {
        // step from y = q^(2m+1) up to x = q²y
        let x = numf::powi(q0, 2 * (m + 1) + 1);
        let c_upper = c - x / (q0 * q0) * s;
        let s_upper = s + x * c_upper;
        c = c_upper;
        s = s_upper;
        m += 1;
        if m >= mmin {
            out.push((c, s));
        }
    }
    if mmin > start && out.len() < (mmax - mmin + 1) as usize {
        // mmax == mmin case handled by the loop; nothing else to do
    }
    if mmin <= start {
        // include the seed range by rebuilding directly (rare path)
        let mut full = Vec::with_capacity((mmax - mmin + 1) as usize);
        for m in mmin..=mmax {
            let (c, s) = series_pair(numf::powi(q0, 2 * m + 1), q0);
            full.push((c, s));
        }
        return Ok(full);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::QScalar;
    use crate::qspecial::trig_coeffs;

    /// Independent oracle: 60 exact series coefficients evaluated at q0.
    fn exact_series_oracle(kind: TrigKind, x0: f64, q0: f64) -> f64 {
        let coeffs = trig_coeffs(kind, 60).unwrap();
        let mut acc = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            let deg = match kind {
                TrigKind::Cos => 2 * k as i64,
                TrigKind::Sin => 2 * k as i64 + 1,
            };
            acc += c.eval_at(q0).unwrap() * numf::powi(x0, deg);
        }
        acc
    }

    #[test]
    fn eval_trivial_points() {
        assert_eq!(trig_eval(TrigKind::Cos, 0.0, 1.3, 1e-14).unwrap(), 1.0);
        assert_eq!(trig_eval(TrigKind::Sin, 0.0, 1.7, 1e-14).unwrap(), 0.0);
        assert!(matches!(
            trig_eval(TrigKind::Cos, 1.0, 0.9, 1e-14),
            Err(TrigEvalError::QOutOfRange(_))
        ));
        assert!(matches!(
            trig_eval(TrigKind::Cos, 1.0, 1.1, -1.0),
            Err(TrigEvalError::BadTolerance(_))
        ));
    }

    #[test]
    fn eval_matches_exact_oracle() {
        for (kind, x0) in [
            (TrigKind::Cos, 1.0),
            (TrigKind::Sin, 1.0),
            (TrigKind::Cos, 2.5),
            (TrigKind::Sin, 0.3),
        ] {
            let got = trig_eval(kind, x0, 1.1, 1e-16).unwrap();
            let want = exact_series_oracle(kind, x0, 1.1);
            assert!(
                (got - want).abs() <= 1e-12 * (1.0 + want.abs()),
                "{kind} at {x0}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn lambda_scalar_matches_float() {
        let l = QScalar::lambda().eval_at(1.1).unwrap();
        assert!((l - (1.1 - 1.0 / 1.1)).abs() < 1e-15);
    }

    #[test]
    fn table_matches_series_at_small_arguments() {
        let q0 = 1.1;
        let table = LatticeTrigTable::build(q0, -10, 40).unwrap();
        for m in [-10i64, -3, 0, 1, 2, 3] {
            let x = numf::powi(q0, 2 * m);
            let c = exact_series_oracle(TrigKind::Cos, x, q0);
            let s = exact_series_oracle(TrigKind::Sin, x, q0);
            assert!(
                (table.cos_at(m) - c).abs() <= 1e-11 * (1.0 + c.abs()),
                "cos m={m}: {} vs {c}",
                table.cos_at(m)
            );
            assert!(
                (table.sin_at(m) - s).abs() <= 1e-11 * (1.0 + s.abs()),
                "sin m={m}: {} vs {s}",
                table.sin_at(m)
            );
        }
    }

    #[test]
    fn even_lattice_weighted_tail_decays() {
        // q^(2m)·cos_q(q^(2m))² and the sin analogue must fall below 1e-12
        // beyond a finite m at q0 = 1.1
        let q0 = 1.1;
        let table = LatticeTrigTable::build(q0, 0, 45).unwrap();
        let weighted = |m: i64| {
            let w = numf::powi(q0, 2 * m);
            (w * table.cos_at(m) * table.cos_at(m)).abs()
                .max((w * table.sin_at(m) * table.sin_at(m)).abs())
        };
        let cutoff = (0..=45).find(|&m| (m..=45).all(|k| weighted(k) < 1e-12));
        assert!(cutoff.is_some(), "no decay cutoff found");
        assert!(cutoff.unwrap() <= 40, "cutoff {} too large", cutoff.unwrap());
    }

    #[test]
    fn odd_lattice_values_diverge() {
        // |cos_q(q^(2n+1))| and |sin_q(q^(2n+1))| exceed 1e3 within n <= 40
        let pairs = odd_lattice_pairs(1.1, 0, 40).unwrap();
        assert!(pairs.iter().any(|(c, _)| c.abs() > 1e3));
        assert!(pairs.iter().any(|(_, s)| s.abs() > 1e3));
    }

    #[test]
    fn recurrence_consistency_on_odd_lattice() {
        // sin_q(q⁻²x) = sin_q(x) - x cos_q(x) holds across the table
        let q0 = 1.1;
        let pairs = odd_lattice_pairs(q0, -5, 10).unwrap();
        for (i, m) in (-5i64..=9).enumerate() {
            let x_up = numf::powi(q0, 2 * (m + 1) + 1);
            let (_c_lo, s_lo) = pairs[i];
            let (c_up, s_up) = pairs[i + 1];
            let lhs = s_lo;
            let rhs = s_up - x_up * c_up;
            assert!(
                (lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())),
                "m={m}: {lhs} vs {rhs}"
            );
        }
    }
}
