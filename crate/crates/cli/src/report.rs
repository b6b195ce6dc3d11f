//! Suite reports: one line per check, deterministic serialization.
//!
//! Floats print with 17 significant digits and exact scalars in canonical
//! text form, so identical configs produce byte-identical output. Wall time
//! is measured for the human summary on stderr but never serialized.

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    /// Numeric residual, when the check is numeric ("0" exactly prints as 0).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Witness text for failures or exactness notes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn exact(id: &str, ok: bool, witness: Option<String>) -> Self {
        CheckResult {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            witness: if ok { None } else { witness.or(Some("nonzero".into())) },
        }
    }

    pub fn bounded(id: &str, residual: f64, bound: f64) -> Self {
        let ok = residual.is_finite() && residual < bound;
        CheckResult {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            witness: if ok {
                None
            } else {
                Some(format!("residual {} >= bound {}", fmt_f64(residual), fmt_f64(bound)))
            },
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A full suite run.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    /// Measured but not serialized, so reports stay byte-identical.
    #[serde(skip)]
    pub wall_seconds: f64,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &RunConfig, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut seen = std::collections::BTreeSet::new();
        for c in &checks {
            assert!(seen.insert(c.id.clone()), "duplicate check id {}", c.id);
        }
        SuiteReport {
            suite: suite.into(),
            config: config.clone(),
            checks,
            wall_seconds: 0.0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::is_pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,status,residual,witness\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.id,
                status,
                c.residual.map(fmt_f64).unwrap_or_default(),
                csv_quote(c.witness.as_deref().unwrap_or("")),
            ));
        }
        out
    }
}

/// 17 significant digits, deterministic.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(fmt_f64(1.1), "1.1000000000000001e0");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn report_sorts_and_serializes_deterministically() {
        let cfg = RunConfig::default();
        let r = SuiteReport::new(
            "demo",
            &cfg,
            vec![
                CheckResult::bounded("b-check", 1e-9, 1e-6),
                CheckResult::exact("a-check", true, None),
            ],
        );
        assert!(r.all_passed());
        let j1 = r.to_json();
        let j2 = r.to_json();
        assert_eq!(j1, j2);
        assert!(j1.find("a-check").unwrap() < j1.find("b-check").unwrap());
        let csv = r.to_csv();
        assert!(csv.starts_with("id,status,residual,witness\n"));
    }

    #[test]
    fn failed_checks_carry_a_witness() {
        let c = CheckResult::bounded("x", 1.0, 1e-6);
        assert!(!c.is_pass());
        assert!(c.witness.is_some());
        let e = CheckResult::exact("y", false, None);
        assert!(e.witness.is_some());
    }
}
