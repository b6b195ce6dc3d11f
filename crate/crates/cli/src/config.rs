//! Run configuration: defaults, optional TOML file, flags override file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Output format for reports and tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Effective configuration of a run (echoed into every report).
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Deformation parameter as given (`11/10` or `1.1`).
    pub q0_text: String,
    /// Parsed numeric value.
    pub q0: f64,
    /// Generic window `min..=max` used where a suite needs one.
    pub window: (i64, i64),
    /// Numeric tolerance knob for convergence-style loops.
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q0_text: "11/10".into(),
            q0: 1.1,
            window: (-60, 60),
            tol: 1e-12,
        }
    }
}

/// The subset of settings a TOML config file may carry.
#[derive(Debug, Default, Deserialize)]
pub struct FileConfig {
    pub q0: Option<String>,
    pub window: Option<String>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<String>,
}

pub fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

/// Parse `q0` given as a rational `p/q` or a float literal.
pub fn parse_q0(text: &str) -> Result<f64> {
    if let Some((num, den)) = text.split_once('/') {
        let n: f64 = num.trim().parse().context("q0 numerator")?;
        let d: f64 = den.trim().parse().context("q0 denominator")?;
        if d == 0.0 {
            bail!("q0 denominator must be nonzero");
        }
        return Ok(n / d);
    }
    Ok(text.trim().parse::<f64>().context("q0 value")?)
}

/// Parse a window given as `min:max`.
pub fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("window '{text}' must look like min:max"))?;
    let lo: i64 = lo.trim().parse().context("window min")?;
    let hi: i64 = hi.trim().parse().context("window max")?;
    if lo >= hi {
        bail!("window min must be below max");
    }
    Ok((lo, hi))
}

impl RunConfig {
    /// Merge: defaults <- file <- flags.
    pub fn assemble(
        file: &FileConfig,
        q0_flag: Option<&str>,
        window_flag: Option<&str>,
        tol_flag: Option<f64>,
    ) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(q) = &file.q0 {
            cfg.q0_text = q.clone();
            cfg.q0 = parse_q0(q)?;
        }
        if let Some(w) = &file.window {
            cfg.window = parse_window(w)?;
        }
        if let Some(t) = file.tol {
            cfg.tol = t;
        }
        if let Some(q) = q0_flag {
            cfg.q0_text = q.to_string();
            cfg.q0 = parse_q0(q)?;
        }
        if let Some(w) = window_flag {
            cfg.window = parse_window(w)?;
        }
        if let Some(t) = tol_flag {
            cfg.tol = t;
        }
        if cfg.q0 <= 1.0 {
            bail!("q0 must be > 1 (got {})", cfg.q0);
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_accepts_rationals_and_floats() {
        assert_eq!(parse_q0("11/10").unwrap(), 1.1);
        assert_eq!(parse_q0("1.5").unwrap(), 1.5);
        assert!(parse_q0("1/0").is_err());
    }

    #[test]
    fn window_parses() {
        assert_eq!(parse_window("-60:60").unwrap(), (-60, 60));
        assert!(parse_window("5:1").is_err());
        assert!(parse_window("junk").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = FileConfig {
            q0: Some("3/2".into()),
            window: Some("-10:10".into()),
            tol: Some(1e-6),
            format: None,
            out: None,
        };
        let cfg = RunConfig::assemble(&file, Some("2.0"), None, None).unwrap();
        assert_eq!(cfg.q0, 2.0);
        assert_eq!(cfg.window, (-10, 10));
        assert_eq!(cfg.tol, 1e-6);
    }
}
