//! Verification suites: each returns a list of named checks; `run_suite`
//! dispatches by name and assembles the report.

pub mod calculus;
pub mod euclid;
pub mod fourier;
pub mod groups;
pub mod representation;
pub mod rmatrix_suite;
pub mod special;

use anyhow::{bail, Result};

use crate::config::RunConfig;
use crate::report::{CheckResult, SuiteReport};

pub const SUITE_NAMES: &[&str] = &[
    "calculus",
    "special",
    "fourier",
    "representation",
    "rmatrix",
    "groups",
    "euclid",
    "all",
];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let checks = checks_for(name, cfg)?;
    let mut report = SuiteReport::new(name, cfg, checks);
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn checks_for(name: &str, cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    Ok(match name {
        "calculus" => calculus::checks(cfg),
        "special" => special::checks(cfg),
        "fourier" => fourier::checks(cfg),
        "representation" => representation::checks(cfg),
        "rmatrix" => rmatrix_suite::checks(cfg),
        "groups" => groups::checks(cfg),
        "euclid" => euclid::checks(cfg),
        "all" => {
            let mut all = Vec::new();
            for sub in SUITE_NAMES.iter().filter(|s| **s != "all") {
                for mut c in checks_for(sub, cfg)? {
                    c.id = format!("{sub}/{}", c.id);
                    all.push(c);
                }
            }
            all
        }
        other => bail!("unknown suite '{other}' (expected one of {SUITE_NAMES:?})"),
    })
}
