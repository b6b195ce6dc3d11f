//! Command-line front end for the q-deformed Heisenberg algebra workbench:
//! verification suites, spectra, transforms, figure-reproduction tables and
//! machine-readable reports.

pub mod config;
pub mod export;
pub mod report;
pub mod rng;
pub mod suites;
