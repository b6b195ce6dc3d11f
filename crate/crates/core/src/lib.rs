//! Exact-arithmetic and numeric workbench for q-deformed Heisenberg algebras.
//!
//! The crate is organized around one exact scalar domain and a set of
//! verification engines built on top of it:
//!
//! - [`qarith`]: Laurent polynomials and rational functions in `t = q^(1/2)`,
//!   q-numbers `[m]`, q-factorials, complexified scalars, text round-trip.
//! - [`fieldcalc`]: the commutative field algebra of Laurent polynomials in
//!   `x` with the maps `∇`, `L`, `L⁻¹`, the indefinite integral, the lattice
//!   definite integral and the Jackson scalar product.
//! - [`qspecial`]: `cos_q`/`sin_q` series coefficients, exact identity
//!   checks, and stable numeric evaluation on the `q`-lattice.
//! - [`qfourier`]: the lattice q-Fourier transform, its normalization
//!   constant, Gram and Plancherel residuals.
//! - [`latrep`]: truncated-lattice Hilbert-space representations of the
//!   one-dimensional algebra: `x`, `Λ`, `p`, momentum eigenbases, spectra.
//! - [`ncalg`]: a noncommutative normal-ordering engine with diamond-lemma
//!   overlap checking over exact scalar coefficients.
//! - [`rmatrix`]: exact R-matrix toolkit: GL_q(n) matrices, Yang-Baxter
//!   checks, projector decompositions, RTT and quantum-plane relation
//!   generation, the one-dimensional Heisenberg derivation.
//! - [`qgroups`]: the q-deformed Lie algebra sl_q(2)/su_q(2) and the
//!   three-dimensional q-Euclidean space SO_q(3).
//!
//! All exact values are immutable after construction and operations are
//! pure, so everything here is safe to share across threads.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod fieldcalc;
pub mod latrep;
pub mod ncalg;
pub(crate) mod numf;
pub mod qarith;
pub mod qfourier;
pub mod qgroups;
pub mod qspecial;
pub mod rmatrix;

pub use qarith::{CQScalar, HalfLaurent, QScalar};
