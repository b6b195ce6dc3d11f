//! Truncated-lattice Hilbert-space representations of the one-dimensional
//! algebra `q^(1/2)xp - q^(-1/2)px = iΛ`, `Λp = qpΛ`, `Λx = q⁻¹xΛ`.
//!
//! The basis is `|n,σ⟩` with `x|n,σ⟩ = σ s q^n |n,σ⟩`, `Λ` the upward shift
//! and `p` the tridiagonal operator
//! `p|n,σ⟩ = iλ⁻¹(σ/s) q^(-n) (q^(-1/2)|n+1,σ⟩ - q^(1/2)|n-1,σ⟩)`.
//! Operators exist in an exact mode (complexified scalars) and a numeric
//! mode (complex floats). The momentum eigenbasis is built from the lattice
//! `cos_q`/`sin_q` values; spectral claims are verified as residuals against
//! these analytic eigenvectors, with rows within two steps of the window
//! edge masked (the shift truncation corrupts them by construction).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::numf;
use crate::qarith::{CQScalar, QScalar};
use crate::qfourier::{normalization_nq, FourierError};
use crate::qspecial::lattice::{LatticeTrigTable, TrigEvalError};

/// Errors from representation-space operations.
#[derive(Debug, Clone, PartialEq)]
pub enum LatrepError {
    /// Boundary coefficients carry more mass than the threshold allows.
    WindowTooSmall { tail: f64, threshold: f64 },
    /// The requested σ sector is not part of the window.
    MissingSigma,
    Trig(TrigEvalError),
    Fourier(FourierError),
}

impl fmt::Display for LatrepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatrepError::WindowTooSmall { tail, threshold } => {
                write!(f, "window too small: boundary tail {tail:e} exceeds {threshold:e}")
            }
            LatrepError::MissingSigma => write!(f, "σ sector not contained in the window"),
            LatrepError::Trig(e) => write!(f, "{e}"),
            LatrepError::Fourier(e) => write!(f, "{e}"),
        }
    }
}

impl From<TrigEvalError> for LatrepError {
    fn from(e: TrigEvalError) -> Self {
        LatrepError::Trig(e)
    }
}

impl From<FourierError> for LatrepError {
    fn from(e: FourierError) -> Self {
        LatrepError::Fourier(e)
    }
}

/// Which σ sectors a window carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaSet {
    Plus,
    Minus,
    Both,
}

impl SigmaSet {
    pub fn sigmas(&self) -> &'static [i8] {
        match self {
            SigmaSet::Plus => &[1],
            SigmaSet::Minus => &[-1],
            SigmaSet::Both => &[1, -1],
        }
    }

    pub fn contains(&self, sigma: i8) -> bool {
        self.sigmas().contains(&sigma)
    }
}

/// Truncated basis window `|n,σ⟩`, `n ∈ [nmin, nmax]`, with the
/// representation label `s ∈ [1, q)` kept as an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub nmin: i64,
    pub nmax: i64,
    pub sigmas: SigmaSet,
    pub s: BigRational,
}

impl Window {
    pub fn new(nmin: i64, nmax: i64, sigmas: SigmaSet) -> Self {
        assert!(nmin < nmax);
        Window { nmin, nmax, sigmas, s: BigRational::one() }
    }

    pub fn with_s(mut self, s: BigRational) -> Self {
        self.s = s;
        self
    }

    pub fn span(&self) -> usize {
        (self.nmax - self.nmin + 1) as usize
    }

    pub fn dim(&self) -> usize {
        self.span() * self.sigmas.sigmas().len()
    }

    /// Basis index of `|n,σ⟩`.
    pub fn index(&self, n: i64, sigma: i8) -> Option<usize> {
        if n < self.nmin || n > self.nmax || !self.sigmas.contains(sigma) {
            return None;
        }
        let block = match (self.sigmas, sigma) {
            (SigmaSet::Both, -1) => 1,
            _ => 0,
        };
        Some(block * self.span() + (n - self.nmin) as usize)
    }

    /// Inverse of [`Window::index`].
    pub fn label(&self, idx: usize) -> (i64, i8) {
        let span = self.span();
        let (block, off) = (idx / span, idx % span);
        let sigma = match (self.sigmas, block) {
            (SigmaSet::Both, 1) => -1,
            (SigmaSet::Minus, _) => -1,
            _ => 1,
        };
        (self.nmin + off as i64, sigma)
    }

    /// Rows within two lattice steps of the window edge (masked in
    /// residuals: the shift truncation corrupts them by construction).
    pub fn is_boundary(&self, n: i64) -> bool {
        n < self.nmin + 2 || n > self.nmax - 2
    }

    pub fn s_f64(&self) -> f64 {
        big_ratio_to_f64(&self.s)
    }
}

fn big_ratio_to_f64(r: &BigRational) -> f64 {
    crate::qarith::rational_to_f64(r)
}

// ---------------------------------------------------------------------------
// Sparse operators
// ---------------------------------------------------------------------------

/// Scalar types an operator can carry.
pub trait OpScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
}

impl OpScalar for CQScalar {
    fn zero() -> Self {
        CQScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CQScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        CQScalar::conj(self)
    }
}

impl OpScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// Sparse operator on the window basis.
#[derive(Clone, PartialEq)]
pub struct LatticeOp<T> {
    pub window: Window,
    entries: BTreeMap<(usize, usize), T>,
}

/// Exact-mode operator.
pub type ExactOp = LatticeOp<CQScalar>;
/// Numeric-mode operator.
pub type NumericOp = LatticeOp<Complex64>;

impl<T: OpScalar> LatticeOp<T> {
    pub fn zero(window: Window) -> Self {
        LatticeOp { window, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, row: usize, col: usize, v: T) {
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn add_assign_at(&mut self, row: usize, col: usize, v: T) {
        let cur = self.get(row, col);
        self.set(row, col, cur.add(&v));
    }

    pub fn mul(&self, o: &LatticeOp<T>) -> LatticeOp<T> {
        let mut out = LatticeOp::zero(self.window.clone());
        // index o by row for the contraction
        let mut by_row: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for ((r, c), v) in &o.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        for ((r, k), a) in &self.entries {
            if let Some(cols) = by_row.get(k) {
                for (c, b) in cols {
                    out.add_assign_at(*r, *c, a.mul(b));
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &LatticeOp<T>) -> LatticeOp<T> {
        let mut out = self.clone();
        for ((r, c), v) in &o.entries {
            out.add_assign_at(*r, *c, v.neg());
        }
        out
    }

    pub fn scale(&self, f: &T) -> LatticeOp<T> {
        let mut out = LatticeOp::zero(self.window.clone());
        for ((r, c), v) in &self.entries {
            out.set(*r, *c, v.mul(f));
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> LatticeOp<T> {
        let mut out = LatticeOp::zero(self.window.clone());
        for ((r, c), v) in &self.entries {
            out.set(*c, *r, v.conj());
        }
        out
    }

    /// Entries whose row and column both sit on interior lattice labels.
    pub fn interior_entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter().filter(|((r, c), _)| {
            let (nr, _) = self.window.label(*r);
            let (nc, _) = self.window.label(*c);
            !self.window.is_boundary(nr) && !self.window.is_boundary(nc)
        })
    }
}

impl NumericOp {
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.window.dim()];
        for ((r, c), a) in &self.entries {
            out[*r] += a * v[*c];
        }
        out
    }

    pub fn max_interior_abs(&self) -> f64 {
        self.interior_entries()
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Operator construction
// ---------------------------------------------------------------------------

/// Exact-mode `x`, `Λ`, `p` on the window.
///
/// `x` is diagonal with entries `σ s q^n`; `Λ` shifts `n -> n+1` (the top
/// image is absent by truncation); `p` is tridiagonal in `n` with
/// `⟨n±1|p|n⟩ = ∓ i λ⁻¹ (σ/s) q^(-n∓1/2)`.
pub fn build_ops_exact(window: &Window) -> (ExactOp, ExactOp, ExactOp) {
    let mut x = ExactOp::zero(window.clone());
    let mut lam = ExactOp::zero(window.clone());
    let mut p = ExactOp::zero(window.clone());
    let s = QScalar::from_rational(window.s.clone());
    let s_inv = s.inv().expect("s >= 1");
    let lambda_inv = QScalar::lambda().inv().expect("λ ≠ 0");
    for sigma in window.sigmas.sigmas() {
        let sig = if *sigma > 0 { QScalar::one() } else { -&QScalar::one() };
        for n in window.nmin..=window.nmax {
            let col = window.index(n, *sigma).unwrap();
            // x
            let xval = &(&sig * &s) * &QScalar::q_pow(n);
            x.set(col, col, CQScalar::from_real(xval));
            // Λ: |n⟩ -> |n+1⟩
            if let Some(row) = window.index(n + 1, *sigma) {
                lam.set(row, col, CQScalar::one());
                // p upper line: ⟨n+1|p|n⟩ = iλ⁻¹(σ/s) q^(-n-1/2)
                let v = &(&(&sig * &s_inv) * &lambda_inv) * &QScalar::t_pow(-2 * n - 1);
                p.set(row, col, CQScalar::from_imag(v));
            }
            if let Some(row) = window.index(n - 1, *sigma) {
                // ⟨n-1|p|n⟩ = -iλ⁻¹(σ/s) q^(-n+1/2)
                let v = &(&(&sig * &s_inv) * &lambda_inv) * &QScalar::t_pow(-2 * n + 1);
                p.set(row, col, CQScalar::from_imag(-&v));
            }
        }
    }
    (x, lam, p)
}

/// Numeric-mode `x`, `Λ`, `p` at `q = q0`.
pub fn build_ops_numeric(window: &Window, q0: f64) -> (NumericOp, NumericOp, NumericOp) {
    let mut x = NumericOp::zero(window.clone());
    let mut lam = NumericOp::zero(window.clone());
    let mut p = NumericOp::zero(window.clone());
    let s = window.s_f64();
    let lambda = q0 - 1.0 / q0;
    let sq = numf::sqrt(q0);
    for sigma in window.sigmas.sigmas() {
        let sig = *sigma as f64;
        for n in window.nmin..=window.nmax {
            let col = window.index(n, *sigma).unwrap();
            x.set(col, col, Complex64::new(sig * s * numf::powi(q0, n), 0.0));
            if let Some(row) = window.index(n + 1, *sigma) {
                lam.set(row, col, Complex64::new(1.0, 0.0));
                let v = sig / s / lambda * numf::powi(q0, -n) / sq;
                p.set(row, col, Complex64::new(0.0, v));
            }
            if let Some(row) = window.index(n - 1, *sigma) {
                let v = sig / s / lambda * numf::powi(q0, -n) * sq;
                p.set(row, col, Complex64::new(0.0, -v));
            }
        }
    }
    (x, lam, p)
}

fn algebra_combos_exact(x: &ExactOp, lam: &ExactOp, p: &ExactOp) -> [ExactOp; 3] {
    let th = CQScalar::from_real(QScalar::t_pow(1));
    let thi = CQScalar::from_real(QScalar::t_pow(-1));
    let q = CQScalar::from_real(QScalar::q_pow(1));
    let qi = CQScalar::from_real(QScalar::q_pow(-1));
    let i = CQScalar::i();
    [
        // q^(1/2)xp - q^(-1/2)px - iΛ
        x.mul(p).scale(&th).sub(&p.mul(x).scale(&thi)).sub(&lam.scale(&i)),
        // Λp - qpΛ
        lam.mul(p).sub(&p.mul(lam).scale(&q)),
        // Λx - q⁻¹xΛ
        lam.mul(x).sub(&x.mul(lam).scale(&qi)),
    ]
}

/// Exact-mode algebra residual: the number of nonzero interior entries of
/// `q^(1/2)xp - q^(-1/2)px - iΛ`, `Λp - qpΛ` and `Λx - q⁻¹xΛ`. Must be 0.
pub fn algebra_residual_exact(x: &ExactOp, lam: &ExactOp, p: &ExactOp) -> usize {
    algebra_combos_exact(x, lam, p)
        .iter()
        .map(|m| m.interior_entries().filter(|(_, v)| !v.is_zero()).count())
        .sum()
}

/// Numeric-mode algebra residual: max interior entry magnitude of the same
/// three combinations.
pub fn algebra_residual_numeric(x: &NumericOp, lam: &NumericOp, p: &NumericOp, q0: f64) -> f64 {
    let sq = numf::sqrt(q0);
    let c = |re: f64| Complex64::new(re, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let combos = [
        x.mul(p)
            .scale(&c(sq))
            .sub(&p.mul(x).scale(&c(1.0 / sq)))
            .sub(&lam.scale(&i)),
        lam.mul(p).sub(&p.mul(lam).scale(&c(q0))),
        lam.mul(x).sub(&x.mul(lam).scale(&c(1.0 / q0))),
    ];
    combos.iter().map(|m| m.max_interior_abs()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Momentum eigenbasis
// ---------------------------------------------------------------------------

/// The two selfadjoint-extension families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    I,
    II,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I => write!(f, "I"),
            Family::II => write!(f, "II"),
        }
    }
}

/// A momentum eigenstate on the window basis.
#[derive(Clone)]
pub struct MomentumState {
    pub tau: i8,
    pub nu: i64,
    pub family: Family,
    pub reducible: bool,
    pub window: Window,
    pub coeffs: Vec<Complex64>,
    q0: f64,
}

impl MomentumState {
    pub fn norm(&self) -> f64 {
        numf::sqrt(self.coeffs.iter().map(|c| c.norm_sqr()).sum())
    }

    /// The `p` eigenvalue this state belongs to
    /// (`στ q^(2ν) / (sλ√q)` for family I, one factor `q` lower for II;
    /// reducible combinations carry `στ = τ`).
    pub fn eigenvalue(&self, q0: f64, sigma: i8) -> f64 {
        let s = self.window.s_f64();
        let lambda = q0 - 1.0 / q0;
        let base = (sigma as f64) * (self.tau as f64) / (s * lambda * numf::sqrt(q0));
        match self.family {
            Family::I => base * numf::powi(q0, 2 * self.nu),
            Family::II => base * numf::powi(q0, 2 * self.nu - 1),
        }
    }

    /// The obstruction sum of the no-selfadjointness argument:
    /// `Σ_n q^n |c_{n,σ}|²` over a single σ sector, normalized by the state
    /// norm. Strictly positive for any single-sector state, which is exactly
    /// why no selfadjoint extension exists with σ fixed.
    pub fn single_sector_obstruction(&self, sigma: i8) -> f64 {
        let weights: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(idx, _)| self.window.label(*idx).1 == sigma)
            .map(|(idx, c)| {
                let (n, _) = self.window.label(idx);
                numf::powi(self.q0, n) * c.norm_sqr()
            })
            .sum();
        weights / (self.norm() * self.norm())
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
}

/// Construct a momentum eigenstate.
///
/// Irreducible states live in one σ sector (σ = +1 unless the window carries
/// only σ = -1); reducible states combine both sectors. Family I pairs
/// `cos_q` on even labels with `τ·i·sin_q` on odd labels; family II is its
/// image under `Λ`. Errors when a boundary coefficient still carries more
/// than `tail_threshold` of the peak coefficient weight.
pub fn momentum_state(
    tau: i8,
    nu: i64,
    family: Family,
    reducible: bool,
    window: &Window,
    q0: f64,
) -> Result<MomentumState, LatrepError> {
    momentum_state_checked(tau, nu, family, reducible, window, q0, 1e-2)
}

pub fn momentum_state_checked(
    tau: i8,
    nu: i64,
    family: Family,
    reducible: bool,
    window: &Window,
    q0: f64,
    tail_threshold: f64,
) -> Result<MomentumState, LatrepError> {
    assert!(tau == 1 || tau == -1, "τ = ±1");
    if reducible && window.sigmas != SigmaSet::Both {
        return Err(LatrepError::MissingSigma);
    }
    let nq = normalization_nq(q0, 1e-16)?;
    // pair index m with lattice labels 2m / 2m+1; family II also reads the
    // sin table at m-1
    let m_lo = window.nmin.div_euclid(2) - 1;
    let m_hi = window.nmax.div_euclid(2) + 1;
    let table = LatticeTrigTable::build(q0, m_lo + nu - 1, m_hi + nu)?;
    let sigma_main: i8 = if window.sigmas.contains(1) { 1 } else { -1 };
    let overall = if reducible { 0.5 * nq } else { nq / numf::sqrt(2.0) };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); window.dim()];
    let mut place = |n: i64, sigma: i8, v: Complex64| {
        if let Some(idx) = window.index(n, sigma) {
            coeffs[idx] += v;
        }
    };
    let sigmas: &[i8] = if reducible { &[1, -1] } else { core::slice::from_ref(&sigma_main) };
    for m in m_lo..=m_hi {
        let weight = overall * numf::powi(q0, m + nu);
        let cosv = table.cos_at(m + nu);
        let sinv = table.sin_at(m + nu);
        let sin_shift = table.sin_at(m + nu - 1);
        for sigma in sigmas {
            // reducible combinations flip the sign of the odd/even partner
            // in the σ = -1 sector
            let flip = if reducible && *sigma == -1 { -1.0 } else { 1.0 };
            match family {
                Family::I => {
                    place(2 * m, *sigma, Complex64::new(weight * cosv, 0.0));
                    place(
                        2 * m + 1,
                        *sigma,
                        Complex64::new(0.0, flip * (tau as f64) * weight * sinv),
                    );
                }
                Family::II => {
                    place(2 * m + 1, *sigma, Complex64::new(weight * cosv, 0.0));
                    place(
                        2 * m,
                        *sigma,
                        Complex64::new(0.0, flip * (tau as f64) * weight * sin_shift / q0),
                    );
                }
            }
        }
    }
    let state = MomentumState {
        tau,
        nu,
        family,
        reducible,
        window: window.clone(),
        coeffs,
        q0,
    };
    // boundary tail relative to the peak coefficient
    let peak = state.coeffs.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
    let mut tail = 0.0f64;
    for (idx, c) in state.coeffs.iter().enumerate() {
        let (n, _) = state.window.label(idx);
        if n <= window.nmin + 1 || n >= window.nmax - 1 {
            tail = tail.max(c.norm_sqr());
        }
    }
    let rel = if peak > 0.0 { tail / peak } else { 0.0 };
    if rel > tail_threshold {
        return Err(LatrepError::WindowTooSmall { tail: rel, threshold: tail_threshold });
    }
    Ok(state)
}

/// `‖op·v - μ·v‖ / ‖v‖` with boundary rows masked.
pub fn eigen_residual(op: &NumericOp, state: &MomentumState, eigenvalue: Complex64) -> f64 {
    let image = op.apply(&state.coeffs);
    let mut num = 0.0f64;
    for (idx, (a, b)) in image.iter().zip(&state.coeffs).enumerate() {
        let (n, _) = op.window.label(idx);
        if op.window.is_boundary(n) {
            continue;
        }
        num += (a - eigenvalue * b).norm_sqr();
    }
    numf::sqrt(num) / state.norm()
}

/// `‖Λ·u - v‖ / ‖u‖` with boundary rows masked: how `Λ` maps one state onto
/// another (family I at ν goes to family II at ν; family II at ν to family I
/// at ν-1).
pub fn lambda_map_residual(lam: &NumericOp, from: &MomentumState, to: &MomentumState) -> f64 {
    let image = lam.apply(&from.coeffs);
    let mut num = 0.0f64;
    for (idx, (a, b)) in image.iter().zip(&to.coeffs).enumerate() {
        let (n, _) = lam.window.label(idx);
        if lam.window.is_boundary(n) {
            continue;
        }
        num += (a - b).norm_sqr();
    }
    numf::sqrt(num) / from.norm()
}

/// One spectrum line of [`hamiltonian_check`].
#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub family: Family,
    pub tau: i8,
    pub nu: i64,
    pub eigenvalue: f64,
    pub residual: f64,
}

/// Residuals of `H = p²/2` against `μ²/2` on the reducible momentum basis,
/// for both families and both `τ`, `ν ∈ nu_range`.
///
/// The spectrum is `{q^(4ν)/(2s²λ²q), q^(4ν-2)/(2s²λ²q)}`, the square of the
/// `p` eigenvalues. (The τ sign cancels, so τ = ±1 entries pair up.)
pub fn hamiltonian_check(
    window: &Window,
    q0: f64,
    nu_range: core::ops::RangeInclusive<i64>,
) -> Result<Vec<SpectrumEntry>, LatrepError> {
    let (_, _, p) = build_ops_numeric(window, q0);
    let h = p.mul(&p).scale(&Complex64::new(0.5, 0.0));
    let mut out = Vec::new();
    for family in [Family::I, Family::II] {
        for tau in [1i8, -1] {
            for nu in nu_range.clone() {
                let st = momentum_state(tau, nu, family, true, window, q0)?;
                let mu = st.eigenvalue(q0, 1);
                let ev = 0.5 * mu * mu;
                let residual = eigen_residual(&h, &st, Complex64::new(ev, 0.0));
                out.push(SpectrumEntry { family, tau, nu, eigenvalue: ev, residual });
            }
        }
    }
    Ok(out)
}

/// Max deviation from the identity of the Gram matrix of the reducible
/// family-I ⊕ family-II basis restricted to `|ν| <= nu_max` (both τ).
pub fn reducible_gram_residual(
    window: &Window,
    q0: f64,
    nu_max: i64,
) -> Result<f64, LatrepError> {
    let mut states = Vec::new();
    for family in [Family::I, Family::II] {
        for tau in [1i8, -1] {
            for nu in -nu_max..=nu_max {
                states.push(momentum_state(tau, nu, family, true, window, q0)?);
            }
        }
    }
    let mut worst = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let dot: Complex64 = a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.conj() * y)
                .sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window_60() -> Window {
        Window::new(-60, 60, SigmaSet::Both)
    }

    #[test]
    fn exact_algebra_residual_is_zero() {
        let w = Window::new(-8, 8, SigmaSet::Both);
        let (x, lam, p) = build_ops_exact(&w);
        assert_eq!(algebra_residual_exact(&x, &lam, &p), 0);
        // single σ sector too
        let wp = Window::new(-6, 6, SigmaSet::Plus);
        let (x, lam, p) = build_ops_exact(&wp);
        assert_eq!(algebra_residual_exact(&x, &lam, &p), 0);
    }

    #[test]
    fn numeric_algebra_residual_small() {
        let w = Window::new(-20, 20, SigmaSet::Both);
        let (x, lam, p) = build_ops_numeric(&w, 1.1);
        assert!(algebra_residual_numeric(&x, &lam, &p, 1.1) < 1e-12);
    }

    #[test]
    fn x_matrix_elements() {
        let w = Window::new(-4, 4, SigmaSet::Both).with_s(BigRational::new(5.into(), 4.into()));
        let (x, _, _) = build_ops_exact(&w);
        let idx = w.index(3, -1).unwrap();
        let want = CQScalar::from_real(
            &(-&QScalar::from_rational(BigRational::new(5.into(), 4.into())))
                * &QScalar::q_pow(3),
        );
        assert_eq!(x.get(idx, idx), want);
    }

    #[test]
    fn p_matrix_elements_and_hermiticity() {
        let w = Window::new(-5, 5, SigmaSet::Plus);
        let (_, lam, p) = build_ops_exact(&w);
        // ⟨n|p|n+1⟩ = -iλ⁻¹ q^(-n-1/2) at s = 1, σ = +1
        let n = 2i64;
        let row = w.index(n, 1).unwrap();
        let col = w.index(n + 1, 1).unwrap();
        let want = CQScalar::from_imag(
            -&(&QScalar::lambda().inv().unwrap() * &QScalar::t_pow(-2 * n - 1)),
        );
        assert_eq!(p.get(row, col), want);
        // hermiticity: p equals its conjugate transpose exactly
        assert!(p.adjoint() == p);
        // Λ†Λ = identity away from the top column
        let ltl = lam.adjoint().mul(&lam);
        for n in -5..5 {
            let c = w.index(n, 1).unwrap();
            assert_eq!(ltl.get(c, c), CQScalar::one(), "n={n}");
        }
        let top = w.index(5, 1).unwrap();
        assert!(ltl.get(top, top).is_zero());
    }

    #[test]
    fn lambda_shifts_columns_up() {
        let w = Window::new(-3, 3, SigmaSet::Plus);
        let (_, lam, _) = build_ops_exact(&w);
        for n in -3..3 {
            let col = w.index(n, 1).unwrap();
            let row = w.index(n + 1, 1).unwrap();
            assert!(lam.get(row, col).re.is_one());
        }
        // the top column has no image
        let top = w.index(3, 1).unwrap();
        assert!((0..w.dim()).all(|r| lam.get(r, top).is_zero()));
    }

    #[test]
    fn momentum_states_are_eigenvectors() {
        let q0 = 1.1;
        let w = window_60();
        let (_, _, p) = build_ops_numeric(&w, q0);
        for family in [Family::I, Family::II] {
            for tau in [1i8, -1] {
                for nu in [-1i64, 0, 2] {
                    // irreducible σ = +1 sector
                    let wp = Window::new(-60, 60, SigmaSet::Plus);
                    let (_, _, pp) = build_ops_numeric(&wp, q0);
                    let st = momentum_state(tau, nu, family, false, &wp, q0).unwrap();
                    let mu = st.eigenvalue(q0, 1);
                    let r = eigen_residual(&pp, &st, Complex64::new(mu, 0.0));
                    assert!(r < 1e-6, "irreducible {family} τ={tau} ν={nu}: {r:e}");
                    // reducible combination
                    let st = momentum_state(tau, nu, family, true, &w, q0).unwrap();
                    let mu = st.eigenvalue(q0, 1);
                    let r = eigen_residual(&p, &st, Complex64::new(mu, 0.0));
                    assert!(r < 1e-6, "reducible {family} τ={tau} ν={nu}: {r:e}");
                }
            }
        }
    }

    #[test]
    fn wrong_eigenvalue_is_rejected() {
        let q0 = 1.1;
        let w = window_60();
        let (_, _, p) = build_ops_numeric(&w, q0);
        let st = momentum_state(1, 0, Family::I, true, &w, q0).unwrap();
        let mu_wrong = st.eigenvalue(q0, 1) * q0 * q0; // neighbor eigenvalue
        let r = eigen_residual(&p, &st, Complex64::new(mu_wrong, 0.0));
        assert!(r > 0.1, "wrong eigenvalue should give O(1) residual, got {r:e}");
    }

    #[test]
    fn x_on_basis_vector_is_exact() {
        let q0 = 1.3;
        let w = Window::new(-6, 6, SigmaSet::Both);
        let (x, _, _) = build_ops_numeric(&w, q0);
        let mut v = vec![Complex64::new(0.0, 0.0); w.dim()];
        let idx = w.index(2, -1).unwrap();
        v[idx] = Complex64::new(1.0, 0.0);
        let image = x.apply(&v);
        let want = -numf::powi(q0, 2);
        assert_eq!(image[idx], Complex64::new(want, 0.0));
        for (k, val) in image.iter().enumerate() {
            if k != idx {
                assert!(val.is_zero());
            }
        }
    }

    #[test]
    fn lambda_maps_families_into_each_other() {
        let q0 = 1.1;
        let w = window_60();
        let (_, lam, _) = build_ops_numeric(&w, q0);
        for tau in [1i8, -1] {
            for nu in [-1i64, 0, 1] {
                let fi = momentum_state(tau, nu, Family::I, true, &w, q0).unwrap();
                let fii = momentum_state(tau, nu, Family::II, true, &w, q0).unwrap();
                let r = lambda_map_residual(&lam, &fi, &fii);
                assert!(r < 1e-6, "Λ I(ν) -> II(ν): {r:e}");
                let fi_down = momentum_state(tau, nu - 1, Family::I, true, &w, q0).unwrap();
                let r2 = lambda_map_residual(&lam, &fii, &fi_down);
                assert!(r2 < 1e-6, "Λ II(ν) -> I(ν-1): {r2:e}");
            }
        }
    }

    #[test]
    fn hamiltonian_spectrum() {
        let q0 = 1.1;
        let w = window_60();
        let entries = hamiltonian_check(&w, q0, -2..=2).unwrap();
        for e in &entries {
            assert!(e.residual < 1e-6, "{:?}", e);
        }
        // τ = ±1 give identical eigenvalues
        for e in &entries {
            let partner = entries
                .iter()
                .find(|o| o.family == e.family && o.nu == e.nu && o.tau == -e.tau)
                .unwrap();
            assert_eq!(e.eigenvalue, partner.eigenvalue);
        }
        // successive family-I eigenvalues are q⁴ apart
        let f1: Vec<&SpectrumEntry> = entries
            .iter()
            .filter(|e| e.family == Family::I && e.tau == 1)
            .collect();
        for pair in f1.windows(2) {
            let ratio = pair[1].eigenvalue / pair[0].eigenvalue;
            assert!((ratio - numf::powi(q0, 4)).abs() < 1e-9);
        }
        // family I and II interlace by one factor q in p, i.e. q² in H
        let f2 = entries
            .iter()
            .find(|e| e.family == Family::II && e.tau == 1 && e.nu == 0)
            .unwrap();
        let f1_0 = entries
            .iter()
            .find(|e| e.family == Family::I && e.tau == 1 && e.nu == 0)
            .unwrap();
        let ratio = f1_0.eigenvalue / f2.eigenvalue;
        assert!((ratio - q0 * q0).abs() < 1e-9);
    }

    #[test]
    fn reducible_gram_close_to_identity() {
        // wide window so the geometric left tail is under the tolerance
        let q0 = 1.1;
        let w = Window::new(-190, 80, SigmaSet::Both);
        let r = reducible_gram_residual(&w, q0, 3).unwrap();
        assert!(r < 1e-6, "gram residual {r:e}");
    }

    #[test]
    fn single_sector_obstruction_is_positive() {
        // Σ q^n |c_n|² over one σ sector cannot vanish: the obstruction to a
        // selfadjoint extension within a single sector
        let q0 = 1.1;
        let w = Window::new(-60, 60, SigmaSet::Plus);
        let st = momentum_state(1, 0, Family::I, false, &w, q0).unwrap();
        let obstruction = st.single_sector_obstruction(1);
        assert!(obstruction > 1e-3, "{obstruction:e}");
    }

    #[test]
    fn window_too_small_is_reported() {
        let q0 = 1.1;
        let w = Window::new(-3, 3, SigmaSet::Both);
        let r = momentum_state_checked(1, 0, Family::I, true, &w, q0, 1e-12);
        assert!(matches!(r, Err(LatrepError::WindowTooSmall { .. })));
        // reducible states need both sectors
        let wp = Window::new(-10, 10, SigmaSet::Plus);
        assert!(matches!(
            momentum_state(1, 0, Family::I, true, &wp, q0),
            Err(LatrepError::MissingSigma)
        ));
    }
}
