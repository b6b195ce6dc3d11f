//! The q-deformed Lie algebra `sl_q(2)`/`su_q(2)` and the three-dimensional
//! q-Euclidean space `SO_q(3)`.
//!
//! Spin-`j` representations are built from the standard matrix elements
//! (`T⁺|j,m> = q^(-m-3/2)√([j+m+1][j-m]) |j,m+1>` and friends, basis ordered
//! by ascending `m`). Entries with radicals are handled numerically at a
//! sample `q0`, while all radical-free data — the `T³` and `τ` diagonals,
//! the products `T⁺T⁻`, the Casimir — are additionally checked exactly.

pub mod so3;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ncalg::{Alphabet, NCPoly, RewriteSystem, DEFAULT_FUEL};
use crate::numf;
use crate::qarith::{qnum_half, QScalar};

pub use so3::{euclid3_system, so3_build, Euclid3Report, So3Error, So3Structure};

// ---------------------------------------------------------------------------
// Small dense real matrices
// ---------------------------------------------------------------------------

/// Dense real matrix used for numeric representation checks.
#[derive(Clone, Debug, PartialEq)]
pub struct FMat {
    pub dim: usize,
    e: Vec<f64>,
}

impl FMat {
    pub fn zero(dim: usize) -> Self {
        FMat { dim, e: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.e[i * dim + i] = 1.0;
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.e[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.e[r * self.dim + c] = v;
    }

    pub fn mul(&self, o: &FMat) -> FMat {
        let mut out = FMat::zero(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.at(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..self.dim {
                    out.e[r * self.dim + c] += a * o.at(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &FMat) -> FMat {
        FMat {
            dim: self.dim,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &FMat) -> FMat {
        FMat {
            dim: self.dim,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, f: f64) -> FMat {
        FMat { dim: self.dim, e: self.e.iter().map(|a| a * f).collect() }
    }

    pub fn transpose(&self) -> FMat {
        let mut out = FMat::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|a| numf::fabs(*a)).fold(0.0, f64::max)
    }

    /// Kronecker product.
    pub fn kron(&self, o: &FMat) -> FMat {
        let d = self.dim * o.dim;
        let mut out = FMat::zero(d);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.at(r1, c1);
                if a == 0.0 {
                    continue;
                }
                for r2 in 0..o.dim {
                    for c2 in 0..o.dim {
                        out.set(r1 * o.dim + r2, c1 * o.dim + c2, a * o.at(r2, c2));
                    }
                }
            }
        }
        out
    }
}

fn qnum_f(m: f64, q0: f64) -> f64 {
    if q0 == 1.0 {
        return m;
    }
    let lambda = q0 - 1.0 / q0;
    (libm::pow(q0, m) - libm::pow(q0, -m)) / lambda
}

// ---------------------------------------------------------------------------
// su_q(2) representations
// ---------------------------------------------------------------------------

/// Spin-`j` representation of `su_q(2)` at a sample `q0`, basis `|j,m>` in
/// ascending `m`; the radical-free diagonals also travel exactly.
#[derive(Clone)]
pub struct SuqRep {
    /// `2j`
    pub two_j: i64,
    pub q0: f64,
    pub t3: FMat,
    pub tplus: FMat,
    pub tminus: FMat,
    pub tau: FMat,
    /// Exact `T³` diagonal `q^(-2m)[2m]`.
    pub t3_diag: Vec<QScalar>,
    /// Exact `τ` diagonal `q^(-4m)`.
    pub tau_diag: Vec<QScalar>,
}

impl SuqRep {
    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }

    /// `2m` of the basis vector at `idx`.
    pub fn two_m(&self, idx: usize) -> i64 {
        -self.two_j + 2 * idx as i64
    }
}

/// Build the spin-`j` representation (`two_j = 2j`).
pub fn suq2_rep(two_j: i64, q0: f64) -> SuqRep {
    assert!(two_j >= 0, "2j must be a non-negative integer");
    assert!(q0 > 0.0);
    let dim = (two_j + 1) as usize;
    let mut t3 = FMat::zero(dim);
    let mut tplus = FMat::zero(dim);
    let mut tminus = FMat::zero(dim);
    let mut tau = FMat::zero(dim);
    let mut t3_diag = Vec::with_capacity(dim);
    let mut tau_diag = Vec::with_capacity(dim);
    let half = |twice: i64| twice as f64 / 2.0;
    for idx in 0..dim {
        let twom = -two_j + 2 * idx as i64;
        // T³ and τ are diagonal: q^(-2m)[2m] and q^(-4m)
        t3.set(idx, idx, libm::pow(q0, -half(2 * twom)) * qnum_f(half(2 * twom), q0));
        tau.set(idx, idx, libm::pow(q0, -half(4 * twom)));
        t3_diag.push(&QScalar::q_pow(-twom) * &qnum_half(2 * twom));
        tau_diag.push(QScalar::q_pow(-2 * twom));
        // T⁺|j,m> = q^(-m-3/2)√([j+m+1][j-m]) |j,m+1>
        if idx + 1 < dim {
            let f = libm::pow(q0, -half(twom) - 1.5)
                * numf::sqrt(qnum_f(half(two_j + twom) + 1.0, q0) * qnum_f(half(two_j - twom), q0));
            tplus.set(idx + 1, idx, f);
        }
        // T⁻|j,m> = q^(-m+3/2)√([j+m][j-m+1]) |j,m-1>
        if idx > 0 {
            let f = libm::pow(q0, -half(twom) + 1.5)
                * numf::sqrt(qnum_f(half(two_j + twom), q0) * qnum_f(half(two_j - twom) + 1.0, q0));
            tminus.set(idx - 1, idx, f);
        }
    }
    SuqRep { two_j, q0, t3, tplus, tminus, tau, t3_diag, tau_diag }
}

/// Residual report of one representation.
#[derive(Clone, Debug)]
pub struct SuqResiduals {
    /// `q⁻¹T⁺T⁻ - qT⁻T⁺ - T³`
    pub algebra1: f64,
    /// `q²T³T⁺ - q⁻²T⁺T³ - (q+q⁻¹)T⁺`
    pub algebra2: f64,
    /// `q⁻²T³T⁻ - q²T⁻T³ + (q+q⁻¹)T⁻`
    pub algebra3: f64,
    /// `τT⁺ - q⁻⁴T⁺τ`
    pub tau_plus: f64,
    /// `τT⁻ - q⁴T⁻τ`
    pub tau_minus: f64,
    /// Casimir diagonal against `q[j][j+1]`
    pub casimir: f64,
    /// `(T⁺)ᵀ - q⁻²T⁻` and `(T⁻)ᵀ - q²T⁺`
    pub conjugation: f64,
    /// Exact checks on radical-free data all passed
    pub exact_ok: bool,
}

impl SuqResiduals {
    pub fn max(&self) -> f64 {
        [
            self.algebra1,
            self.algebra2,
            self.algebra3,
            self.tau_plus,
            self.tau_minus,
            self.casimir,
            self.conjugation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// All residuals of the defining relations, the `τ` scalings, the Casimir
/// spectrum `q[j][j+1]`, and the conjugation pattern; plus exact checks on
/// the radical-free diagonals.
pub fn suq2_residuals(rep: &SuqRep) -> SuqResiduals {
    let q0 = rep.q0;
    let (q2, qm2) = (q0 * q0, 1.0 / (q0 * q0));
    let qplus = q0 + 1.0 / q0;
    let a1 = rep
        .tplus
        .mul(&rep.tminus)
        .scale(1.0 / q0)
        .sub(&rep.tminus.mul(&rep.tplus).scale(q0))
        .sub(&rep.t3)
        .max_abs();
    let a2 = rep
        .t3
        .mul(&rep.tplus)
        .scale(q2)
        .sub(&rep.tplus.mul(&rep.t3).scale(qm2))
        .sub(&rep.tplus.scale(qplus))
        .max_abs();
    let a3 = rep
        .t3
        .mul(&rep.tminus)
        .scale(qm2)
        .sub(&rep.tminus.mul(&rep.t3).scale(q2))
        .add(&rep.tminus.scale(qplus))
        .max_abs();
    let tau_plus = rep
        .tau
        .mul(&rep.tplus)
        .sub(&rep.tplus.mul(&rep.tau).scale(libm::pow(q0, -4.0)))
        .max_abs();
    let tau_minus = rep
        .tau
        .mul(&rep.tminus)
        .sub(&rep.tminus.mul(&rep.tau).scale(libm::pow(q0, 4.0)))
        .max_abs();
    // Casimir: q²(T⁻T⁺ + λ⁻²)τ^(-1/2) + λ⁻²(τ^(1/2) - 1 - q²), all diagonal
    let casimir = if q0 != 1.0 {
        let dim = rep.dim();
        let lambda = q0 - 1.0 / q0;
        let li2 = 1.0 / (lambda * lambda);
        let mut tau_half = FMat::zero(dim);
        let mut tau_half_inv = FMat::zero(dim);
        for idx in 0..dim {
            let twom = rep.two_m(idx);
            tau_half.set(idx, idx, libm::pow(q0, -twom as f64));
            tau_half_inv.set(idx, idx, libm::pow(q0, twom as f64));
        }
        let li2_mat = FMat::identity(dim).scale(li2);
        let casimir_mat = rep
            .tminus
            .mul(&rep.tplus)
            .add(&li2_mat)
            .scale(q2)
            .mul(&tau_half_inv)
            .add(&tau_half.sub(&FMat::identity(dim).scale(1.0 + q2)).scale(li2));
        let j = rep.two_j as f64 / 2.0;
        let want = q0 * qnum_f(j, q0) * qnum_f(j + 1.0, q0);
        casimir_mat.sub(&FMat::identity(dim).scale(want)).max_abs()
    } else {
        0.0
    };
    let conj = rep
        .tplus
        .transpose()
        .sub(&rep.tminus.scale(qm2))
        .max_abs()
        .max(rep.tminus.transpose().sub(&rep.tplus.scale(q2)).max_abs());

    // exact radical-free checks: algebra relation 1 and the Casimir on each
    // diagonal entry
    let mut exact_ok = true;
    let q = QScalar::q_pow(1);
    let lambda = QScalar::lambda();
    let lam_inv_sq = (&lambda * &lambda).inv().expect("λ ≠ 0");
    let two_j = rep.two_j;
    let casimir_want = &(&q * &qnum_half(two_j)) * &qnum_half(two_j + 2);
    for idx in 0..rep.dim() {
        let twom = rep.two_m(idx);
        // (T⁺T⁻)|m> = q^(-2m+1)[j+m][j-m+1], (T⁻T⁺)|m> = q^(-2m-1)[j+m+1][j-m]
        let tp_tm = &(&QScalar::q_pow(-twom + 1)
            * &qnum_half(two_j + twom))
            * &qnum_half(two_j - twom + 2);
        let tm_tp = &(&QScalar::q_pow(-twom - 1)
            * &qnum_half(two_j + twom + 2))
            * &qnum_half(two_j - twom);
        let rel1 = &(&(&tp_tm / &q) - &(&tm_tp * &q)) - &rep.t3_diag[idx];
        if !rel1.is_zero() {
            exact_ok = false;
        }
        // Casimir diagonal: q²(T⁻T⁺ + λ⁻²)q^(2m) + λ⁻²(q^(-2m) - 1 - q²)
        let c = &(&(&(&tm_tp + &lam_inv_sq) * &QScalar::q_pow(2)) * &QScalar::q_pow(twom))
            + &(&lam_inv_sq
                * &(&(&QScalar::q_pow(-twom) - &QScalar::one()) - &QScalar::q_pow(2)));
        if c != casimir_want {
            exact_ok = false;
        }
        // τ = 1 - λT³ on the diagonal
        let tau_check = &QScalar::one() - &(&lambda * &rep.t3_diag[idx]);
        if tau_check != rep.tau_diag[idx] {
            exact_ok = false;
        }
    }
    SuqResiduals {
        algebra1: a1,
        algebra2: a2,
        algebra3: a3,
        tau_plus,
        tau_minus,
        casimir,
        conjugation: conj,
        exact_ok,
    }
}

/// Max residual of the three defining relations for the coproduct
/// `Δ(T³) = T³⊗1 + τ⊗T³`, `Δ(T±) = T±⊗1 + τ^(1/2)⊗T±` on the tensor
/// product of the spin-`j1` and spin-`j2` representations.
pub fn coproduct_residual(two_j1: i64, two_j2: i64, q0: f64) -> f64 {
    let r1 = suq2_rep(two_j1, q0);
    let r2 = suq2_rep(two_j2, q0);
    let id2 = FMat::identity(r2.dim());
    let mut tau_half = FMat::zero(r1.dim());
    for idx in 0..r1.dim() {
        tau_half.set(idx, idx, libm::pow(q0, -r1.two_m(idx) as f64));
    }
    let d3 = r1.t3.kron(&id2).add(&r1.tau.kron(&r2.t3));
    let dp = r1.tplus.kron(&id2).add(&tau_half.kron(&r2.tplus));
    let dm = r1.tminus.kron(&id2).add(&tau_half.kron(&r2.tminus));
    let (q2, qm2) = (q0 * q0, 1.0 / (q0 * q0));
    let qplus = q0 + 1.0 / q0;
    let a1 = dp
        .mul(&dm)
        .scale(1.0 / q0)
        .sub(&dm.mul(&dp).scale(q0))
        .sub(&d3)
        .max_abs();
    let a2 = d3
        .mul(&dp)
        .scale(q2)
        .sub(&dp.mul(&d3).scale(qm2))
        .sub(&dp.scale(qplus))
        .max_abs();
    let a3 = d3
        .mul(&dm)
        .scale(qm2)
        .sub(&dm.mul(&d3).scale(q2))
        .add(&dm.scale(qplus))
        .max_abs();
    a1.max(a2).max(a3)
}

// ---------------------------------------------------------------------------
// Quantum-plane covariance
// ---------------------------------------------------------------------------

/// One certificate line of [`suq2_plane_covariance`].
#[derive(Clone)]
pub struct CovarianceItem {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Report of the plane-covariance certificates.
pub struct CovarianceReport {
    pub items: Vec<CovarianceItem>,
}

impl CovarianceReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

fn module_rules_system(conjugate: bool) -> RewriteSystem {
    // generators: plane coordinates first, then T³, T⁺, T⁻
    let names = if conjugate {
        ["xb1", "xb2", "T3", "Tp", "Tm"]
    } else {
        ["x1", "x2", "T3", "Tp", "Tm"]
    };
    let ab = Alphabet::new(names);
    let (v1, v2, t3, tp, tm) = (0u8, 1u8, 2u8, 3u8, 4u8);
    let q = QScalar::q_pow(1);
    let qi = QScalar::q_pow(-1);
    let w = |a: u8, b: u8| NCPoly::from_word(vec![a, b]);
    let g = NCPoly::gen;
    let rules = if !conjugate {
        vec![
            // T³x¹ = q²x¹T³ - qx¹,  T³x² = q⁻²x²T³ + q⁻¹x²
            ((t3, v1), w(v1, t3).scale(&(&q * &q)).sub(&g(v1).scale(&q))),
            ((t3, v2), w(v2, t3).scale(&(&qi * &qi)).add(&g(v2).scale(&qi))),
            // T⁺x¹ = qx¹T⁺ + q⁻¹x²,  T⁺x² = q⁻¹x²T⁺
            ((tp, v1), w(v1, tp).scale(&q).add(&g(v2).scale(&qi))),
            ((tp, v2), w(v2, tp).scale(&qi)),
            // T⁻x¹ = qx¹T⁻,  T⁻x² = q⁻¹x²T⁻ + qx¹
            ((tm, v1), w(v1, tm).scale(&q)),
            ((tm, v2), w(v2, tm).scale(&qi).add(&g(v1).scale(&q))),
        ]
    } else {
        vec![
            // T³x̄₁ = q⁻²x̄₁T³ + q⁻¹x̄₁,  T³x̄₂ = q²x̄₂T³ - qx̄₂
            ((t3, v1), w(v1, t3).scale(&(&qi * &qi)).add(&g(v1).scale(&qi))),
            ((t3, v2), w(v2, t3).scale(&(&q * &q)).sub(&g(v2).scale(&q))),
            // T⁺x̄₁ = q⁻¹x̄₁T⁺,  T⁺x̄₂ = qx̄₂T⁺ - x̄₁
            ((tp, v1), w(v1, tp).scale(&qi)),
            ((tp, v2), w(v2, tp).scale(&q).sub(&g(v1))),
            // T⁻x̄₁ = q⁻¹x̄₁T⁻ - x̄₂,  T⁻x̄₂ = qx̄₂T⁻
            ((tm, v1), w(v1, tm).scale(&qi).sub(&g(v2))),
            ((tm, v2), w(v2, tm).scale(&q)),
        ]
    };
    RewriteSystem::new(ab, rules).expect("module rules respect the order")
}

/// Certify that the plane relation commutes through the `sl_q(2)` action:
/// `x¹x² - qx²x¹` is central under the module rules, and the conjugate
/// relation `x̄₂x̄₁ - qx̄₁x̄₂` under the conjugate module rules.
pub fn suq2_plane_covariance() -> CovarianceReport {
    let mut items = Vec::new();
    for conjugate in [false, true] {
        let sys = module_rules_system(conjugate);
        let a = sys.alphabet();
        let z = if !conjugate {
            // x¹x² - q x²x¹
            NCPoly::from_word(vec![0, 1]).sub(&NCPoly::from_word(vec![1, 0]).scale(&QScalar::q_pow(1)))
        } else {
            // conjugate image: x̄₂x̄₁ - q x̄₁x̄₂
            NCPoly::from_word(vec![1, 0]).sub(&NCPoly::from_word(vec![0, 1]).scale(&QScalar::q_pow(1)))
        };
        for gname in ["T3", "Tp", "Tm"] {
            let g = a.index_of(gname).unwrap();
            let res = sys
                .commutant_residual(&z, &[g], DEFAULT_FUEL)
                .expect("terminates");
            let passed = res[0].is_zero();
            items.push(CovarianceItem {
                name: alloc::format!(
                    "{} through {}",
                    if conjugate { "conjugate plane relation" } else { "x1 x2 - q x2 x1" },
                    gname
                ),
                passed,
                witness: if passed { None } else { Some(a.render(&res[0])) },
            });
        }
    }
    CovarianceReport { items }
}

impl fmt::Display for CovarianceItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, if self.passed { "ok" } else { "FAILED" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_matrices_match_explicit_values() {
        let q0 = 1.3;
        let rep = suq2_rep(1, q0);
        // T⁺|1/2,-1/2> = q⁻¹|1/2,1/2>, T⁻|1/2,1/2> = q|1/2,-1/2>
        assert!((rep.tplus.at(1, 0) - 1.0 / q0).abs() < 1e-14);
        assert!((rep.tminus.at(0, 1) - q0).abs() < 1e-14);
        // T³ diag: -q, q⁻¹
        assert!((rep.t3.at(0, 0) + q0).abs() < 1e-14);
        assert!((rep.t3.at(1, 1) - 1.0 / q0).abs() < 1e-14);
        // exact diagonals agree
        assert_eq!(rep.t3_diag[0], -&QScalar::q_pow(1));
        assert_eq!(rep.t3_diag[1], QScalar::q_pow(-1));
        assert_eq!(rep.tau_diag[0], QScalar::q_pow(2));
    }

    #[test]
    fn spin_one_matrices_match_explicit_values() {
        let q0 = 1.2;
        let rep = suq2_rep(2, q0);
        let s = numf::sqrt(1.0 + q0 * q0);
        // T⁺|1,-1> = q⁻¹√(1+q²)|1,0>, T⁺|1,0> = q⁻²√(1+q²)|1,1>
        assert!((rep.tplus.at(1, 0) - s / q0).abs() < 1e-13);
        assert!((rep.tplus.at(2, 1) - s / (q0 * q0)).abs() < 1e-13);
        // T⁻|1,0> = q√(1+q²)|1,-1>, T⁻|1,1> = √(1+q²)|1,0>
        assert!((rep.tminus.at(0, 1) - q0 * s).abs() < 1e-13);
        assert!((rep.tminus.at(1, 2) - s).abs() < 1e-13);
        // T³|1,-1> = -q(1+q²)|1,-1>, T³|1,1> = q⁻¹(1+q⁻²)|1,1>
        assert!((rep.t3.at(0, 0) + q0 * (1.0 + q0 * q0)).abs() < 1e-13);
        assert!((rep.t3.at(2, 2) - (1.0 + 1.0 / (q0 * q0)) / q0).abs() < 1e-13);
        assert!(rep.t3.at(1, 1).abs() < 1e-14);
    }

    #[test]
    fn spin_zero_is_trivial() {
        let rep = suq2_rep(0, 1.5);
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.tplus.at(0, 0), 0.0);
        assert_eq!(rep.tminus.at(0, 0), 0.0);
        assert_eq!(rep.t3.at(0, 0), 0.0);
        assert_eq!(rep.tau.at(0, 0), 1.0);
    }

    #[test]
    fn residuals_small_across_spins_and_q() {
        for two_j in [1i64, 2, 3, 4, 8] {
            for q0 in [1.1, 1.5] {
                let r = suq2_residuals(&suq2_rep(two_j, q0));
                assert!(r.max() < 1e-10, "2j={two_j} q0={q0}: {:?}", r);
                assert!(r.exact_ok, "exact checks failed at 2j={two_j}");
            }
        }
    }

    #[test]
    fn casimir_diagonal_value() {
        // j = 2: Casimir = q[2][3] within 1e-10 at q0 = 1.5
        let q0 = 1.5;
        let r = suq2_rep(4, q0);
        let res = suq2_residuals(&r);
        assert!(res.casimir < 1e-10);
        let want = q0 * qnum_f(2.0, q0) * qnum_f(3.0, q0);
        // reconstruct from the exact expression too
        let exact = (&(&QScalar::q_pow(1) * &qnum_half(4)) * &qnum_half(6))
            .eval_at(q0)
            .unwrap();
        assert!((want - exact).abs() < 1e-10 * want.abs());
    }

    #[test]
    fn classical_limit_commutator() {
        // at q0 = 1 the first relation degenerates to [j⁺, j⁻] = 2j₃
        let rep = suq2_rep(3, 1.0);
        let comm = rep
            .tplus
            .mul(&rep.tminus)
            .sub(&rep.tminus.mul(&rep.tplus))
            .sub(&rep.t3)
            .max_abs();
        assert!(comm < 1e-12, "{comm:e}");
    }

    #[test]
    fn tau_scaling_conjugated() {
        // τT⁺τ⁻¹ = q⁻⁴T⁺
        for (two_j, q0) in [(2i64, 1.1), (5, 1.5)] {
            let rep = suq2_rep(two_j, q0);
            let dim = rep.dim();
            let mut tau_inv = FMat::zero(dim);
            for idx in 0..dim {
                tau_inv.set(idx, idx, 1.0 / rep.tau.at(idx, idx));
            }
            let lhs = rep.tau.mul(&rep.tplus).mul(&tau_inv);
            let rhs = rep.tplus.scale(libm::pow(q0, -4.0));
            assert!(lhs.sub(&rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn coproduct_closes_the_algebra() {
        assert!(coproduct_residual(1, 1, 1.1) < 1e-12);
        assert!(coproduct_residual(1, 2, 1.5) < 1e-12);
        // trivial left factor reduces to the single-representation residual
        let single = suq2_residuals(&suq2_rep(3, 1.2)).max();
        let tensored = coproduct_residual(0, 3, 1.2);
        assert!((tensored - single).abs() < 1e-12 || tensored < 1e-10);
    }

    #[test]
    fn plane_covariance_certificates() {
        let report = suq2_plane_covariance();
        for item in &report.items {
            assert!(item.passed, "{}: {:?}", item.name, item.witness);
        }
        assert_eq!(report.items.len(), 6);
    }
}
