//! Exact R-matrix toolkit.
//!
//! Construction of the GL_q(n) R̂-matrix, Yang–Baxter verification on the
//! triple tensor space, projector decomposition, RTT relation generation,
//! quantum-plane relation generation for the coordinate/derivative/conjugate/
//! differential planes, and the one-dimensional deformed Heisenberg
//! derivation from the `x∂` realization.
//!
//! Index convention, fixed throughout: `entry[(i,j),(k,l)] = R̂^{ij}_{kl}`
//! with row pairs `(i,j)` and column pairs `(k,l)` in lexicographic order.
//! Indices are 0-based in code and 1-based in rendered text.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ncalg::{system_from_pairs, Alphabet, NCPoly, NcError, RewriteSystem, DEFAULT_FUEL};
use crate::qarith::parse::{tokenize, ParseError, Parser};
use crate::qarith::QScalar;

/// Errors from R-matrix operations.
#[derive(Debug, Clone)]
pub enum RMatrixError {
    /// The characteristic equation `(R̂-q)(R̂+1/q) = 0` fails.
    CharacteristicEquation,
    /// The matrix is singular where an inverse is required.
    Singular,
    /// Plane-relation generation produced something non-orientable.
    Plane(NcError),
    /// Fixture text could not be parsed.
    Fixture(String),
}

impl fmt::Display for RMatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RMatrixError::CharacteristicEquation => {
                write!(f, "matrix does not satisfy (R-q)(R+1/q) = 0")
            }
            RMatrixError::Singular => write!(f, "matrix is singular"),
            RMatrixError::Plane(e) => write!(f, "plane relations: {e}"),
            RMatrixError::Fixture(s) => write!(f, "fixture: {s}"),
        }
    }
}

impl From<NcError> for RMatrixError {
    fn from(e: NcError) -> Self {
        RMatrixError::Plane(e)
    }
}

// ---------------------------------------------------------------------------
// Exact square matrices
// ---------------------------------------------------------------------------

/// Dense square matrix over [`QScalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    dim: usize,
    entries: Vec<QScalar>,
}

impl QMat {
    pub fn zero(dim: usize) -> Self {
        QMat { dim, entries: vec![QScalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            *m.at_mut(i, i) = QScalar::one();
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> QScalar) -> Self {
        let mut m = Self::zero(dim);
        for r in 0..dim {
            for c in 0..dim {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, r: usize, c: usize) -> &QScalar {
        &self.entries[r * self.dim + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut QScalar {
        &mut self.entries[r * self.dim + c]
    }

    pub fn add(&self, o: &QMat) -> QMat {
        assert_eq!(self.dim, o.dim);
        QMat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        assert_eq!(self.dim, o.dim);
        QMat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> QMat {
        QMat {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.dim, o.dim);
        let mut out = QMat::zero(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.dim {
                    let b = o.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    *out.at_mut(r, c) = &cur + &(a * b);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> QScalar {
        let mut t = QScalar::zero();
        for i in 0..self.dim {
            t = &t + self.at(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Exact inverse by Gaussian elimination.
    pub fn inverse(&self) -> Option<QMat> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|r| !a.at(*r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let tmp = a.at(pivot, c).clone();
                    *a.at_mut(pivot, c) = a.at(col, c).clone();
                    *a.at_mut(col, c) = tmp;
                    let tmp = inv.at(pivot, c).clone();
                    *inv.at_mut(pivot, c) = inv.at(col, c).clone();
                    *inv.at_mut(col, c) = tmp;
                }
            }
            let p = a.at(col, col).clone();
            let pi = p.inv().ok()?;
            for c in 0..n {
                *a.at_mut(col, c) = a.at(col, c) * &pi;
                *inv.at_mut(col, c) = inv.at(col, c) * &pi;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let v = a.at(r, c) - &(&f * a.at(col, c));
                    *a.at_mut(r, c) = v;
                    let v = inv.at(r, c) - &(&f * inv.at(col, c));
                    *inv.at_mut(r, c) = v;
                }
            }
        }
        Some(inv)
    }
}

// ---------------------------------------------------------------------------
// RMatrix
// ---------------------------------------------------------------------------

/// Exact `n²×n²` matrix with the paired-index convention
/// `entry[(i,j),(k,l)] = R̂^{ij}_{kl}`.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    mat: QMat,
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RMatrix(n={})\n{}", self.n, pretty_table(self))
    }
}

impl RMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> QScalar) -> Self {
        let mat = QMat::from_fn(n * n, |row, col| f(row / n, row % n, col / n, col % n));
        RMatrix { n, mat }
    }

    pub fn identity(n: usize) -> Self {
        RMatrix { n, mat: QMat::identity(n * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn matrix(&self) -> &QMat {
        &self.mat
    }

    /// `R̂^{ij}_{kl}`, 0-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &QScalar {
        self.mat.at(i * self.n + j, k * self.n + l)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: QScalar) {
        *self.mat.at_mut(i * self.n + j, k * self.n + l) = v;
    }

    pub fn add(&self, o: &RMatrix) -> RMatrix {
        RMatrix { n: self.n, mat: self.mat.add(&o.mat) }
    }

    pub fn sub(&self, o: &RMatrix) -> RMatrix {
        RMatrix { n: self.n, mat: self.mat.sub(&o.mat) }
    }

    pub fn scale(&self, c: &QScalar) -> RMatrix {
        RMatrix { n: self.n, mat: self.mat.scale(c) }
    }

    pub fn mul(&self, o: &RMatrix) -> RMatrix {
        RMatrix { n: self.n, mat: self.mat.mul(&o.mat) }
    }

    pub fn inverse(&self) -> Result<RMatrix, RMatrixError> {
        Ok(RMatrix {
            n: self.n,
            mat: self.mat.inverse().ok_or(RMatrixError::Singular)?,
        })
    }

    /// Transpose in the paired indices: `R̂^{ij}_{kl} -> R̂^{kl}_{ij}`.
    pub fn pair_transpose(&self) -> RMatrix {
        let n = self.n;
        RMatrix::from_fn(n, |i, j, k, l| self.get(k, l, i, j).clone())
    }

    /// Lift to the triple tensor space: `R̂_12 = R̂ ⊗ 1`.
    pub fn lift12(&self) -> QMat {
        let n = self.n;
        let d = n * n * n;
        QMat::from_fn(d, |row, col| {
            let (i1, i2, i3) = (row / (n * n), (row / n) % n, row % n);
            let (j1, j2, j3) = (col / (n * n), (col / n) % n, col % n);
            if i3 == j3 {
                self.get(i1, i2, j1, j2).clone()
            } else {
                QScalar::zero()
            }
        })
    }

    /// Lift to the triple tensor space: `R̂_23 = 1 ⊗ R̂`.
    pub fn lift23(&self) -> QMat {
        let n = self.n;
        let d = n * n * n;
        QMat::from_fn(d, |row, col| {
            let (i1, i2, i3) = (row / (n * n), (row / n) % n, row % n);
            let (j1, j2, j3) = (col / (n * n), (col / n) % n, col % n);
            if i1 == j1 {
                self.get(i2, i3, j2, j3).clone()
            } else {
                QScalar::zero()
            }
        })
    }
}

/// The GL_q(n) R̂-matrix: for `n = 2` the explicit 4×4 matrix with rows and
/// columns labelled 11, 12, 21, 22 and entries `(q; λ,1; 1,0; q)`.
pub fn r_gl(n: usize) -> RMatrix {
    assert!(n >= 2, "need n >= 2");
    let q = QScalar::q_pow(1);
    let qm1 = &q - &QScalar::one();
    let lambda = QScalar::lambda();
    RMatrix::from_fn(n, |i, j, k, l| {
        // R̂^{ij}_{kl} = δ^j_k δ^i_l (1 + (q-1)δ^{ij}) + λ θ(j-i) δ^i_k δ^j_l
        let mut v = QScalar::zero();
        if j == k && i == l {
            v = if i == j {
                &QScalar::one() + &qm1
            } else {
                QScalar::one()
            };
        }
        if j > i && i == k && j == l {
            v = &v + &lambda;
        }
        v
    })
}

/// The flip matrix `R̂^{ij}_{kl} = δ^i_l δ^j_k`: its RTT relations make all
/// entries of `T` commute.
pub fn r_flip(n: usize) -> RMatrix {
    RMatrix::from_fn(n, |i, j, k, l| {
        if i == l && j == k {
            QScalar::one()
        } else {
            QScalar::zero()
        }
    })
}

/// The number of nonzero entries of
/// `R̂_12 R̂_23 R̂_12 - R̂_23 R̂_12 R̂_23` on the triple tensor space;
/// zero certifies the Yang–Baxter equation.
pub fn ybe_residual(r: &RMatrix) -> usize {
    let r12 = r.lift12();
    let r23 = r.lift23();
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    lhs.sub(&rhs).nonzero_count()
}

// ---------------------------------------------------------------------------
// Projectors
// ---------------------------------------------------------------------------

/// An exact spectral projector of an R̂-matrix.
#[derive(Clone)]
pub struct Projector {
    pub matrix: RMatrix,
    pub eigenvalue: QScalar,
    /// Rank, read off the exact trace.
    pub multiplicity: QScalar,
}

/// The antisymmetrizer/symmetrizer pair of a GL-type R̂:
/// `A = -q/(1+q²)(R̂ - q)`, `S = q/(1+q²)(R̂ + 1/q)`.
///
/// Verifies the characteristic equation `(R̂-q)(R̂+1/q) = 0` first and the
/// projector identities `A² = A`, `S² = S`, `AS = SA = 0`, `A + S = 1`,
/// `R̂ = qS - q⁻¹A` before returning.
pub fn projectors_gl(r: &RMatrix) -> Result<(Projector, Projector), RMatrixError> {
    let q = QScalar::q_pow(1);
    let qi = QScalar::q_pow(-1);
    let id = RMatrix::identity(r.n());
    let char_eq = r.sub(&id.scale(&q)).mul(&r.add(&id.scale(&qi)));
    if !char_eq.matrix().is_zero() {
        return Err(RMatrixError::CharacteristicEquation);
    }
    let norm = &q / &(&QScalar::one() + &(&q * &q));
    let a = r.sub(&id.scale(&q)).scale(&-&norm);
    let s = r.add(&id.scale(&qi)).scale(&norm);
    let ok = a.mul(&a) == a
        && s.mul(&s) == s
        && a.mul(&s).matrix().is_zero()
        && s.mul(&a).matrix().is_zero()
        && a.add(&s) == id
        && s.scale(&q).sub(&a.scale(&qi)) == *r;
    if !ok {
        return Err(RMatrixError::CharacteristicEquation);
    }
    Ok((
        Projector {
            multiplicity: a.matrix().trace(),
            matrix: a,
            eigenvalue: -&qi,
        },
        Projector {
            multiplicity: s.matrix().trace(),
            matrix: s,
            eigenvalue: q,
        },
    ))
}

// ---------------------------------------------------------------------------
// RTT relations
// ---------------------------------------------------------------------------

/// Generator alphabet for the `T` matrix entries, row-major (`a b c d` for
/// `n = 2`).
pub fn t_alphabet(n: usize) -> Alphabet {
    if n == 2 {
        return Alphabet::new(["a", "b", "c", "d"]);
    }
    let names: Vec<String> = (0..n * n)
        .map(|g| alloc::format!("T{}{}", g / n + 1, g % n + 1))
        .collect();
    Alphabet::new(names)
}

/// The `n⁴` RTT relations
/// `R̂^{ij}_{kl} T^k_r T^l_s - T^i_k T^j_l R̂^{kl}_{rs}` over the generators
/// of [`t_alphabet`]; for the GL_q(2) matrix the nonzero ones span exactly
/// the six defining relations of the quantum group.
pub fn rtt_relations(r: &RMatrix) -> Vec<NCPoly> {
    let n = r.n();
    let t = |i: usize, j: usize| (i * n + j) as u8;
    let mut out = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for rr in 0..n {
                for s in 0..n {
                    let mut p = NCPoly::zero();
                    for k in 0..n {
                        for l in 0..n {
                            let c1 = r.get(i, j, k, l);
                            if !c1.is_zero() {
                                p.insert_add(vec![t(k, rr), t(l, s)], c1.clone());
                            }
                            let c2 = r.get(k, l, rr, s);
                            if !c2.is_zero() {
                                p.insert_add(vec![t(i, k), t(j, l)], -c2);
                            }
                        }
                    }
                    out.push(p);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Quantum-plane relation generation
// ---------------------------------------------------------------------------

/// Which plane relation set to generate from an R̂-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// Coordinate plane `x^i x^j = (1/q) R̂^{ij}_{kl} x^k x^l`.
    XX,
    /// Derivatives via `C = qR̂`: `∂_i x^j = δ^j_i + q R̂^{jk}_{il} x^l ∂_k`.
    XDel,
    /// Hatted derivatives via `C⁻¹ = q⁻¹R̂⁻¹`.
    XDelHat,
    /// Derivative-derivative plane `∂_a ∂_b = (1/q) ∂_c ∂_d R̂^{dc}_{ba}`.
    DelDel,
    /// Hatted analogue of [`PlaneKind::DelDel`].
    DelHatDelHat,
    /// Mixed `∂̂∂` relations `∂̂_a ∂_b = q R̂^{cd}_{ba} ∂_d ∂̂_c`.
    DelHatDel,
    /// Conjugate plane via `Γ = qR̂⁻¹`: `x^i x̄_j = q R̂^{-1,li}_{kj} x̄_l x^k`.
    XXbar,
    /// Conjugate-conjugate plane `x̄_j x̄_i = (1/q) R̂^{kl}_{ij} x̄_l x̄_k`.
    XbarXbar,
    /// Differentials: `dx^i x^j = q R̂^{ij}_{kl} x^k dx^l`.
    XDx,
    /// Derivative–differential relations `∂_j dx^i = q⁻¹ R̂^{-1,ik}_{jl} dx^l ∂_k`.
    DelDx,
    /// A second coordinate plane `y` with `x^i y^j = (κ/q) R̂^{ij}_{kl} y^k x^l`.
    XYKappa(QScalar),
    /// Internal `y`-plane relations (same shape as [`PlaneKind::XX`]).
    YY,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| alloc::format!("{prefix}{i}")).collect()
}

/// Local alphabet of a plane kind (normal-form order: coordinates first,
/// then differentials/conjugates/derivatives; `y` before `x`).
pub fn plane_alphabet(kind: &PlaneKind, n: usize) -> Alphabet {
    let mut v: Vec<String> = Vec::new();
    match kind {
        PlaneKind::XX => v.extend(names("x", n)),
        PlaneKind::XDel => {
            v.extend(names("x", n));
            v.extend(names("d", n));
        }
        PlaneKind::XDelHat => {
            v.extend(names("x", n));
            v.extend(names("dh", n));
        }
        PlaneKind::DelDel => v.extend(names("d", n)),
        PlaneKind::DelHatDelHat => v.extend(names("dh", n)),
        PlaneKind::DelHatDel => {
            v.extend(names("d", n));
            v.extend(names("dh", n));
        }
        PlaneKind::XXbar => {
            v.extend(names("x", n));
            v.extend(names("xb", n));
        }
        PlaneKind::XbarXbar => v.extend(names("xb", n)),
        PlaneKind::XDx => {
            v.extend(names("x", n));
            v.extend(names("dx", n));
        }
        PlaneKind::DelDx => {
            v.extend(names("dx", n));
            v.extend(names("d", n));
        }
        PlaneKind::XYKappa(_) => {
            v.extend(names("y", n));
            v.extend(names("x", n));
        }
        PlaneKind::YY => v.extend(names("y", n)),
    }
    Alphabet::new(v)
}

/// Generate the relation polynomials of a plane kind over its local
/// alphabet. Relations are equalities brought to the form `lhs - rhs`.
pub fn plane_relations(r: &RMatrix, kind: &PlaneKind) -> Result<Vec<NCPoly>, RMatrixError> {
    let n = r.n();
    let q = QScalar::q_pow(1);
    let qinv = QScalar::q_pow(-1);
    let mut rels = Vec::new();
    match kind {
        PlaneKind::XX | PlaneKind::YY | PlaneKind::XbarXbar => {
            // x^i x^j - (1/q) R̂^{ij}_{kl} x^k x^l  (conjugate plane: the
            // same shape after relabeling x̄_j x̄_i = (1/q) R̂^{kl}_{ij} x̄_l x̄_k)
            let conj = matches!(kind, PlaneKind::XbarXbar);
            for i in 0..n {
                for j in 0..n {
                    let mut p = NCPoly::zero();
                    if conj {
                        // indices of x̄: relation for (j, i)
                        p.insert_add(vec![j as u8, i as u8], QScalar::one());
                        for k in 0..n {
                            for l in 0..n {
                                let c = r.get(k, l, i, j);
                                if !c.is_zero() {
                                    p.insert_add(vec![l as u8, k as u8], -&(c * &qinv));
                                }
                            }
                        }
                    } else {
                        p.insert_add(vec![i as u8, j as u8], QScalar::one());
                        for k in 0..n {
                            for l in 0..n {
                                let c = r.get(i, j, k, l);
                                if !c.is_zero() {
                                    p.insert_add(vec![k as u8, l as u8], -&(c * &qinv));
                                }
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::XDel | PlaneKind::XDelHat => {
            // ∂_i x^j = δ^j_i + q R̂^{jk}_{il} x^l ∂_k  (hatted: q⁻¹, R̂⁻¹)
            let (c_mat, c_scale) = match kind {
                PlaneKind::XDel => (r.clone(), q.clone()),
                _ => (r.inverse()?, qinv.clone()),
            };
            let x = |l: usize| l as u8;
            let d = |k: usize| (n + k) as u8;
            for i in 0..n {
                for j in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![d(i), x(j)], QScalar::one());
                    if i == j {
                        p.insert_add(vec![], -&QScalar::one());
                    }
                    for k in 0..n {
                        for l in 0..n {
                            let c = c_mat.get(j, k, i, l);
                            if !c.is_zero() {
                                p.insert_add(vec![x(l), d(k)], -&(c * &c_scale));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::DelDel | PlaneKind::DelHatDelHat => {
            // ∂_a ∂_b = (1/q) ∂_c ∂_d R̂^{dc}_{ba}
            for a in 0..n {
                for b in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![a as u8, b as u8], QScalar::one());
                    for c in 0..n {
                        for dd in 0..n {
                            let v = r.get(dd, c, b, a);
                            if !v.is_zero() {
                                p.insert_add(vec![c as u8, dd as u8], -&(v * &qinv));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::DelHatDel => {
            // ∂̂_a ∂_b = q R̂^{cd}_{ba} ∂_d ∂̂_c over d1..dn < dh1..dhn
            let d = |k: usize| k as u8;
            let dh = |k: usize| (n + k) as u8;
            for a in 0..n {
                for b in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![dh(a), d(b)], QScalar::one());
                    for c in 0..n {
                        for e in 0..n {
                            let v = r.get(c, e, b, a);
                            if !v.is_zero() {
                                p.insert_add(vec![d(e), dh(c)], -&(v * &q));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::XXbar => {
            // x^i x̄_j = q R̂^{-1,li}_{kj} x̄_l x^k over x1..xn < xb1..xbn
            let rinv = r.inverse()?;
            let x = |k: usize| k as u8;
            let xb = |l: usize| (n + l) as u8;
            for i in 0..n {
                for j in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![x(i), xb(j)], QScalar::one());
                    for k in 0..n {
                        for l in 0..n {
                            let c = rinv.get(l, i, k, j);
                            if !c.is_zero() {
                                p.insert_add(vec![xb(l), x(k)], -&(c * &q));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::XDx => {
            // dx^i x^j = q R̂^{ij}_{kl} x^k dx^l
            let x = |k: usize| k as u8;
            let dx = |l: usize| (n + l) as u8;
            for i in 0..n {
                for j in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![dx(i), x(j)], QScalar::one());
                    for k in 0..n {
                        for l in 0..n {
                            let c = r.get(i, j, k, l);
                            if !c.is_zero() {
                                p.insert_add(vec![x(k), dx(l)], -&(c * &q));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::DelDx => {
            // ∂_j dx^i = q⁻¹ R̂^{-1,ik}_{jl} dx^l ∂_k over dx1..dxn < d1..dn
            let rinv = r.inverse()?;
            let dx = |l: usize| l as u8;
            let d = |k: usize| (n + k) as u8;
            for j in 0..n {
                for i in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![d(j), dx(i)], QScalar::one());
                    for k in 0..n {
                        for l in 0..n {
                            let c = rinv.get(i, k, j, l);
                            if !c.is_zero() {
                                p.insert_add(vec![dx(l), d(k)], -&(c * &qinv));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
        PlaneKind::XYKappa(kappa) => {
            // x^i y^j = (κ/q) R̂^{ij}_{kl} y^k x^l over y1..yn < x1..xn
            let y = |k: usize| k as u8;
            let x = |i: usize| (n + i) as u8;
            let factor = kappa * &qinv;
            for i in 0..n {
                for j in 0..n {
                    let mut p = NCPoly::zero();
                    p.insert_add(vec![x(i), y(j)], QScalar::one());
                    for k in 0..n {
                        for l in 0..n {
                            let c = r.get(i, j, k, l);
                            if !c.is_zero() {
                                p.insert_add(vec![y(k), x(l)], -&(c * &factor));
                            }
                        }
                    }
                    rels.push(p);
                }
            }
        }
    }
    Ok(rels)
}

/// Compile one plane kind into a rewrite system over its local alphabet.
pub fn plane_system(r: &RMatrix, kind: &PlaneKind) -> Result<RewriteSystem, RMatrixError> {
    let alphabet = plane_alphabet(kind, r.n());
    Ok(system_from_pairs(alphabet, &plane_relations(r, kind)?)?)
}

/// Compile several plane kinds into one system over a shared alphabet
/// (the union of the local alphabets, coordinates first).
pub fn combined_plane_system(
    r: &RMatrix,
    kinds: &[PlaneKind],
) -> Result<RewriteSystem, RMatrixError> {
    let n = r.n();
    // collect names in first-seen order of the local alphabets
    let mut seen: Vec<String> = Vec::new();
    for kind in kinds {
        let local = plane_alphabet(kind, n);
        for g in local.generators() {
            let name = local.name(g).to_string();
            if !seen.contains(&name) {
                seen.push(name);
            }
        }
    }
    let master = Alphabet::new(seen);
    let mut rels = Vec::new();
    for kind in kinds {
        let local = plane_alphabet(kind, n);
        let map = local
            .embedding(&master)
            .expect("master contains local names");
        for p in plane_relations(r, kind)? {
            rels.push(p.remap(&map));
        }
    }
    Ok(system_from_pairs(master, &rels)?)
}

// ---------------------------------------------------------------------------
// One-dimensional deformed Heisenberg derivation
// ---------------------------------------------------------------------------

/// One named identity inside [`heisenberg_1d_check`].
#[derive(Clone)]
pub struct HeisenbergItem {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Report of the one-dimensional deformed Heisenberg derivation.
pub struct HeisenbergReport {
    pub items: Vec<HeisenbergItem>,
}

impl HeisenbergReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Verify the derivation of the one-dimensional q-deformed Heisenberg
/// algebra from the `x∂` realization `∂x = 1 + qx∂`.
///
/// The scaling element is adjoined abstractly through its inverse `Λ⁻¹`
/// with `Λ⁻¹x = q⁻¹xΛ⁻¹` and `Λ⁻¹∂ = q∂Λ⁻¹`; identities with a bare
/// inhomogeneous part hold only modulo the polynomial realization
/// `Λ = q^(1/2)(1 + (q-1)x∂)`, so each candidate `Σ_k Λ⁻ᵏ P_k` is certified
/// zero by checking `Σ_k Λ^(K-k) P_k = 0` in the plain `x∂` algebra.
///
/// Checked items:
/// (a) the scaling rules are consistent (overlap check passes) and the
///     polynomial `Λ` satisfies `Λx = qxΛ`, `Λ∂ = q⁻¹∂Λ` identically;
/// (b) `∂̃ = -q^(-1/2)Λ⁻¹∂` satisfies `∂̃x = -1/q + (1/q)x∂̃` and
///     `∂̃∂ = q∂∂̃`;
/// (c) with the selfadjoint momentum `p = -i·(q/(1+q))·(∂ - ∂̃)` the algebra
///     closes as `q^(1/2)xp - q^(-1/2)px = iΛ⁻¹` together with
///     `Λp = q⁻¹pΛ` and `Λx = qxΛ`. The overall factor `i` is carried
///     outside the exact scalars, and the momentum normalization `q/(1+q)`
///     (rather than `1/2`) is exactly what makes the right-hand side `iΛ⁻¹`
///     with unit coefficient.
pub fn heisenberg_1d_check() -> HeisenbergReport {
    let mut items = Vec::new();
    let q = QScalar::q_pow(1);
    let qi = QScalar::q_pow(-1);
    let th = QScalar::t_pow(1); // q^(1/2)
    let thi = QScalar::t_pow(-1);

    // alphabet: Λ⁻¹ < x < ∂
    let ab = Alphabet::new(["Li", "x", "del"]);
    let (li, x, del) = (0u8, 1u8, 2u8);
    let w = |a: &[u8]| NCPoly::from_word(a.to_vec());
    let rules = vec![
        // ∂x -> 1 + q x∂
        ((del, x), NCPoly::one().add(&w(&[x, del]).scale(&q))),
        // xΛ⁻¹ -> qΛ⁻¹x, ∂Λ⁻¹ -> q⁻¹Λ⁻¹∂
        ((x, li), w(&[li, x]).scale(&q)),
        ((del, li), w(&[li, del]).scale(&qi)),
    ];
    let sys = RewriteSystem::new(ab, rules).expect("order-compatible rules");

    // (a) consistency of the scaling relations
    let pbw = sys.pbw_overlap_check();
    items.push(HeisenbergItem {
        name: "scaling relations consistent (overlap check)".into(),
        passed: pbw.is_empty(),
        witness: pbw.first().map(|f| f.word.clone()),
    });

    // Λ as a polynomial: q^(1/2)(1 + (q-1)x∂)
    let lambda_poly = NCPoly::one()
        .add(&w(&[x, del]).scale(&(&q - &QScalar::one())))
        .scale(&th);
    let nf = |p: &NCPoly| sys.normal_order(p, DEFAULT_FUEL).expect("terminates");
    let push = |items: &mut Vec<HeisenbergItem>, name: &str, residual: NCPoly| {
        items.push(HeisenbergItem {
            name: name.into(),
            passed: residual.is_zero(),
            witness: if residual.is_zero() {
                None
            } else {
                Some(sys.alphabet().render(&residual))
            },
        });
    };

    // Λ scaling as polynomial identities
    let lx = nf(&lambda_poly.ncmul(&w(&[x])).sub(&w(&[x]).ncmul(&lambda_poly).scale(&q)));
    push(&mut items, "Lambda x = q x Lambda (polynomial)", lx);
    let ld = nf(&lambda_poly
        .ncmul(&w(&[del]))
        .sub(&w(&[del]).ncmul(&lambda_poly).scale(&qi)));
    push(&mut items, "Lambda del = q^-1 del Lambda (polynomial)", ld);

    // zero modulo the Λ-localization: E = Σ_k Λ⁻ᵏ P_k vanishes iff
    // Σ_k Λ^(K-k) P_k = 0 as a plain x∂ polynomial
    let zero_mod_lambda = |e: &NCPoly| -> NCPoly {
        sys.residual_modulo_unit(li, &lambda_poly, e, DEFAULT_FUEL)
            .expect("terminates")
    };

    // (b) ∂̃ = -q^(-1/2) Λ⁻¹ ∂
    let dtilde = w(&[li, del]).scale(&-&thi);
    let e1 = dtilde
        .ncmul(&w(&[x]))
        .add(&NCPoly::scalar(qi.clone()))
        .sub(&w(&[x]).ncmul(&dtilde).scale(&qi));
    push(
        &mut items,
        "dtilde x = -1/q + 1/q x dtilde",
        zero_mod_lambda(&e1),
    );
    let e2 = dtilde
        .ncmul(&w(&[del]))
        .sub(&w(&[del]).ncmul(&dtilde).scale(&q));
    push(&mut items, "dtilde del = q del dtilde", zero_mod_lambda(&e2));

    // (c) p = -i c (∂ - ∂̃) with c = q/(1+q); the factor i is pulled out, so
    // q^(1/2)xp - q^(-1/2)px - iΛ⁻¹ = -i·[c(q^(1/2)x(∂-∂̃) - q^(-1/2)(∂-∂̃)x) + Λ⁻¹]
    let c = &q / &(&QScalar::one() + &q);
    let dmind = w(&[del]).sub(&dtilde);
    let bracket = w(&[x])
        .ncmul(&dmind)
        .scale(&th)
        .sub(&dmind.ncmul(&w(&[x])).scale(&thi));
    let e3 = bracket.scale(&c).add(&w(&[li]));
    push(
        &mut items,
        "q^(1/2) x p - q^(-1/2) p x = i Lambda^-1",
        zero_mod_lambda(&e3),
    );

    // Λp = q⁻¹pΛ, checked with the polynomial Λ (p up to the constant -ic)
    let e4 = lambda_poly
        .ncmul(&dmind)
        .sub(&dmind.ncmul(&lambda_poly).scale(&qi));
    push(&mut items, "Lambda p = q^-1 p Lambda", zero_mod_lambda(&e4));

    HeisenbergReport { items }
}

// ---------------------------------------------------------------------------
// Fixture format
// ---------------------------------------------------------------------------

/// Serialize as a sparse fixture: a `dim n` header then one line
/// `(i,j,k,l) coeff` per nonzero entry, indices 1-based.
pub fn to_fixture(r: &RMatrix) -> String {
    let mut out = alloc::format!("dim {}\n", r.n());
    let n = r.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = r.get(i, j, k, l);
                    if !v.is_zero() {
                        out.push_str(&alloc::format!(
                            "({},{},{},{}) {}\n",
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1,
                            v
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Parse the sparse fixture format produced by [`to_fixture`].
pub fn from_fixture(text: &str) -> Result<RMatrix, RMatrixError> {
    let mut n: Option<usize> = None;
    let mut entries: Vec<(usize, usize, usize, usize, QScalar)> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            n = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| RMatrixError::Fixture(alloc::format!("bad dim: {line}")))?,
            );
            continue;
        }
        let line = line
            .strip_prefix('(')
            .ok_or_else(|| RMatrixError::Fixture(alloc::format!("bad entry: {line}")))?;
        let (idx, coeff) = line
            .split_once(')')
            .ok_or_else(|| RMatrixError::Fixture(alloc::format!("bad entry: {line}")))?;
        let parts: Vec<usize> = idx
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| RMatrixError::Fixture(alloc::format!("bad indices: {idx}")))?;
        if parts.len() != 4 || parts.iter().any(|p| *p == 0) {
            return Err(RMatrixError::Fixture(alloc::format!("bad indices: {idx}")));
        }
        let v = parse_scalar(coeff.trim())
            .map_err(|e| RMatrixError::Fixture(alloc::format!("bad coefficient: {e}")))?;
        entries.push((parts[0] - 1, parts[1] - 1, parts[2] - 1, parts[3] - 1, v));
    }
    let n = n.ok_or_else(|| RMatrixError::Fixture("missing dim header".into()))?;
    let mut r = RMatrix::from_fn(n, |_, _, _, _| QScalar::zero());
    for (i, j, k, l, v) in entries {
        if i >= n || j >= n || k >= n || l >= n {
            return Err(RMatrixError::Fixture("index out of range".into()));
        }
        r.set(i, j, k, l, v);
    }
    Ok(r)
}

fn parse_scalar(text: &str) -> Result<QScalar, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, |id| match id {
        "q" => Some(QScalar::q_pow(1)),
        _ => None,
    });
    let v = p.parse_expr()?;
    if !p.at_end() {
        return Err(ParseError::UnexpectedToken("trailing input".into()));
    }
    Ok(v)
}

/// Aligned-table rendering of the `n²×n²` matrix.
pub fn pretty_table(r: &RMatrix) -> String {
    let d = r.dim();
    let cells: Vec<Vec<String>> = (0..d)
        .map(|row| {
            (0..d)
                .map(|col| alloc::format!("{}", r.matrix().at(row, col)))
                .collect()
        })
        .collect();
    let mut widths = vec![0usize; d];
    for row in &cells {
        for (c, cell) in row.iter().enumerate() {
            widths[c] = widths[c].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            for _ in 0..widths[c] - cell.len() {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests;
