//! Exact scalar arithmetic in the deformation parameter.
//!
//! Everything is expressed internally in `t = q^(1/2)`, so every half-integer
//! power of `q` appearing in the algebra is a Laurent monomial:
//!
//! - [`HalfLaurent`]: finite Laurent polynomial in `t` over arbitrary-precision
//!   rationals.
//! - [`QScalar`]: quotient of two `HalfLaurent`s kept in canonical form
//!   (`gcd(num, den) = 1`, denominator's lowest term is `+1·t^0`), so equality
//!   is structural comparison.
//! - [`CQScalar`]: complexification `re + i·im`.
//! - [`qnum`], [`qfact`]: the q-number `[m] = (q^m - q^-m)/(q - q^-1)` and the
//!   q-factorial `[n]!`.
//!
//! Numeric evaluation computes `t0 = sqrt(q0)` once in full double precision
//! and reports poles as errors rather than NaN.

mod gcd;
pub mod parse;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numf;

pub use parse::{parse_qscalar, ParseError};

/// Errors from exact or numeric scalar operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QArithError {
    /// Division by the zero scalar.
    DivisionByZero,
    /// Numeric evaluation hit a zero denominator at the requested point.
    Pole,
    /// An operation requiring exact divisibility failed.
    InexactDivision,
    /// A q-factorial of a negative integer was requested.
    NegativeFactorial,
}

impl fmt::Display for QArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QArithError::DivisionByZero => write!(f, "division by zero scalar"),
            QArithError::Pole => write!(f, "pole: denominator vanishes at evaluation point"),
            QArithError::InexactDivision => write!(f, "inexact polynomial division"),
            QArithError::NegativeFactorial => write!(f, "q-factorial of a negative integer"),
        }
    }
}

// ---------------------------------------------------------------------------
// HalfLaurent
// ---------------------------------------------------------------------------

/// Finite Laurent polynomial in `t = q^(1/2)` with `BigRational` coefficients.
///
/// No stored coefficient is zero; all arithmetic is exact.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, BigRational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// `c · t^e`
    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        HalfLaurent { coeffs }
    }

    /// `t^e`
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(e, BigRational::one())
    }

    /// `q^k = t^(2k)`
    pub fn q_pow(k: i64) -> Self {
        Self::t_pow(2 * k)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Lowest and highest stored exponents of `t`, if nonzero.
    pub fn exp_range(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    /// Substitute `t -> t^-1` (equivalently `q -> q^-1`).
    pub fn invert_t(&self) -> Self {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// Evaluate at `t = t0`.
    ///
    /// Falls back to a scaled mantissa/exponent accumulation when the plain
    /// sum overflows (factorial-scale coefficients do).
    pub fn eval_t(&self, t0: f64) -> f64 {
        let fast = self.eval_t_dd(t0);
        if fast.hi.is_finite() {
            return fast.to_f64();
        }
        let (m, e) = self.eval_t_scaled(t0);
        ldexp_i64(m, e)
    }

    /// Compensated (double-double) evaluation; canonical denominators such as
    /// expanded `[n]!·λ^k` cancel heavily, and plain f64 summation would lose
    /// the result entirely.
    fn eval_t_dd(&self, t0: f64) -> numf::Dd {
        let t = numf::Dd::from_f64(t0);
        let mut acc = numf::Dd::ZERO;
        // walk exponents in order, stepping the power incrementally
        let mut cur_e = match self.coeffs.keys().next() {
            Some(e) => *e,
            None => return acc,
        };
        let mut cur_pow = t.powi(cur_e);
        for (e, c) in &self.coeffs {
            if *e != cur_e {
                cur_pow = cur_pow.mul(t.powi(e - cur_e));
                cur_e = *e;
            }
            acc = acc.add(rational_to_dd(c).mul(cur_pow));
        }
        acc
    }

    /// Evaluate as `mantissa · 2^exp`, immune to intermediate overflow.
    pub(crate) fn eval_t_scaled(&self, t0: f64) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let lt = libm::log2(t0);
        // per-term (sign, log2 magnitude)
        let parts: Vec<(f64, f64)> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let (sn, ln_) = log2_bigint(c.numer());
                let (_, ld) = log2_bigint(c.denom());
                (sn, ln_ - ld + *e as f64 * lt)
            })
            .collect();
        let lmax = parts.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
        let base = lmax as i64;
        let mut acc = 0.0;
        for (s, l) in parts {
            acc += s * libm::exp2(l - base as f64);
        }
        (acc, base)
    }

    /// Exact division; errors unless `den` divides `self` exactly.
    pub fn exact_div(&self, den: &HalfLaurent) -> Result<HalfLaurent, QArithError> {
        if den.is_zero() {
            return Err(QArithError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(HalfLaurent::zero());
        }
        let (nlo, nhi) = self.exp_range().unwrap();
        let (dlo, dhi) = den.exp_range().unwrap();
        if nhi - nlo < dhi - dlo {
            return Err(QArithError::InexactDivision);
        }
        let mut rem = self.clone();
        let mut quo = HalfLaurent::zero();
        let dlead = den.coeff(dhi);
        loop {
            if rem.is_zero() {
                return Ok(quo);
            }
            let (_, rhi) = rem.exp_range().unwrap();
            let e = rhi - dhi;
            // quotient exponents are confined to [nlo - dlo, nhi - dhi]
            if e < nlo - dlo {
                return Err(QArithError::InexactDivision);
            }
            let f = rem.coeff(rhi) / &dlead;
            quo.insert_add(e, f.clone());
            let mut delta = HalfLaurent::zero();
            for (de, dc) in den.terms() {
                delta.insert_add(de + e, dc * &f);
            }
            rem = &rem - &delta;
        }
    }

    /// Decompose into `content · t^shift · primitive-integer-poly`.
    fn primitive_parts(&self) -> (BigRational, i64, gcd::ZPoly) {
        debug_assert!(!self.is_zero());
        let (lo, hi) = self.exp_range().unwrap();
        // common denominator
        let mut den = BigInt::one();
        for c in self.coeffs.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = (lo..=hi)
            .map(|e| {
                let c = self.coeff(e);
                c.numer() * (&den / c.denom())
            })
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        let lead_neg = ints.last().map(|c| c.is_negative()).unwrap_or(false);
        if lead_neg {
            g = -g;
        }
        let prim: gcd::ZPoly = ints.iter().map(|c| c / &g).collect();
        let content = BigRational::new(g, den);
        (content, lo, prim)
    }

    fn from_int_poly(p: &[BigInt], shift: i64) -> Self {
        let mut out = HalfLaurent::zero();
        for (i, c) in p.iter().enumerate() {
            if !c.is_zero() {
                out.insert_add(shift + i as i64, BigRational::from_integer(c.clone()));
            }
        }
        out
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    big_to_f64(r.numer()) / big_to_f64(r.denom())
}

/// Double-double image of a big rational.
fn rational_to_dd(r: &BigRational) -> numf::Dd {
    big_to_dd(r.numer()).div(big_to_dd(r.denom()))
}

fn big_to_dd(x: &BigInt) -> numf::Dd {
    let digits: Vec<u64> = x.iter_u64_digits().collect();
    if digits.len() <= 1 {
        let v = digits.first().copied().unwrap_or(0) as f64;
        return numf::Dd::from_f64(if x.is_negative() { -v } else { v });
    }
    let base = numf::Dd::from_f64(1.8446744073709552e19); // 2^64, exact
    let mut acc = numf::Dd::ZERO;
    for d in digits.iter().rev() {
        // u64 -> dd exactly via two halves
        let hi32 = (d >> 32) as f64 * 4294967296.0;
        let lo32 = (d & 0xffff_ffff) as f64;
        let dd = numf::Dd::from_f64(hi32).add(numf::Dd::from_f64(lo32));
        acc = acc.mul(base).add(dd);
    }
    if x.is_negative() {
        acc.neg()
    } else {
        acc
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    let digits: Vec<u64> = x.iter_u64_digits().collect();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if x.is_negative() {
        -acc
    } else {
        acc
    }
}

/// `(sign, log2 |x|)` with the magnitude taken from the top 53 bits.
fn log2_bigint(x: &BigInt) -> (f64, f64) {
    if x.is_zero() {
        return (0.0, f64::NEG_INFINITY);
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let bits = x.bits();
    if bits <= 53 {
        let m = x.iter_u64_digits().next().unwrap_or(0);
        return (sign, libm::log2(m as f64));
    }
    let shift = bits - 53;
    let top = (x.magnitude() >> shift).iter_u64_digits().next().unwrap_or(0);
    (sign, libm::log2(top as f64) + shift as f64)
}

fn ldexp_i64(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    if e > 3000 {
        return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if e < -3000 {
        return 0.0;
    }
    libm::ldexp(m, e as i32)
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, -c.clone());
        }
        out
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// QScalar
// ---------------------------------------------------------------------------

/// Exact rational function in `t = q^(1/2)`, always in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct QScalar {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: HalfLaurent::zero(), den: HalfLaurent::one() }
    }

    pub fn one() -> Self {
        QScalar { num: HalfLaurent::one(), den: HalfLaurent::one() }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar { num: HalfLaurent::from_int(n), den: HalfLaurent::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QScalar { num: HalfLaurent::monomial(0, r), den: HalfLaurent::one() }
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        QScalar { num: HalfLaurent::q_pow(k), den: HalfLaurent::one() }
    }

    /// `q^(k/2) = t^k`
    pub fn t_pow(k: i64) -> Self {
        QScalar { num: HalfLaurent::t_pow(k), den: HalfLaurent::one() }
    }

    /// `λ = q - 1/q`
    pub fn lambda() -> Self {
        &Self::q_pow(1) - &Self::q_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numer(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denom(&self) -> &HalfLaurent {
        &self.den
    }

    /// Build `num/den` in canonical form.
    pub fn from_ratio(num: HalfLaurent, den: HalfLaurent) -> Result<Self, QArithError> {
        if den.is_zero() {
            return Err(QArithError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: HalfLaurent, den: HalfLaurent) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (cn, sn, pn) = num.primitive_parts();
        let (cd, sd, pd) = den.primitive_parts();
        let (pn, pd) = if pn.len() == 1 || pd.len() == 1 {
            (pn, pd)
        } else {
            let g = gcd::gcd_z(&pn, &pd);
            if g.len() > 1 || !g[0].is_one() {
                (
                    gcd::exact_div_z(&pn, &g).expect("gcd divides"),
                    gcd::exact_div_z(&pd, &g).expect("gcd divides"),
                )
            } else {
                (pn, pd)
            }
        };
        // denominator primitive part has nonzero constant term by construction;
        // normalize its lowest coefficient to +1 and absorb everything else
        // into the numerator.
        let d0 = BigRational::from_integer(pd[0].clone());
        let num_scale = (cn / cd) / &d0;
        let num = HalfLaurent::from_int_poly(&pn, sn - sd).scale(&num_scale);
        let den = HalfLaurent::from_int_poly(&pd, 0).scale(&d0.recip());
        QScalar { num, den }
    }

    pub fn inv(&self) -> Result<Self, QArithError> {
        if self.is_zero() {
            return Err(QArithError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, QArithError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = QScalar::one();
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Numeric evaluation at `q = q0` (i.e. `t = sqrt(q0)`, computed once at
    /// full double precision).
    pub fn eval_at(&self, q0: f64) -> Result<f64, QArithError> {
        let t0 = numf::sqrt(q0);
        let n = self.num.eval_t_dd(t0);
        let d = self.den.eval_t_dd(t0);
        if d.to_f64() == 0.0 {
            return Err(QArithError::Pole);
        }
        if n.hi.is_finite() && d.hi.is_finite() {
            let v = n.div(d).to_f64();
            if v.is_finite() {
                return Ok(v);
            }
        }
        // scaled path: value = (mn/md) · 2^(en - ed)
        let (mn, en) = self.num.eval_t_scaled(t0);
        let (md, ed) = self.den.eval_t_scaled(t0);
        if md == 0.0 {
            return Err(QArithError::Pole);
        }
        Ok(ldexp_i64(mn / md, en - ed))
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        QScalar::canonical(num, den)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num * &rhs.num, den: HalfLaurent::one() };
        }
        QScalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self * &rhs.inv().expect("division by zero QScalar")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned_binops {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { $tr::$m(&self, &rhs) }
        }
    )*};
}

forward_owned_binops!(QScalar, Add::add, Sub::sub, Mul::mul, Div::div);
forward_owned_binops!(HalfLaurent, Add::add, Sub::sub, Mul::mul);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

// ---------------------------------------------------------------------------
// CQScalar
// ---------------------------------------------------------------------------

/// Complexified scalar `re + i·im` with [`QScalar`] components.
#[derive(Clone, PartialEq, Eq)]
pub struct CQScalar {
    pub re: QScalar,
    pub im: QScalar,
}

impl CQScalar {
    pub fn zero() -> Self {
        CQScalar { re: QScalar::zero(), im: QScalar::zero() }
    }

    pub fn one() -> Self {
        CQScalar { re: QScalar::one(), im: QScalar::zero() }
    }

    pub fn i() -> Self {
        CQScalar { re: QScalar::zero(), im: QScalar::one() }
    }

    pub fn from_real(re: QScalar) -> Self {
        CQScalar { re, im: QScalar::zero() }
    }

    pub fn from_imag(im: QScalar) -> Self {
        CQScalar { re: QScalar::zero(), im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CQScalar { re: self.re.clone(), im: -&self.im }
    }

    /// Evaluate to `(re, im)` floats at `q = q0`.
    pub fn eval_at(&self, q0: f64) -> Result<(f64, f64), QArithError> {
        Ok((self.re.eval_at(q0)?, self.im.eval_at(q0)?))
    }
}

impl Add for &CQScalar {
    type Output = CQScalar;
    fn add(self, rhs: &CQScalar) -> CQScalar {
        CQScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &CQScalar {
    type Output = CQScalar;
    fn sub(self, rhs: &CQScalar) -> CQScalar {
        CQScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &CQScalar {
    type Output = CQScalar;
    fn mul(self, rhs: &CQScalar) -> CQScalar {
        CQScalar {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &CQScalar {
    type Output = CQScalar;
    fn neg(self) -> CQScalar {
        CQScalar { re: -&self.re, im: -&self.im }
    }
}

forward_owned_binops!(CQScalar, Add::add, Sub::sub, Mul::mul);

// ---------------------------------------------------------------------------
// q-numbers
// ---------------------------------------------------------------------------

/// The q-number `[m] = (q^m - q^-m)/(q - q^-1)`, expanded exactly as
/// `q^(m-1) + q^(m-3) + … + q^(1-m)` for `m > 0`, with `[-m] = -[m]`.
pub fn qnum(m: i64) -> QScalar {
    if m == 0 {
        return QScalar::zero();
    }
    let a = m.abs();
    let mut p = HalfLaurent::zero();
    let mut e = a - 1;
    while e >= -(a - 1) {
        p = &p + &HalfLaurent::q_pow(e);
        e -= 2;
    }
    let s = QScalar { num: p, den: HalfLaurent::one() };
    if m < 0 {
        -&s
    } else {
        s
    }
}

/// The q-number `[m]` for half-integer `m = twice/2`:
/// `(q^m - q^-m)/(q - q^-1)`, a rational function of `t` when `twice` is odd.
pub fn qnum_half(twice: i64) -> QScalar {
    if twice % 2 == 0 {
        return qnum(twice / 2);
    }
    let num = &HalfLaurent::t_pow(twice) - &HalfLaurent::t_pow(-twice);
    let den = &HalfLaurent::t_pow(2) - &HalfLaurent::t_pow(-2);
    QScalar::from_ratio(num, den).expect("λ ≠ 0")
}

/// `[n]! = [n]·[n-1]·…·[1]`, with `[0]! = 1`.
pub fn qfact(n: i64) -> Result<QScalar, QArithError> {
    if n < 0 {
        return Err(QArithError::NegativeFactorial);
    }
    let mut acc = QScalar::one();
    for k in 1..=n {
        acc = &acc * &qnum(k);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
