//! Deterministic pseudo-random values for the randomized exactness checks
//! (fixed seed, so reports are reproducible byte-for-byte).

use num_rational::BigRational;
use qdha_core::fieldcalc::FieldElem;
use qdha_core::qarith::QScalar;

/// SplitMix64: tiny, deterministic, good enough to pick exponents.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A random Laurent field with up to `terms` monomials, exponents in
    /// `[-maxdeg, maxdeg]`, coefficients `c·q^e` with small `c`, `e`.
    pub fn field(&mut self, maxdeg: i64, terms: usize) -> FieldElem {
        let mut f = FieldElem::zero();
        let n = 1 + (self.next_u64() % terms as u64) as usize;
        for _ in 0..n {
            let k = self.range(-maxdeg, maxdeg);
            let c = self.range(-9, 9);
            let e = self.range(-4, 4);
            let coeff = &QScalar::from_rational(BigRational::from_integer(c.into()))
                * &QScalar::q_pow(e);
            f = &f + &FieldElem::monomial(k, coeff);
        }
        f
    }
}
