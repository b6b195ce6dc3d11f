//! Univariate polynomial gcd over the integers via modular images.
//!
//! Canonicalizing a [`QScalar`](super::QScalar) needs gcds of polynomials in
//! `t` whose degrees reach a few thousand (q-factorial denominators), where a
//! classical PRS blows up. Images mod word-sized primes plus CRT lifting keep
//! it cheap, and a degree-0 image proves coprimality from a single prime.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, little-endian coefficients, nonzero leading term.
pub(crate) type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = num_integer::gcd(g, c.clone());
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_scalar(p: &mut ZPoly, s: &BigInt) {
    for c in p.iter_mut() {
        *c = &*c / s;
    }
}

// ---------------------------------------------------------------------------
// Arithmetic mod a 62-bit prime
// ---------------------------------------------------------------------------

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64 with the first twelve prime bases.
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic stream of primes just below 2^62.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let n = self.next;
            self.next -= 2;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
    }
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let base = ((u64::MAX % p) as u128 + 1) % p as u128; // 2^64 mod p
    let mut r: u128 = 0;
    let digits: Vec<u64> = x.iter_u64_digits().collect();
    for d in digits.iter().rev() {
        r = (r * base + (*d % p) as u128) % p as u128;
    }
    let r = r as u64;
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn poly_mod(p: &ZPoly, m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = p.iter().map(|c| bigint_mod(c, m)).collect();
    while out.last().map(|c| *c == 0).unwrap_or(false) {
        out.pop();
    }
    out
}

/// Monic gcd of two polynomials mod p (Euclid).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a <- a mod b
        let lb_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = mul_mod(*a.last().unwrap(), lb_inv, p);
            for (i, bc) in b.iter().enumerate() {
                let sub = mul_mod(factor, *bc, p);
                let idx = i + shift;
                a[idx] = (a[idx] + p - sub) % p;
            }
            while a.last().map(|c| *c == 0).unwrap_or(false) {
                a.pop();
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().copied() {
        let li = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    a
}

/// Exact division test over Q for integer polynomials; returns the quotient
/// if `den` divides `num` exactly.
pub(crate) fn exact_div_z(num: &ZPoly, den: &ZPoly) -> Option<ZPoly> {
    if den.is_empty() {
        return None;
    }
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() < den.len() {
        return None;
    }
    // Work over Q via a running denominator: rem holds num * scale with
    // integer coefficients, quotient entries are rationals q_i / scale_i kept
    // as (BigInt, BigInt) pairs only implicitly -- we instead require the
    // leading coefficient of den to divide at every step after scaling by
    // lc(den)^k, which is the classical pseudo-division exactness test.
    let lc = den.last().unwrap().clone();
    let qdeg = num.len() - den.len();
    let mut rem = num.clone();
    let mut quo: ZPoly = vec![BigInt::zero(); qdeg + 1];
    for step in (0..=qdeg).rev() {
        let cur = rem[step + den.len() - 1].clone();
        if (&cur % &lc).is_zero() {
            let f = &cur / &lc;
            for (i, dc) in den.iter().enumerate() {
                let v = &rem[step + i] - dc * &f;
                rem[step + i] = v;
            }
            quo[step] = f;
        } else {
            // Quotient is not integral step-by-step; decide via the scaled
            // pseudo-division test instead.
            return exact_div_scaled(num, den);
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        trim(&mut quo);
        Some(quo)
    } else {
        None
    }
}

/// Fallback exactness test: divide lc(den)^k * num by den with integer
/// pseudo-division, then check the quotient's content absorbs the scaling.
fn exact_div_scaled(num: &ZPoly, den: &ZPoly) -> Option<ZPoly> {
    let lc = den.last().unwrap().clone();
    let qdeg = num.len() - den.len();
    let mut scale = BigInt::one();
    for _ in 0..=qdeg {
        scale *= &lc;
    }
    let mut rem: ZPoly = num.iter().map(|c| c * &scale).collect();
    let mut quo: ZPoly = vec![BigInt::zero(); qdeg + 1];
    for step in (0..=qdeg).rev() {
        let cur = rem[step + den.len() - 1].clone();
        if !(&cur % &lc).is_zero() {
            return None;
        }
        let f = &cur / &lc;
        for (i, dc) in den.iter().enumerate() {
            let v = &rem[step + i] - dc * &f;
            rem[step + i] = v;
        }
        quo[step] = f;
    }
    if !rem.iter().all(|c| c.is_zero()) {
        return None;
    }
    // quotient = quo / scale; must be exact for den | num over Z up to content
    for c in quo.iter() {
        if !(c % &scale).is_zero() {
            return None;
        }
    }
    divide_scalar(&mut quo, &scale);
    trim(&mut quo);
    Some(quo)
}

/// Primitive gcd of two nonzero integer polynomials.
pub(crate) fn gcd_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let ca = content(a);
    let cb = content(b);
    let cg = num_integer::gcd(ca.clone(), cb.clone());
    let mut pa = a.clone();
    divide_scalar(&mut pa, &ca);
    let mut pb = b.clone();
    divide_scalar(&mut pb, &cb);
    if pa.len() == 1 || pb.len() == 1 {
        return vec![cg];
    }
    let lga = pa.last().unwrap();
    let lgb = pb.last().unwrap();
    let glc = num_integer::gcd(lga.clone(), lgb.clone());

    let mut primes = Primes::new();
    let mut images: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut best_deg = usize::MAX;
    loop {
        let p = primes.next().unwrap();
        if bigint_mod(lga, p) == 0 || bigint_mod(lgb, p) == 0 {
            continue;
        }
        let g = gcd_mod(poly_mod(&pa, p), poly_mod(&pb, p), p);
        if g.len() == 1 {
            // coprime over Q: gcd is the content gcd only
            return vec![cg];
        }
        let deg = g.len() - 1;
        if deg < best_deg {
            best_deg = deg;
            images.clear();
        }
        if deg > best_deg {
            continue; // unlucky prime
        }
        // normalize the image so its leading coefficient is glc mod p
        let target = bigint_mod(&glc, p);
        let f = mul_mod(target, inv_mod(*g.last().unwrap(), p), p);
        let g: Vec<u64> = g.iter().map(|c| mul_mod(*c, f, p)).collect();
        images.push((p, g));

        if let Some(candidate) = crt_lift(&images, best_deg) {
            let mut cand = candidate;
            let cc = content(&cand);
            if !cc.is_zero() && !cc.is_one() {
                divide_scalar(&mut cand, &cc);
            }
            if cand.last().map(|c| c.is_negative()).unwrap_or(false) {
                for c in cand.iter_mut() {
                    *c = -&*c;
                }
            }
            if exact_div_z(&pa, &cand).is_some() && exact_div_z(&pb, &cand).is_some() {
                for c in cand.iter_mut() {
                    *c = &*c * &cg;
                }
                return cand;
            }
        }
    }
}

/// Combine images by CRT into symmetric-range integer coefficients.
fn crt_lift(images: &[(u64, Vec<u64>)], deg: usize) -> Option<ZPoly> {
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); deg + 1];
    for (p, g) in images {
        let pb = BigInt::from(*p);
        if modulus.is_one() {
            for (i, c) in coeffs.iter_mut().enumerate() {
                *c = BigInt::from(*g.get(i).unwrap_or(&0));
            }
            modulus = pb;
            continue;
        }
        // x ≡ cur (mod modulus), x ≡ g_i (mod p)
        let m_inv = inv_mod(bigint_mod(&modulus, *p), *p);
        for (i, c) in coeffs.iter_mut().enumerate() {
            let gi = *g.get(i).unwrap_or(&0);
            let cur_mod_p = bigint_mod(c, *p);
            let diff = (gi + p - cur_mod_p) % p;
            let k = mul_mod(diff, m_inv, *p);
            *c += &modulus * BigInt::from(k);
        }
        modulus *= &pb;
    }
    // symmetric range
    let half = &modulus >> 1;
    for c in coeffs.iter_mut() {
        if &*c > &half {
            *c -= &modulus;
        }
    }
    let mut out = coeffs;
    trim(&mut out);
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        let mut p: ZPoly = v.iter().map(|c| BigInt::from(*c)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = z(&[-2, 1, 1]);
        let b = z(&[-3, 2, 1]);
        assert_eq!(gcd_z(&a, &b), z(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime_is_content() {
        let a = z(&[2, 2]); // 2(x+1)
        let b = z(&[4, 0, 4]); // 4(x^2+1)
        assert_eq!(gcd_z(&a, &b), z(&[2]));
    }

    #[test]
    fn exact_division_detects_failure() {
        let a = z(&[-1, 0, 1]);
        assert_eq!(exact_div_z(&a, &z(&[1, 1])), Some(z(&[-1, 1])));
        assert_eq!(exact_div_z(&a, &z(&[2, 1])), None);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = Primes::new().take(5).collect();
        for p in ps {
            assert!(is_prime_u64(p));
        }
    }
}
