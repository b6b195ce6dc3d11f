//! The commutative field algebra: Laurent polynomials in `x` with exact
//! scalar coefficients, the maps `∇`, `L`, `L⁻¹`, the indefinite integral,
//! the lattice definite integral and the Jackson scalar product.
//!
//! The derivative acts monomial-wise, `∇ x^m = [m] x^(m-1)`, the scaling map
//! by `L^±1 x^m = q^(∓m) x^m`. Fields are finite Laurent polynomials, not
//! formal power series: every identity handled here is degree-local and any
//! truncation policy stays with the caller.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::numf;
use crate::qarith::parse::{self, ExprValue, ParseError};
use crate::qarith::{qnum, QScalar};

/// Errors from field-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The field has an `x^-1` component, which is not in the image of `∇`.
    NotInImageOfNabla,
    /// Lattice endpoints of mixed parity.
    MixedParity,
    /// The field contains `x^-1` and the caller did not allow it.
    InverseXNotAllowed,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotInImageOfNabla => {
                write!(f, "x^-1 component: not in the image of nabla")
            }
            FieldError::MixedParity => write!(f, "lattice endpoints must share parity"),
            FieldError::InverseXNotAllowed => {
                write!(f, "field contains x^-1 (pass allow_inverse_x to integrate it)")
            }
        }
    }
}

/// A field `f(x)`: finite Laurent polynomial in `x` over [`QScalar`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FieldElem {
    coeffs: BTreeMap<i64, QScalar>,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, QScalar::one())
    }

    /// `c · x^k`
    pub fn monomial(k: i64, c: QScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        FieldElem { coeffs }
    }

    pub fn x_pow(k: i64) -> Self {
        Self::monomial(k, QScalar::one())
    }

    pub fn from_scalar(c: QScalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> QScalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &QScalar)> {
        self.coeffs.iter()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((
            *self.coeffs.keys().next()?,
            *self.coeffs.keys().next_back()?,
        ))
    }

    /// Remove the `x^k` term, returning its coefficient.
    pub fn remove_term(&mut self, k: i64) -> QScalar {
        self.coeffs.remove(&k).unwrap_or_else(QScalar::zero)
    }

    fn insert_add(&mut self, k: i64, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FieldElem {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Drop every term of degree `>= cap`.
    pub fn truncate_above(&self, cap: i64) -> Self {
        FieldElem {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k < cap)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Numeric evaluation at `x = x0`, `q = q0`.
    pub fn eval(&self, x0: f64, q0: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in &self.coeffs {
            acc += c.eval_at(q0).unwrap_or(f64::NAN) * numf::powi(x0, *k);
        }
        acc
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert_add(*k, c.clone());
        }
        out
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert_add(*k, -c);
        }
        out
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let mut out = FieldElem::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.insert_add(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// The maps ∇, L, L^-1 and the integrals
// ---------------------------------------------------------------------------

/// `∇ f`: acts on monomials by `∇ x^m = [m] x^(m-1)`; constants map to zero.
pub fn nabla(f: &FieldElem) -> FieldElem {
    let mut out = FieldElem::zero();
    for (m, c) in f.terms() {
        if *m != 0 {
            out.insert_add(m - 1, c * &qnum(*m));
        }
    }
    out
}

/// `L^power f`: acts on monomials by `x^m -> q^(-m·power) x^m`.
///
/// `power = 1` is `L`, `power = -1` is `L⁻¹`, `power = 0` the identity.
pub fn l_shift(f: &FieldElem, power: i64) -> FieldElem {
    FieldElem {
        coeffs: f
            .coeffs
            .iter()
            .map(|(m, c)| (*m, c * &QScalar::q_pow(-m * power)))
            .collect(),
    }
}

/// Indefinite integral: the right inverse of `∇` with integration constant
/// fixed to zero, `x^n -> x^(n+1)/[n+1]`.
///
/// Errors if `f` has an `x^-1` component, which is not in the image of `∇`.
pub fn grad_inverse(f: &FieldElem) -> Result<FieldElem, FieldError> {
    if !f.coeff(-1).is_zero() {
        return Err(FieldError::NotInImageOfNabla);
    }
    let mut out = FieldElem::zero();
    for (n, c) in f.terms() {
        out.insert_add(n + 1, c / &qnum(n + 1));
    }
    Ok(out)
}

/// Definite lattice integral between same-parity endpoints `N <= M`.
///
/// Evaluates `λ · Σ_μ (L x f)(q^μ)` over the lattice points
/// `μ = N+2, N+4, …, M` in the `s = 1`, `σ = +1` representation. On even
/// endpoints `2N' -> 2M'` this telescopes to
/// `(q^(2M'(n+1)) - q^(2N'(n+1)))/[n+1]` for monomials `x^n`, `n ≠ -1`, and
/// to `λ(M' - N')` for `x^-1`. Fields containing `x^-1` are rejected unless
/// `allow_inverse_x` is set.
pub fn definite_integral(
    f: &FieldElem,
    n_lo: i64,
    m_hi: i64,
    q0: f64,
    allow_inverse_x: bool,
) -> Result<f64, FieldError> {
    if n_lo > m_hi || (m_hi - n_lo) % 2 != 0 {
        return Err(FieldError::MixedParity);
    }
    if !allow_inverse_x && !f.coeff(-1).is_zero() {
        return Err(FieldError::InverseXNotAllowed);
    }
    // integrand as a field: L(x·f), evaluated on the lattice
    let integrand = l_shift(&(&FieldElem::x_pow(1) * f), 1);
    let lambda = q0 - 1.0 / q0;
    let mut acc = 0.0;
    let mut mu = n_lo + 2;
    while mu <= m_hi {
        acc += integrand.eval(numf::powi(q0, mu), q0);
        mu += 2;
    }
    Ok(lambda * acc)
}

/// Jackson scalar product truncated to a window of lattice exponents:
/// `λ · Σ_{n ∈ window, σ = ±1} q0^n · conj(f)(σ q0^n) · g(σ q0^n)`.
///
/// Coefficients are real rational functions of `q`, so conjugation acts as
/// the identity here; truncation error is the caller's concern.
pub fn jackson_product(
    f: &FieldElem,
    g: &FieldElem,
    q0: f64,
    window: core::ops::RangeInclusive<i64>,
) -> f64 {
    let lambda = q0 - 1.0 / q0;
    let mut acc = 0.0;
    for n in window {
        let xn = numf::powi(q0, n);
        for sigma in [1.0, -1.0] {
            acc += xn * f.eval(sigma * xn, q0) * g.eval(sigma * xn, q0);
        }
    }
    lambda * acc
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

impl ExprValue for FieldElem {
    fn from_rational(r: BigRational) -> Self {
        FieldElem::from_scalar(QScalar::from_rational(r))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, ParseError> {
        // division only by invertible monomials c·x^k
        if o.coeffs.len() != 1 {
            return Err(ParseError::DivisionError(
                "field division needs a monomial divisor".into(),
            ));
        }
        let (k, c) = o.coeffs.iter().next().unwrap();
        let cinv = c
            .inv()
            .map_err(|e| ParseError::DivisionError(alloc::format!("{e}")))?;
        Ok(FieldElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, v)| (m - k, v * &cinv))
                .collect(),
        })
    }
    fn pow(&self, num: i64, den: i64) -> Result<Self, ParseError> {
        if den == 2 {
            // only q^(k/2) appears under a half power
            if self.coeffs.len() == 1 {
                if let Some(c) = self.coeffs.get(&0) {
                    let s = ExprValue::pow(c, num, den)?;
                    return Ok(FieldElem::from_scalar(s));
                }
            }
            return Err(ParseError::BadExponent(alloc::format!("{num}/{den}")));
        }
        if num >= 0 {
            let mut acc = FieldElem::one();
            for _ in 0..num {
                acc = &acc * self;
            }
            Ok(acc)
        } else {
            let inv = ExprValue::div(&FieldElem::one(), self)?;
            ExprValue::pow(&inv, -num, 1)
        }
    }
}

/// Parse a field expression in `x` and `q`,
/// e.g. `(q + q^-1)*x^2 - 1/3*x^-1 + 5`.
pub fn parse_field(input: &str) -> Result<FieldElem, ParseError> {
    let toks = parse::tokenize(input)?;
    let mut p = parse::Parser::new(&toks, |id| match id {
        "q" => Some(FieldElem::from_scalar(QScalar::q_pow(1))),
        "x" => Some(FieldElem::x_pow(1)),
        _ => None,
    });
    let v = p.parse_expr()?;
    if !p.at_end() {
        return Err(ParseError::UnexpectedToken("trailing input".into()));
    }
    Ok(v)
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let cs = alloc::format!("{c}");
            let xpart = match *k {
                0 => None,
                1 => Some(String::from("x")),
                e => Some(alloc::format!("x^{e}")),
            };
            let (neg, cs) = match cs.strip_prefix('-') {
                // a bare leading minus on a single-term coefficient can move
                // out front; composite coefficients keep their sign inside
                // parentheses
                Some(rest) if !cs.contains(" + ") && !cs.contains(" - ") => {
                    (true, String::from(rest))
                }
                _ => (false, cs),
            };
            let needs_parens = cs.contains(' ') || cs.contains('/');
            let body = match (&xpart, needs_parens, cs.as_str()) {
                (None, _, _) => cs.clone(),
                (Some(xp), _, "1") => xp.clone(),
                (Some(xp), true, _) => alloc::format!("({cs})*{xp}"),
                (Some(xp), false, _) => alloc::format!("{cs}*{xp}"),
            };
            if first {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use alloc::format;

    use proptest::prelude::*;

    use super::*;
    use crate::qarith::QScalar;

    fn x(k: i64) -> FieldElem {
        FieldElem::x_pow(k)
    }

    #[test]
    fn nabla_on_monomials() {
        // ∇ x^m = [m] x^(m-1)
        assert_eq!(nabla(&x(3)), FieldElem::monomial(2, qnum(3)));
        // constants are in the kernel
        assert!(nabla(&FieldElem::from_scalar(QScalar::from_int(7))).is_zero());
        // ∇ x^-2 = -[2] x^-3
        assert_eq!(nabla(&x(-2)), FieldElem::monomial(-3, -&qnum(2)));
    }

    #[test]
    fn l_shift_on_monomials() {
        assert_eq!(l_shift(&x(2), 1), FieldElem::monomial(2, QScalar::q_pow(-2)));
        let f = &x(2) + &x(-1);
        assert_eq!(l_shift(&f, 0), f);
        assert_eq!(l_shift(&x(-1), -1), FieldElem::monomial(-1, QScalar::q_pow(-1)));
    }

    #[test]
    fn grad_inverse_examples() {
        // x^n -> x^(n+1)/[n+1]
        let f = grad_inverse(&x(3)).unwrap();
        assert_eq!(f, FieldElem::monomial(4, &QScalar::one() / &qnum(4)));
        assert!(grad_inverse(&FieldElem::zero()).unwrap().is_zero());
        assert_eq!(grad_inverse(&x(-1)), Err(FieldError::NotInImageOfNabla));
        // right inverse of nabla
        let g = &x(5) + &x(-3);
        assert_eq!(nabla(&grad_inverse(&g).unwrap()), g);
    }

    fn arb_field(maxdeg: i64) -> impl Strategy<Value = FieldElem> {
        prop::collection::vec((-maxdeg..=maxdeg, -9i64..=9, -4i64..=4), 1..5).prop_map(
            |terms| {
                let mut f = FieldElem::zero();
                for (k, c, e) in terms {
                    let coeff = &QScalar::from_int(c) * &QScalar::q_pow(e);
                    f = &f + &FieldElem::monomial(k, coeff);
                }
                f
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        // ∇(fg) = (∇f)(L⁻¹g) + (Lf)(∇g) = (∇f)(Lg) + (L⁻¹f)(∇g), exactly.
        // With the plain ordering choice for differentials these are also the
        // two Leibniz forms of the exterior derivative d = dx·∇ at the
        // coefficient level.
        #[test]
        fn leibniz_rules(f in arb_field(8), g in arb_field(8)) {
            let fg = &f * &g;
            let lhs = nabla(&fg);
            let r1 = &(&nabla(&f) * &l_shift(&g, -1)) + &(&l_shift(&f, 1) * &nabla(&g));
            let r2 = &(&nabla(&f) * &l_shift(&g, 1)) + &(&l_shift(&f, -1) * &nabla(&g));
            prop_assert_eq!(lhs.clone(), r1);
            prop_assert_eq!(lhs, r2);
        }

        // L(fg) = (Lf)(Lg)
        #[test]
        fn l_is_group_like(f in arb_field(8), g in arb_field(8)) {
            prop_assert_eq!(l_shift(&(&f * &g), 1), &l_shift(&f, 1) * &l_shift(&g, 1));
            prop_assert_eq!(l_shift(&(&f * &g), -1), &l_shift(&f, -1) * &l_shift(&g, -1));
        }

        // (∇²f)g - f(∇²g) = ∇((∇f)(L⁻¹g) - (L⁻¹f)(∇g))
        #[test]
        fn greens_theorem(f in arb_field(8), g in arb_field(8)) {
            let lhs = &(&nabla(&nabla(&f)) * &g) - &(&f * &nabla(&nabla(&g)));
            let inner = &(&nabla(&f) * &l_shift(&g, -1)) - &(&l_shift(&f, -1) * &nabla(&g));
            prop_assert_eq!(lhs, nabla(&inner));
        }

        #[test]
        fn grad_inverse_is_right_inverse(f in arb_field(8)) {
            let mut f = f;
            f.remove_term(-1);
            let integrated = grad_inverse(&f).unwrap();
            prop_assert_eq!(nabla(&integrated), f.clone());
            // no constant term in the chosen antiderivative
            prop_assert!(integrated.coeff(0).is_zero());
        }

        // ∫(∇f)(L⁻¹g) + ∫(Lf)(∇g) = fg - const
        #[test]
        fn partial_integration(f in arb_field(8), g in arb_field(8)) {
            let a = &nabla(&f) * &l_shift(&g, -1);
            let b = &l_shift(&f, 1) * &nabla(&g);
            let total = grad_inverse(&(&a + &b)).unwrap();
            let fg = &f * &g;
            let fg_no_const = &fg - &FieldElem::from_scalar(fg.coeff(0));
            prop_assert_eq!(total, fg_no_const);
        }

        #[test]
        fn field_parse_print_round_trip(f in arb_field(6)) {
            let printed = format!("{f}");
            let reparsed = parse_field(&printed).unwrap();
            prop_assert_eq!(f, reparsed);
        }
    }

    #[test]
    fn homomorphism_relation_on_monomials() {
        // q^(1/2) x ∇ - q^(-1/2) ∇ x = -q^(-1/2) L, applied to x^m
        let th = QScalar::t_pow(1);
        let th_inv = QScalar::t_pow(-1);
        for m in -10..=10 {
            let xm = x(m);
            let lhs = &(&x(1) * &nabla(&xm)).scale(&th)
                - &nabla(&(&x(1) * &xm)).scale(&th_inv);
            let rhs = l_shift(&xm, 1).scale(&-&th_inv);
            assert_eq!(lhs, rhs, "m={m}");
        }
    }

    #[test]
    fn definite_integral_monomial_matches_closed_form() {
        let q0 = 1.3f64;
        for n in [-3i64, -1, 0, 1, 2] {
            for (lo, hi) in [(-4i64, 6i64), (-2, 2), (0, 0)] {
                let got = definite_integral(&x(n), 2 * lo, 2 * hi, q0, true).unwrap();
                let qn = |e: i64| crate::numf::powi(q0, e);
                let want = if n == -1 {
                    (q0 - 1.0 / q0) * (hi - lo) as f64
                } else {
                    let qnum_np1 = (qn(n + 1) - qn(-(n + 1))) / (q0 - 1.0 / q0);
                    (qn(2 * hi * (n + 1)) - qn(2 * lo * (n + 1))) / qnum_np1
                };
                assert!(
                    (got - want).abs() <= 1e-10 * (1.0 + want.abs()),
                    "n={n} window=({lo},{hi}): got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn definite_integral_rejections() {
        assert_eq!(
            definite_integral(&x(0), 0, 3, 1.2, true),
            Err(FieldError::MixedParity)
        );
        assert_eq!(
            definite_integral(&x(-1), 0, 2, 1.2, false),
            Err(FieldError::InverseXNotAllowed)
        );
        assert_eq!(definite_integral(&FieldElem::zero(), 0, 4, 1.2, false), Ok(0.0));
    }

    #[test]
    fn jackson_product_basics() {
        let q0 = 1.1f64;
        // norm positivity on a decaying-ish sample
        let f = &x(1) + &FieldElem::monomial(3, QScalar::from_int(-1));
        let nf = jackson_product(&f, &f, q0, -10..=-1);
        assert!(nf > 0.0);
        // symmetry (real coefficients)
        let g = &x(2) + &FieldElem::one();
        let fg = jackson_product(&f, &g, q0, -10..=-1);
        let gf = jackson_product(&g, &f, q0, -10..=-1);
        assert!((fg - gf).abs() < 1e-12 * (1.0 + fg.abs()));
        // (x, x) over n in [-10, 10]: direct finite sum λ Σ_{σ,n} q^{3n}
        let direct: f64 = (-10..=10)
            .map(|n| 2.0 * crate::numf::powi(q0, 3 * n))
            .sum::<f64>()
            * (q0 - 1.0 / q0);
        let got = jackson_product(&x(1), &x(1), q0, -10..=10);
        assert!((got - direct).abs() < 1e-9 * direct.abs());
    }

    #[test]
    fn display_examples() {
        let f = &x(2).scale(&qnum(2)) - &x(-1).scale(&QScalar::from_int(3));
        let s = format!("{f}");
        assert_eq!(s, "(q + q^-1)*x^2 - 3*x^-1");
        for t in ["x^2 - x", "5", "0", "1/2*x^-3 + q*x"] {
            let f = parse_field(t).unwrap();
            let round = parse_field(&format!("{f}")).unwrap();
            assert_eq!(f, round);
        }
    }
}
