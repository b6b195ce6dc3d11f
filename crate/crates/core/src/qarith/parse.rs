//! Text rendering and exact parsing of scalar expressions.
//!
//! Scalars print as normalized Laurent expressions in `q` with half powers
//! shown as `q^(k/2)`, e.g. `q + 1 + q^-1` or `(q^2 - 1)/(q^2 + 1)`. The
//! parser evaluates the full expression grammar (`+ - * / ^`, parentheses,
//! juxtaposition as multiplication) over an arbitrary value domain, so the
//! field and noncommutative-polynomial formats reuse it; print/parse is an
//! exact round trip.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CQScalar, HalfLaurent, QScalar};

/// Errors from parsing scalar/field/relation text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownSymbol(String),
    BadExponent(String),
    DivisionError(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseError::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseError::UnexpectedToken(t) => write!(f, "unexpected token '{t}'"),
            ParseError::UnknownSymbol(s) => write!(f, "unknown symbol '{s}'"),
            ParseError::BadExponent(s) => write!(f, "bad exponent '{s}'"),
            ParseError::DivisionError(s) => write!(f, "division error: {s}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n.parse().expect("digits")));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '=' => {
                chars.next();
                out.push(Tok::Eq);
            }
            other => return Err(ParseError::UnexpectedChar(other)),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Generic expression evaluation
// ---------------------------------------------------------------------------

/// Value domain the expression grammar evaluates into.
pub trait ExprValue: Clone {
    fn from_rational(r: BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, ParseError>;
    /// Raise to the exponent `num/den` with `den ∈ {1, 2}`.
    fn pow(&self, num: i64, den: i64) -> Result<Self, ParseError>;
}

pub(crate) struct Parser<'a, V, F>
where
    V: ExprValue,
    F: Fn(&str) -> Option<V>,
{
    toks: &'a [Tok],
    pos: usize,
    resolve: F,
}

impl<'a, V, F> Parser<'a, V, F>
where
    V: ExprValue,
    F: Fn(&str) -> Option<V>,
{
    pub(crate) fn new(toks: &'a [Tok], resolve: F) -> Self {
        Parser { toks, pos: 0, resolve }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    pub(crate) fn parse_expr(&mut self) -> Result<V, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<V, ParseError> {
        let mut acc = self.parse_signed_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    acc = acc.div(&f)?;
                }
                // juxtaposition
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_signed_factor(&mut self) -> Result<V, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let f = self.parse_signed_factor()?;
            let zero = V::from_rational(BigRational::zero());
            return Ok(zero.sub(&f));
        }
        self.parse_factor()
    }

    fn parse_factor(&mut self) -> Result<V, ParseError> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let (n, d) = self.parse_exponent()?;
            return base.pow(n, d);
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<(i64, i64), ParseError> {
        let mut neg = false;
        let mut parens = false;
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.pos += 1;
            parens = true;
        }
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            neg = true;
        }
        let n = match self.bump() {
            Some(Tok::Num(n)) => int_to_i64(n)?,
            Some(t) => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
            None => return Err(ParseError::UnexpectedEnd),
        };
        let mut den = 1i64;
        if parens {
            if matches!(self.peek(), Some(Tok::Slash)) {
                self.pos += 1;
                den = match self.bump() {
                    Some(Tok::Num(n)) => int_to_i64(n)?,
                    Some(t) => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
                    None => return Err(ParseError::UnexpectedEnd),
                };
            }
            match self.bump() {
                Some(Tok::RParen) => {}
                Some(t) => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
                None => return Err(ParseError::UnexpectedEnd),
            }
        }
        Ok((if neg { -n } else { n }, den))
    }

    fn parse_atom(&mut self) -> Result<V, ParseError> {
        match self.bump().cloned() {
            Some(Tok::Num(n)) => Ok(V::from_rational(BigRational::from_integer(n))),
            Some(Tok::Ident(id)) => {
                (self.resolve)(&id).ok_or(ParseError::UnknownSymbol(id))
            }
            Some(Tok::LParen) => {
                let v = self.parse_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    Some(t) => Err(ParseError::UnexpectedToken(format!("{t:?}"))),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ParseError::UnexpectedToken(format!("{t:?}"))),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

fn int_to_i64(n: &BigInt) -> Result<i64, ParseError> {
    let digits: Vec<u64> = n.iter_u64_digits().collect();
    match digits.len() {
        0 => Ok(0),
        1 if digits[0] <= i64::MAX as u64 => Ok(digits[0] as i64),
        _ => Err(ParseError::BadExponent(n.to_string())),
    }
}

impl ExprValue for QScalar {
    fn from_rational(r: BigRational) -> Self {
        QScalar::from_rational(r)
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
        if o.is_zero() {
            return Err(ParseError::DivisionError("division by zero".into()));
        }
        Ok(self / o)
    }
    fn pow(&self, num: i64, den: i64) -> Result<Self, ParseError> {
        match den {
            1 => self
                .pow(num)
                .map_err(|e| ParseError::DivisionError(alloc::format!("{e}"))),
            2 => {
                // only exact monomial square roots are representable
                if *self == QScalar::q_pow(1) {
                    return Ok(QScalar::t_pow(num));
                }
                Err(ParseError::BadExponent(format!("{num}/{den}")))
            }
            _ => Err(ParseError::BadExponent(format!("{num}/{den}"))),
        }
    }
}

/// Parse a scalar expression in the variable `q` (e.g. `(q + q^-1)/(q^(1/2) - 1)`).
pub fn parse_qscalar(input: &str) -> Result<QScalar, ParseError> {
    let toks = tokenize(input)?;
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

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One monomial `c·t^e` as a q-expression, with the sign split off.
fn fmt_term(e: i64, c: &BigRational) -> (bool, String) {
    let neg = c.is_negative();
    let abs = c.abs();
    let qpart = if e == 0 {
        None
    } else if e == 2 {
        Some("q".to_string())
    } else if e % 2 == 0 {
        Some(format!("q^{}", e / 2))
    } else {
        Some(format!("q^({}/2)", e))
    };
    let body = match qpart {
        None => fmt_rational(&abs),
        Some(qp) => {
            if abs.is_one() {
                qp
            } else {
                format!("{}*{}", fmt_rational(&abs), qp)
            }
        }
    };
    (neg, body)
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (neg, body) = fmt_term(*e, c);
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

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({})/({})", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CQScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "i*({})", self.im);
        }
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

impl fmt::Debug for CQScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
