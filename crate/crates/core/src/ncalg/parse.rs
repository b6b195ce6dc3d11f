//! Plain-text relation format.
//!
//! One header line `generators: g1 g2 …` fixes the alphabet in normal-form
//! order; every following non-empty, non-`#` line is one relation
//! `LHS = RHS` over those generators with scalar coefficient syntax in `q`,
//! e.g.
//!
//! ```text
//! generators: a b c d
//! a b = q b a
//! a d = d a + (q - q^-1) b c
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{system_from_pairs, Alphabet, NCPoly, NcError, RewriteSystem};
use crate::qarith::parse::{tokenize, ParseError, Parser};
use crate::qarith::QScalar;

/// Errors from the relation text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationParseError {
    /// No `generators:` header before the first relation.
    MissingHeader,
    /// A relation line without exactly one `=`.
    BadRelationLine { line: usize },
    /// Expression syntax error.
    Expr { line: usize, err: ParseError },
    /// Relation could not be compiled into a rule.
    Compile(NcError),
}

impl fmt::Display for RelationParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationParseError::MissingHeader => {
                write!(f, "missing 'generators:' header line")
            }
            RelationParseError::BadRelationLine { line } => {
                write!(f, "line {line}: expected exactly one '='")
            }
            RelationParseError::Expr { line, err } => write!(f, "line {line}: {err}"),
            RelationParseError::Compile(e) => write!(f, "{e}"),
        }
    }
}

/// Parse the header and relation lines into an alphabet and the relation
/// polynomials `LHS - RHS`.
pub fn parse_relations(text: &str) -> Result<(Alphabet, Vec<NCPoly>), RelationParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("generators:") {
            let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
            alphabet = Some(Alphabet::new(names));
            continue;
        }
        let alphabet = alphabet.as_ref().ok_or(RelationParseError::MissingHeader)?;
        let mut sides = line.splitn(2, '=');
        let lhs_text = sides.next().unwrap_or("");
        let rhs_text = match sides.next() {
            Some(t) if !t.contains('=') => t,
            _ => return Err(RelationParseError::BadRelationLine { line: lineno + 1 }),
        };
        let lhs = parse_side(alphabet, lhs_text)
            .map_err(|err| RelationParseError::Expr { line: lineno + 1, err })?;
        let rhs = parse_side(alphabet, rhs_text)
            .map_err(|err| RelationParseError::Expr { line: lineno + 1, err })?;
        relations.push(lhs.sub(&rhs));
    }
    match alphabet {
        Some(a) => Ok((a, relations)),
        None => Err(RelationParseError::MissingHeader),
    }
}

fn parse_side(alphabet: &Alphabet, text: &str) -> Result<NCPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, |id| {
        if id == "q" {
            return Some(NCPoly::scalar(QScalar::q_pow(1)));
        }
        alphabet.index_of(id).map(NCPoly::gen)
    });
    let v = p.parse_expr()?;
    if !p.at_end() {
        return Err(ParseError::UnexpectedToken("trailing input".into()));
    }
    Ok(v)
}

/// Parse and compile a relation file into a rewrite system.
pub fn parse_relation_system(text: &str) -> Result<RewriteSystem, RelationParseError> {
    let (alphabet, relations) = parse_relations(text)?;
    system_from_pairs(alphabet, &relations).map_err(RelationParseError::Compile)
}
