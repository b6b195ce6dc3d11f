//! Noncommutative normal-ordering engine over exact scalar coefficients.
//!
//! Words over an ordered generator alphabet are rewritten by per-pair rules
//! (for example `b·a -> q⁻¹·a·b`) until no adjacent pair matches a rule.
//! Every rule's replacement must be strictly smaller in the termination order
//! (word length, then lexicographic on order indices), so reduction of valid
//! systems terminates; the diamond-lemma overlap check resolves every
//! degree-3 ambiguity both ways and reports the witnesses of any mismatch.
//!
//! Inverse pairs (`Λ·Λ⁻¹ -> 1`) are ordinary rules whose replacement is the
//! empty word; they may sit on ordered pairs.

pub mod parse;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::qarith::parse::{ExprValue, ParseError};
use crate::qarith::QScalar;

pub use parse::parse_relation_system;

/// A word over the alphabet: a finite sequence of generator indices. The
/// index doubles as the generator's position in the normal-form order.
pub type Word = Vec<u8>;

/// Errors from the rewriting engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcError {
    /// Rewriting did not terminate within the fuel budget.
    NonTermination { word: String },
    /// A relation could not be oriented into a terminating rule.
    NonOrientable { term: String },
    /// Two relations want different replacements for the same leading pair.
    ConflictingRule { pair: String },
    /// A rule replacement is not smaller than its left-hand side.
    BadReplacement { pair: String, term: String },
}

impl fmt::Display for NcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcError::NonTermination { word } => write!(f, "non-termination at word {word}"),
            NcError::NonOrientable { term } => write!(f, "relation not orientable at {term}"),
            NcError::ConflictingRule { pair } => write!(f, "conflicting rules for pair {pair}"),
            NcError::BadReplacement { pair, term } => {
                write!(f, "replacement term {term} not smaller than pair {pair}")
            }
        }
    }
}

/// Named, totally ordered generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(names.len() <= u8::MAX as usize, "alphabet too large");
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: u8) -> &str {
        &self.names[g as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.names.len()).map(|i| i as u8)
    }

    /// Index map embedding `self` into a larger alphabet by name.
    pub fn embedding(&self, into: &Alphabet) -> Option<Vec<u8>> {
        self.names.iter().map(|n| into.index_of(n)).collect()
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, g) in w.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.name(*g));
        }
        out
    }

    pub fn render(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in p.terms.iter().enumerate() {
            let cs = alloc::format!("{c}");
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) if !cs.contains(" + ") && !cs.contains(" - ") => {
                    ("-", String::from(rest))
                }
                _ => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let needs_parens = mag.contains(' ') || mag.contains('/');
            if w.is_empty() {
                if needs_parens {
                    out.push_str(&alloc::format!("({mag})"));
                } else {
                    out.push_str(&mag);
                }
            } else if mag == "1" {
                out.push_str(&self.render_word(w));
            } else if needs_parens {
                out.push_str(&alloc::format!("({mag}) {}", self.render_word(w)));
            } else {
                out.push_str(&alloc::format!("{mag} {}", self.render_word(w)));
            }
        }
        out
    }
}

/// Termination order: length first, then lexicographic on order indices.
pub fn word_lt(a: &Word, b: &Word) -> bool {
    (a.len(), a.as_slice()) < (b.len(), b.as_slice())
}

fn sort_key(w: &Word) -> (usize, Word) {
    (w.len(), w.clone())
}

/// Noncommutative polynomial: exact scalar combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, QScalar>,
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{w:?}")?;
        }
        Ok(())
    }
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Vec::new())
    }

    pub fn scalar(c: QScalar) -> Self {
        let mut p = NCPoly::zero();
        p.insert_add(Vec::new(), c);
        p
    }

    pub fn gen(g: u8) -> Self {
        Self::from_word(alloc::vec![g])
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, QScalar::one());
        NCPoly { terms }
    }

    pub fn from_term(w: Word, c: QScalar) -> Self {
        let mut p = NCPoly::zero();
        p.insert_add(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Largest word in the termination order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().max_by(|a, b| sort_key(a).cmp(&sort_key(b)))
    }

    pub fn insert_add(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert_add(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Noncommutative product: concatenates words.
    pub fn ncmul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.insert_add(w, c1 * c2);
            }
        }
        out
    }

    /// Commutator `self·o - o·self`.
    pub fn commutator(&self, o: &NCPoly) -> NCPoly {
        self.ncmul(o).sub(&o.ncmul(self))
    }

    /// Apply a generator index map (e.g. an alphabet embedding).
    pub fn remap(&self, map: &[u8]) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().map(|g| map[*g as usize]).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> NCPoly {
        match self.leading_word() {
            None => NCPoly::zero(),
            Some(w) => {
                let c = self.terms.get(w).cloned().expect("leading term");
                self.scale(&c.inv().expect("nonzero leading coefficient"))
            }
        }
    }
}

impl ExprValue for NCPoly {
    fn from_rational(r: BigRational) -> Self {
        NCPoly::scalar(QScalar::from_rational(r))
    }
    fn add(&self, o: &Self) -> Self {
        NCPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        NCPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.ncmul(o)
    }
    fn div(&self, o: &Self) -> Result<Self, ParseError> {
        // division only by scalars
        if o.terms.len() == 1 {
            if let Some(c) = o.terms.get(&Vec::new()) {
                let ci = c
                    .inv()
                    .map_err(|e| ParseError::DivisionError(alloc::format!("{e}")))?;
                return Ok(self.scale(&ci));
            }
        }
        Err(ParseError::DivisionError(
            "noncommutative division needs a scalar divisor".into(),
        ))
    }
    fn pow(&self, num: i64, den: i64) -> Result<Self, ParseError> {
        if den == 2 {
            if self.terms.len() == 1 {
                if let Some(c) = self.terms.get(&Vec::new()) {
                    return Ok(NCPoly::scalar(ExprValue::pow(c, num, den)?));
                }
            }
            return Err(ParseError::BadExponent(alloc::format!("{num}/{den}")));
        }
        if num < 0 {
            // negative powers only for scalars
            if self.terms.len() == 1 {
                if let Some(c) = self.terms.get(&Vec::new()) {
                    return Ok(NCPoly::scalar(ExprValue::pow(c, num, 1)?));
                }
            }
            return Err(ParseError::BadExponent(alloc::format!("{num}")));
        }
        let mut acc = NCPoly::one();
        for _ in 0..num {
            acc = acc.ncmul(self);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Rewrite system
// ---------------------------------------------------------------------------

/// Oriented rewrite rules keyed by adjacent generator pairs, closed over one
/// alphabet.
#[derive(Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: BTreeMap<(u8, u8), NCPoly>,
}

/// Default fuel for normal ordering: generous but halts broken systems.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Per-word revisit cap inside the overlap check; valid systems pop each
/// word once, so revisits signal an order violation.
const REVISIT_LIMIT: u32 = 64;

impl RewriteSystem {
    /// Build from explicit pair rules, validating the termination order.
    pub fn new(alphabet: Alphabet, rules: Vec<((u8, u8), NCPoly)>) -> Result<Self, NcError> {
        let mut sys = RewriteSystem { alphabet, rules: BTreeMap::new() };
        for (pair, rhs) in rules {
            sys.add_rule(pair, rhs)?;
        }
        Ok(sys)
    }

    /// Build without order validation (for deliberately broken systems).
    pub fn new_unchecked(alphabet: Alphabet, rules: Vec<((u8, u8), NCPoly)>) -> Self {
        RewriteSystem {
            alphabet,
            rules: rules.into_iter().collect(),
        }
    }

    fn add_rule(&mut self, pair: (u8, u8), rhs: NCPoly) -> Result<(), NcError> {
        let lhs_word: Word = alloc::vec![pair.0, pair.1];
        for (w, _) in rhs.terms() {
            if !word_lt(w, &lhs_word) {
                return Err(NcError::BadReplacement {
                    pair: self.alphabet.render_word(&lhs_word),
                    term: self.alphabet.render_word(w),
                });
            }
        }
        if let Some(existing) = self.rules.get(&pair) {
            if *existing == rhs {
                return Ok(());
            }
            return Err(NcError::ConflictingRule {
                pair: self.alphabet.render_word(&lhs_word),
            });
        }
        self.rules.insert(pair, rhs);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn rule(&self, pair: (u8, u8)) -> Option<&NCPoly> {
        self.rules.get(&pair)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(u8, u8), &NCPoly)> {
        self.rules.iter()
    }

    /// Leftmost reducible adjacent pair in `w`.
    fn first_redex(&self, w: &Word) -> Option<usize> {
        w.windows(2).position(|p| self.rules.contains_key(&(p[0], p[1])))
    }

    fn apply_at(&self, w: &Word, pos: usize) -> NCPoly {
        let rule = &self.rules[&(w[pos], w[pos + 1])];
        let mut out = NCPoly::zero();
        for (rw, rc) in rule.terms() {
            let mut nw = Word::with_capacity(w.len() - 2 + rw.len());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + 2..]);
            out.insert_add(nw, rc.clone());
        }
        out
    }

    /// Rewrite the leftmost reducible pair of each word until every word is
    /// in normal form, merging identical words as they appear.
    pub fn normal_order(&self, p: &NCPoly, fuel: u64) -> Result<NCPoly, NcError> {
        let mut fuel = fuel;
        let mut out = NCPoly::zero();
        // worklist popped largest-first so reductions only flow downward
        let mut work: BTreeMap<(usize, Word), QScalar> = p
            .terms()
            .map(|(w, c)| (sort_key(w), c.clone()))
            .collect();
        while let Some(((_, w), c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&w) {
                None => out.insert_add(w, c),
                Some(pos) => {
                    if fuel == 0 {
                        return Err(NcError::NonTermination {
                            word: self.alphabet.render_word(&w),
                        });
                    }
                    fuel -= 1;
                    for (nw, nc) in self.apply_at(&w, pos).terms() {
                        let key = sort_key(nw);
                        let entry = work.entry(key).or_insert_with(QScalar::zero);
                        *entry = &*entry + &(&c * nc);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal-order `z·g - g·z` against each listed generator; an all-zero
    /// result certifies centrality of `z` within the span checked.
    pub fn commutant_residual(
        &self,
        z: &NCPoly,
        gens: &[u8],
        fuel: u64,
    ) -> Result<Vec<NCPoly>, NcError> {
        gens.iter()
            .map(|g| self.normal_order(&z.commutator(&NCPoly::gen(*g)), fuel))
            .collect()
    }

    /// Reduce `start`, accounting separately for returns of the original
    /// word `w0`. Returns `(alpha, residual)` with
    /// `w0 -> alpha·w0 + residual` and the residual fully reduced.
    fn reduce_tracking(&self, w0: &Word, start: &NCPoly) -> Result<(QScalar, NCPoly), NcError> {
        let mut alpha = QScalar::zero();
        let mut out = NCPoly::zero();
        let mut visits: BTreeMap<Word, u32> = BTreeMap::new();
        let mut work: BTreeMap<(usize, Word), QScalar> = start
            .terms()
            .map(|(w, c)| (sort_key(w), c.clone()))
            .collect();
        while let Some(((_, w), c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            if w == *w0 {
                alpha = &alpha + &c;
                continue;
            }
            match self.first_redex(&w) {
                None => out.insert_add(w, c),
                Some(pos) => {
                    let count = visits.entry(w.clone()).or_insert(0);
                    *count += 1;
                    if *count > REVISIT_LIMIT {
                        return Err(NcError::NonTermination {
                            word: self.alphabet.render_word(&w),
                        });
                    }
                    for (nw, nc) in self.apply_at(&w, pos).terms() {
                        let key = sort_key(nw);
                        let entry = work.entry(key).or_insert_with(QScalar::zero);
                        *entry = &*entry + &(&c * nc);
                    }
                }
            }
        }
        Ok((alpha, out))
    }
}

/// One failed degree-3 ambiguity.
#[derive(Clone)]
pub struct PbwFailure {
    /// The ambiguous word, rendered.
    pub word: String,
    /// What went wrong.
    pub kind: PbwFailureKind,
    /// A polynomial forced to vanish among normal words (monic), when one
    /// exists.
    pub witness: Option<NCPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwFailureKind {
    /// Left-first and right-first normal forms differ.
    Mismatch,
    /// Reduction returned to the start word with coefficient 1 and a nonzero
    /// remainder: the remainder is a forced relation among normal words.
    InducedRelation,
    /// Reduction does not terminate.
    NonTerminating,
}

impl fmt::Display for PbwFailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwFailureKind::Mismatch => write!(f, "normal forms differ"),
            PbwFailureKind::InducedRelation => write!(f, "forced relation among normal words"),
            PbwFailureKind::NonTerminating => write!(f, "reduction does not terminate"),
        }
    }
}

impl RewriteSystem {
    /// Diamond-lemma check on every length-3 word with a rewritable adjacent
    /// pair: words where both pairs are rewritable are reduced left-first and
    /// right-first to normal form and every disagreement is reported; words
    /// with a single rewritable pair are still reduced with self-return
    /// tracking, which is how an order-violating system betrays itself (the
    /// start word reappears and forces a relation among normal words). An
    /// empty result certifies confluence (and with it the
    /// Poincaré–Birkhoff–Witt property) for quadratic-plus-lower systems.
    pub fn pbw_overlap_check(&self) -> Vec<PbwFailure> {
        let mut failures = Vec::new();
        for c in self.alphabet.generators() {
            for b in self.alphabet.generators() {
                for a in self.alphabet.generators() {
                    let left_redex = self.rules.contains_key(&(c, b));
                    let right_redex = self.rules.contains_key(&(b, a));
                    if !left_redex && !right_redex {
                        continue;
                    }
                    let w0: Word = alloc::vec![c, b, a];
                    if let Some(fail) = self.check_overlap(&w0, left_redex, right_redex) {
                        failures.push(fail);
                    }
                }
            }
        }
        failures
    }

    fn check_overlap(&self, w0: &Word, left_redex: bool, right_redex: bool) -> Option<PbwFailure> {
        let word = self.alphabet.render_word(w0);
        let mut sides = Vec::new();
        if left_redex {
            sides.push(self.reduce_tracking(w0, &self.apply_at(w0, 0)));
        }
        if right_redex {
            sides.push(self.reduce_tracking(w0, &self.apply_at(w0, 1)));
        }
        let mut nfs: Vec<NCPoly> = Vec::new();
        for side in sides {
            match side {
                Err(_) => {
                    return Some(PbwFailure {
                        word,
                        kind: PbwFailureKind::NonTerminating,
                        witness: None,
                    });
                }
                Ok((alpha, residual)) => {
                    if alpha.is_one() {
                        if residual.is_zero() {
                            // vacuous w0 = w0: no information from this side
                            continue;
                        }
                        return Some(PbwFailure {
                            word,
                            kind: PbwFailureKind::InducedRelation,
                            witness: Some(residual.monic()),
                        });
                    }
                    let scale = (&QScalar::one() - &alpha).inv().expect("alpha != 1 here");
                    nfs.push(residual.scale(&scale));
                }
            }
        }
        if nfs.len() == 2 && nfs[0] != nfs[1] {
            return Some(PbwFailure {
                word,
                kind: PbwFailureKind::Mismatch,
                witness: Some(nfs[0].sub(&nfs[1]).monic()),
            });
        }
        None
    }
}

impl RewriteSystem {
    /// Certify that `e` vanishes in the localization where the abstract
    /// generator `inv_gen` is the inverse of the polynomial `unit_poly`.
    ///
    /// `e` normal-orders to `Σ_k inv_gen^k · P_k` (the scaling rules collect
    /// every `inv_gen` to the left); multiplying through by `unit_poly^K`
    /// with `K = max k` clears the inverses, so `e = 0` there iff
    /// `Σ_k unit_poly^(K-k) · P_k` normal-orders to zero in the plain
    /// algebra. Returns that final residual.
    pub fn residual_modulo_unit(
        &self,
        inv_gen: u8,
        unit_poly: &NCPoly,
        e: &NCPoly,
        fuel: u64,
    ) -> Result<NCPoly, NcError> {
        let e = self.normal_order(e, fuel)?;
        let mut classes: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (word, c) in e.terms() {
            let k = word.iter().take_while(|g| **g == inv_gen).count();
            debug_assert!(
                word[k..].iter().all(|g| *g != inv_gen),
                "inverses must be collected leftmost by the scaling rules"
            );
            classes
                .entry(k)
                .or_insert_with(NCPoly::zero)
                .insert_add(word[k..].to_vec(), c.clone());
        }
        let kmax = classes.keys().copied().max().unwrap_or(0);
        let mut total = NCPoly::zero();
        for (k, p) in classes {
            let mut lifted = p;
            for _ in 0..(kmax - k) {
                lifted = unit_poly.ncmul(&lifted);
            }
            total = total.add(&lifted);
        }
        self.normal_order(&total, fuel)
    }
}

/// Compile relation equalities (`lhs - rhs`, asserted zero) into oriented
/// rules.
///
/// The relations are first brought to reduced echelon form by exact linear
/// elimination with pivots on the largest word of each row (so coupled sets
/// such as the RTT relations or the mixed conjugate-plane relations solve
/// jointly); each pivot must then be an adjacent pair, which becomes the
/// rule's left-hand side. Dependent relations eliminate to zero and are
/// dropped; a pivot of length other than two is not orientable.
pub fn system_from_pairs(
    alphabet: Alphabet,
    relations: &[NCPoly],
) -> Result<RewriteSystem, NcError> {
    // forward elimination: pivot on leading words
    let mut pivots: BTreeMap<(usize, Word), NCPoly> = BTreeMap::new();
    for rel in relations {
        let mut row = rel.clone();
        loop {
            let lead = match row.leading_word() {
                None => break,
                Some(w) => w.clone(),
            };
            match pivots.get(&sort_key(&lead)) {
                None => {
                    let c = row.coeff(&lead);
                    pivots_insert(&mut pivots, lead, row.scale(&c.inv().expect("nonzero")));
                    break;
                }
                Some(p) => {
                    let c = row.coeff(&lead);
                    row = row.sub(&p.scale(&c));
                }
            }
        }
    }
    // back substitution: clear every pivot word from every other row's tail
    let keys: Vec<(usize, Word)> = pivots.keys().cloned().collect();
    for key in &keys {
        let mut row = pivots.get(key).expect("pivot").clone();
        loop {
            let mut changed = false;
            let words: Vec<Word> = row.terms().map(|(w, _)| w.clone()).collect();
            for w in words {
                if w == key.1 {
                    continue;
                }
                if let Some(p) = pivots.get(&sort_key(&w)) {
                    let c = row.coeff(&w);
                    if !c.is_zero() {
                        row = row.sub(&p.scale(&c));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        pivots.insert(key.clone(), row);
    }
    // orient: pivot pair -> minus tail
    let mut sys = RewriteSystem { alphabet, rules: BTreeMap::new() };
    for ((_, lead), row) in pivots {
        if lead.len() != 2 {
            return Err(NcError::NonOrientable {
                term: sys.alphabet.render_word(&lead),
            });
        }
        if lead[0] <= lead[1] {
            // a pivot on an already-ordered pair means the relations
            // over-determine the ordered monomials (e.g. one pair related
            // twice with different coefficients)
            return Err(NcError::ConflictingRule {
                pair: sys.alphabet.render_word(&lead),
            });
        }
        let mut rest = row;
        rest.insert_add(lead.clone(), -&QScalar::one());
        sys.add_rule((lead[0], lead[1]), rest.neg())?;
    }
    Ok(sys)
}

fn pivots_insert(
    pivots: &mut BTreeMap<(usize, Word), NCPoly>,
    lead: Word,
    row: NCPoly,
) {
    pivots.insert(sort_key(&lead), row);
}

#[cfg(test)]
mod tests;
