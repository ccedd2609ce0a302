//! Closed modal formulas of the polymodal provability logic and their text
//! format.
//!
//! The object language is the closed fragment: T, F, the propositional
//! connectives, and one box/diamond pair per ordinal index. There are no
//! propositional variables. `<a>A` is definitionally `~[a]~A`; the diamond is
//! stored as a first-class constructor because worms live in diamonds, and
//! whenever definitional equality matters (the proof checker) the expansion
//! runs in exactly one direction: diamonds expand to negated boxes, never the
//! reverse.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[" ord "]" unary | "<" ord ">" unary | atom
//! atom    := "T" | "F" | "(" formula ")"
//! ```
//!
//! with the ordinal grammar of [`crate::ordinal`] inside the brackets.
//! Printing uses exactly this grammar with minimal parentheses, so
//! parse . print is the identity.

use crate::ordinal::{parse_ord, CnfOrdinal};
use crate::text::{Cursor, ParseError};
use std::fmt;

/// The ordinal index of a modality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModalIndex(pub CnfOrdinal);

impl ModalIndex {
    pub fn nat(n: u64) -> Self {
        ModalIndex(CnfOrdinal::nat(n))
    }

    /// Natural-number view; decision procedures that are restricted to
    /// finite indices use this and reject `None`.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for ModalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A closed formula.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Top,
    Bottom,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box_(ModalIndex, Box<Formula>),
    Dia(ModalIndex, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)] // constructor, not negation of self
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn boxed(i: ModalIndex, f: Formula) -> Formula {
        Formula::Box_(i, Box::new(f))
    }
    pub fn dia(i: ModalIndex, f: Formula) -> Formula {
        Formula::Dia(i, Box::new(f))
    }
    pub fn dia_nat(n: u64, f: Formula) -> Formula {
        Formula::dia(ModalIndex::nat(n), f)
    }
    pub fn box_nat(n: u64, f: Formula) -> Formula {
        Formula::boxed(ModalIndex::nat(n), f)
    }
}

/// An iterated consistency statement `<a1>...<an>T`, read left to right.
/// The empty worm is T.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Worm(pub Vec<ModalIndex>);

impl Worm {
    pub fn top() -> Self {
        Worm(Vec::new())
    }

    pub fn from_nats(indices: &[u64]) -> Self {
        Worm(indices.iter().map(|&n| ModalIndex::nat(n)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The worm as a formula: nested diamonds ending in T.
    pub fn to_formula(&self) -> Formula {
        let mut f = Formula::Top;
        for idx in self.0.iter().rev() {
            f = Formula::dia(idx.clone(), f);
        }
        f
    }

    /// Natural-number indices, or `None` if any index is transfinite.
    pub fn nat_indices(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|i| i.to_u64()).collect()
    }
}

impl fmt::Display for Worm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

// --- normalization ----------------------------------------------------------

/// Rewrites `T & A -> A`, `A & T -> A`, `~~A -> A` bottom-up to a fixed point.
/// The result is propositionally equivalent to the input; diamonds are left
/// alone. Needed because the fundamental-sequence formulas carry T-conjuncts.
pub fn normalize_top(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Neg(a) => match normalize_top(a) {
            Formula::Neg(inner) => *inner,
            a => Formula::neg(a),
        },
        Formula::And(a, b) => match (normalize_top(a), normalize_top(b)) {
            (Formula::Top, b) => b,
            (a, Formula::Top) => a,
            (a, b) => Formula::and(a, b),
        },
        Formula::Or(a, b) => Formula::or(normalize_top(a), normalize_top(b)),
        Formula::Imp(a, b) => Formula::imp(normalize_top(a), normalize_top(b)),
        Formula::Box_(i, a) => Formula::boxed(i.clone(), normalize_top(a)),
        Formula::Dia(i, a) => Formula::dia(i.clone(), normalize_top(a)),
    }
}

/// The proof checker's normal form: diamonds expanded to `~[a]~`, then the
/// `normalize_top` collapses applied bottom-up. Two formulas are treated as
/// the same by the checker exactly when their normal forms are equal.
pub fn checker_norm(f: &Formula) -> Formula {
    fn neg(a: Formula) -> Formula {
        match a {
            Formula::Neg(inner) => *inner,
            a => Formula::neg(a),
        }
    }
    match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Neg(a) => neg(checker_norm(a)),
        Formula::And(a, b) => match (checker_norm(a), checker_norm(b)) {
            (Formula::Top, b) => b,
            (a, Formula::Top) => a,
            (a, b) => Formula::and(a, b),
        },
        Formula::Or(a, b) => Formula::or(checker_norm(a), checker_norm(b)),
        Formula::Imp(a, b) => Formula::imp(checker_norm(a), checker_norm(b)),
        Formula::Box_(i, a) => Formula::boxed(i.clone(), checker_norm(a)),
        Formula::Dia(i, a) => neg(Formula::boxed(i.clone(), neg(checker_norm(a)))),
    }
}

/// Equality modulo [`checker_norm`].
pub fn norm_eq(a: &Formula, b: &Formula) -> bool {
    checker_norm(a) == checker_norm(b)
}

/// Reads a worm out of `normalize_top(f)`: a nested diamond chain ending in
/// T. `None` for anything else; a box is not a diamond chain.
pub fn as_worm(f: &Formula) -> Option<Worm> {
    let mut indices = Vec::new();
    let mut cur = normalize_top(f);
    loop {
        match cur {
            Formula::Top => return Some(Worm(indices)),
            Formula::Dia(i, rest) => {
                indices.push(i);
                cur = *rest;
            }
            _ => return None,
        }
    }
}

// --- parsing ----------------------------------------------------------------

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text);
    let f = parse_imp(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(f)
}

fn parse_imp(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = parse_or(cur)?;
    if cur.eat_str("->") {
        let rhs = parse_imp(cur)?;
        Ok(Formula::imp(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = parse_and(cur)?;
    while cur.eat(b'|') {
        let rhs = parse_and(cur)?;
        acc = Formula::or(acc, rhs);
    }
    Ok(acc)
}

fn parse_and(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = parse_unary(cur)?;
    while cur.eat(b'&') {
        let rhs = parse_unary(cur)?;
        acc = Formula::and(acc, rhs);
    }
    Ok(acc)
}

fn parse_unary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    match cur.peek() {
        Some(b'~') => {
            cur.bump();
            Ok(Formula::neg(parse_unary(cur)?))
        }
        Some(b'[') => {
            cur.bump();
            let ord = parse_ord(cur)?;
            cur.expect(b']', "']'")?;
            Ok(Formula::boxed(ModalIndex(ord), parse_unary(cur)?))
        }
        Some(b'<') => {
            cur.bump();
            let ord = parse_ord(cur)?;
            cur.expect(b'>', "'>'")?;
            Ok(Formula::dia(ModalIndex(ord), parse_unary(cur)?))
        }
        Some(b'T') => {
            cur.bump();
            Ok(Formula::Top)
        }
        Some(b'F') => {
            cur.bump();
            Ok(Formula::Bottom)
        }
        Some(b'(') => {
            cur.bump();
            let f = parse_imp(cur)?;
            cur.expect(b')', "')'")?;
            Ok(f)
        }
        _ => Err(cur.error("expected a formula")),
    }
}

// --- printing ---------------------------------------------------------------

/// Binding strength, loosest first: imp < or < and < unary < atom.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Neg(..) | Formula::Box_(..) | Formula::Dia(..) => 3,
        Formula::Top | Formula::Bottom => 4,
    }
}

fn print_at(f: &Formula, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        print_at(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Top => out.push('T'),
        Formula::Bottom => out.push('F'),
        Formula::Neg(a) => {
            out.push('~');
            print_at(a, 3, out);
        }
        Formula::And(a, b) => {
            print_at(a, 2, out);
            out.push_str(" & ");
            print_at(b, 3, out);
        }
        Formula::Or(a, b) => {
            print_at(a, 1, out);
            out.push_str(" | ");
            print_at(b, 2, out);
        }
        Formula::Imp(a, b) => {
            print_at(a, 1, out);
            out.push_str(" -> ");
            print_at(b, 0, out);
        }
        Formula::Box_(i, a) => {
            out.push('[');
            out.push_str(&i.to_string());
            out.push(']');
            print_at(a, 3, out);
        }
        Formula::Dia(i, a) => {
            out.push('<');
            out.push_str(&i.to_string());
            out.push('>');
            print_at(a, 3, out);
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_at(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
