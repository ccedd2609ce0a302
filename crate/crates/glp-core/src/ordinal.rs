//! Ordinal arithmetic below epsilon_0 in Cantor normal form.
//!
//! An ordinal is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals of the same kind) and positive
//! natural coefficients. The empty sum is 0. Coefficients are arbitrary
//! precision so nothing here ever depends on machine-word magnitude.
//!
//! Only the operations the worm assignment needs are provided: comparison,
//! (non-commutative) addition, `w^(.)`, and zero/successor/limit case
//! analysis. Multiplication is deliberately absent.

use crate::text::{Cursor, ParseError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Ordinal below epsilon_0 in Cantor normal form.
///
/// Invariant: exponents strictly decreasing, all coefficients >= 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CnfOrdinal {
    terms: Vec<(CnfOrdinal, BigUint)>,
}

/// Case analysis of an ordinal: zero, successor (with predecessor), or limit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrdKind {
    Zero,
    Successor(CnfOrdinal),
    Limit,
}

/// Either a bound strictly below epsilon_0, or epsilon_0 itself as the
/// supremum of an unbounded schema. Epsilon_0 is never an element of
/// [`CnfOrdinal`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrdinalBound {
    Below(CnfOrdinal),
    EpsilonZero,
}

impl CnfOrdinal {
    pub fn zero() -> Self {
        CnfOrdinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        Self::from_biguint(BigUint::from(n))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        if n.is_zero() {
            Self::zero()
        } else {
            CnfOrdinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::one().omega_power()
    }

    /// `w^self`, the single-term ordinal with this ordinal as exponent.
    pub fn omega_power(&self) -> Self {
        CnfOrdinal {
            terms: vec![(self.clone(), BigUint::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The nonzero natural number this ordinal denotes, if any.
    pub fn as_nat(&self) -> Option<&BigUint> {
        match self.terms.as_slice() {
            [(e, c)] if e.is_zero() => Some(c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.is_zero() || self.as_nat().is_some()
    }

    /// Machine-word view of a finite ordinal. `None` if transfinite or huge.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_zero() {
            return Some(0);
        }
        self.as_nat().and_then(|n| u64::try_from(n).ok())
    }

    /// Strictly-decreasing (exponent, coefficient) view.
    pub fn terms(&self) -> &[(CnfOrdinal, BigUint)] {
        &self.terms
    }

    /// Builds an ordinal from an explicit term list, or `None` if it
    /// violates the normal-form invariant.
    pub fn try_from_terms(terms: Vec<(CnfOrdinal, BigUint)>) -> Option<Self> {
        let candidate = CnfOrdinal { terms };
        candidate.is_valid_cnf().then_some(candidate)
    }

    /// Checks the CNF invariant: strict exponent descent, positive coefficients,
    /// recursively valid exponents. Run over every produced value in tests.
    pub fn is_valid_cnf(&self) -> bool {
        for window in self.terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return false;
            }
        }
        self.terms
            .iter()
            .all(|(e, c)| !c.is_zero() && e.is_valid_cnf())
    }

    /// Standard non-commutative ordinal addition: terms of `self` strictly
    /// below the leading term of `other` are absorbed.
    pub fn plus(&self, other: &CnfOrdinal) -> CnfOrdinal {
        let Some((lead, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(CnfOrdinal, BigUint)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e > lead)
            .cloned()
            .collect();
        let mut rest = other.terms.iter();
        // merge equal leading exponents by coefficient addition
        match self.terms.get(terms.len()) {
            Some((e, c)) if e == lead => {
                terms.push((lead.clone(), c + lead_coeff));
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        CnfOrdinal { terms }
    }

    pub fn successor(&self) -> CnfOrdinal {
        self.plus(&Self::one())
    }

    pub fn classify(&self) -> OrdKind {
        match self.terms.last() {
            None => OrdKind::Zero,
            Some((e, _)) if e.is_zero() => {
                let (rest, _) = self.peel_smallest().unwrap();
                OrdKind::Successor(rest)
            }
            Some(_) => OrdKind::Limit,
        }
    }

    /// Removes one copy of the smallest term: `a = rest + w^exp` with `w^exp`
    /// the least term of `a`. Returns `None` for zero.
    pub fn peel_smallest(&self) -> Option<(CnfOrdinal, CnfOrdinal)> {
        let (exp, coeff) = self.terms.last()?;
        let mut terms = self.terms.clone();
        if coeff.is_one() {
            terms.pop();
        } else {
            terms.last_mut().unwrap().1 -= BigUint::one();
        }
        Some((CnfOrdinal { terms }, exp.clone()))
    }

    /// Splits into the terms with exponent >= `threshold` and those below.
    /// `self == kept + dropped` with every dropped exponent < `threshold`.
    pub fn split_at_exponent(&self, threshold: &CnfOrdinal) -> (CnfOrdinal, CnfOrdinal) {
        let cut = self.terms.partition_point(|(e, _)| e >= threshold);
        (
            CnfOrdinal {
                terms: self.terms[..cut].to_vec(),
            },
            CnfOrdinal {
                terms: self.terms[cut..].to_vec(),
            },
        )
    }
}

impl PartialOrd for CnfOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CnfOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(&other.terms) {
            match e1.cmp(e2).then_with(|| c1.cmp(c2)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        // equal prefix: whoever has further (smaller) terms is larger
        self.terms.len().cmp(&other.terms.len())
    }
}

/// Total-order comparison, the `LT`/`EQ`/`GT` of the CLI.
pub fn ord_cmp(a: &CnfOrdinal, b: &CnfOrdinal) -> Ordering {
    a.cmp(b)
}

// --- text format -----------------------------------------------------------
//
// ord      := cnf-term ("+" cnf-term)*
// cnf-term := nat | "w" | "w^" ord-atom ("*" nat)?
// ord-atom := nat | "w" | "(" ord ")"
//
// Parsing normalizes: non-canonical sums like "1+w" are folded with `plus`,
// so the result is always valid CNF. Printing emits the canonical descending
// form; parse . print is the identity.

pub fn parse_ordinal(text: &str) -> Result<CnfOrdinal, ParseError> {
    let mut cur = Cursor::new(text);
    let ord = parse_ord(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(ord)
}

pub(crate) fn parse_ord(cur: &mut Cursor) -> Result<CnfOrdinal, ParseError> {
    let mut acc = parse_term(cur)?;
    while cur.eat(b'+') {
        let t = parse_term(cur)?;
        acc = acc.plus(&t);
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor) -> Result<CnfOrdinal, ParseError> {
    match cur.peek() {
        Some(b'w') => {
            cur.bump();
            if cur.eat(b'^') {
                let exp = parse_ord_atom(cur)?;
                let coeff = if cur.eat(b'*') {
                    cur.nat()?
                } else {
                    BigUint::one()
                };
                if coeff.is_zero() {
                    return Ok(CnfOrdinal::zero());
                }
                Ok(CnfOrdinal {
                    terms: vec![(exp, coeff)],
                })
            } else {
                Ok(CnfOrdinal::omega())
            }
        }
        Some(c) if c.is_ascii_digit() => Ok(CnfOrdinal::from_biguint(cur.nat()?)),
        Some(b'e') => Err(cur.error("'e0' is not an ordinal below epsilon_0")),
        _ => Err(cur.error("expected an ordinal term")),
    }
}

fn parse_ord_atom(cur: &mut Cursor) -> Result<CnfOrdinal, ParseError> {
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let ord = parse_ord(cur)?;
            cur.expect(b')', "')'")?;
            Ok(ord)
        }
        Some(b'w') => {
            cur.bump();
            Ok(CnfOrdinal::omega())
        }
        Some(c) if c.is_ascii_digit() => Ok(CnfOrdinal::from_biguint(cur.nat()?)),
        _ => Err(cur.error("expected an ordinal atom")),
    }
}

pub fn print_ordinal(a: &CnfOrdinal) -> String {
    a.to_string()
}

impl fmt::Display for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if exp.is_zero() {
                write!(f, "{coeff}")?;
            } else if exp == &CnfOrdinal::one() && coeff.is_one() {
                write!(f, "w")?;
            } else {
                write!(f, "w^")?;
                if exp.is_finite() && !exp.is_zero() {
                    write!(f, "{exp}")?;
                } else if exp == &CnfOrdinal::omega() {
                    write!(f, "w")?;
                } else {
                    write!(f, "({exp})")?;
                }
                if !coeff.is_one() {
                    write!(f, "*{coeff}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for OrdinalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalBound::Below(a) => write!(f, "{a}"),
            OrdinalBound::EpsilonZero => write!(f, "e0"),
        }
    }
}
