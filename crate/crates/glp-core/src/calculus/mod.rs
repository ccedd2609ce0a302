//! Hilbert-style proof objects and their checker.
//!
//! A proof is a numbered list of lines, each carrying a formula and a
//! justification: an axiom-scheme instance (K, Loeb, monotonicity, negative
//! introspection), a propositional tautology over boxed atoms, Modus Ponens,
//! or Necessitation. The checker trusts nothing: every schema match, rule
//! shape and line reference is re-verified, and the goal must match the last
//! line.
//!
//! The checker compares formulas modulo [`checker_norm`]: diamonds expand to
//! negated boxes (the one documented expansion direction), double negations
//! and T-conjuncts collapse. All of these are definitional or propositional
//! equivalences, so a proof accepted here elaborates into a strict Hilbert
//! derivation by inserting tautology steps.
//!
//! Propositional steps are justified by a single `TAUT` line decided by
//! truth-table evaluation over "boxed atoms": maximal box subformulas of the
//! normal form are treated as opaque atoms. This keeps generated proofs small
//! and is sound; it is deliberately not complete for modal validity.

mod builder;
mod derive;
mod format;

pub use builder::ProofBuilder;
pub use derive::{certify_less, derive_inclusion, derive_inclusion_dia};
pub use format::{parse_proof, print_proof};

pub(crate) use derive::{inclusion_line, inclusion_to_zero_line};

use crate::syntax::{checker_norm, norm_eq, Formula, ModalIndex};
use thiserror::Error;

/// Why a proof line holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Justification {
    AxiomK(ModalIndex),
    AxiomLoeb(ModalIndex),
    /// `[lo]A -> [hi]A` or its dual `<hi>A -> <lo>A`, for lo <= hi.
    AxiomMono(ModalIndex, ModalIndex),
    /// `<lo>A -> [hi]<lo>A` or its dual `<hi>[lo]A -> [lo]A`, for lo < hi.
    AxiomNegIntro(ModalIndex, ModalIndex),
    PropTaut,
    /// `ModusPonens(i, j)`: line i proves `A`, line j proves `A -> B`.
    ModusPonens(usize, usize),
    /// `Necessitation(i, a)`: line i proves `A`, this line is `[a]A`.
    Necessitation(usize, ModalIndex),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A derivation of `goal`; line numbers are 1-based as in the text format.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
    pub goal: Formula,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}: {reason}")]
pub struct CheckError {
    /// 1-based offending line; 0 when the proof as a whole is malformed.
    pub line: usize,
    pub reason: String,
}

impl CheckError {
    fn at(line: usize, reason: impl Into<String>) -> Self {
        CheckError {
            line,
            reason: reason.into(),
        }
    }
}

/// Atom cap for the tautology decider; beyond it the answer is a conservative
/// "not a tautology". Generated proofs stay far below this.
const MAX_TAUT_ATOMS: usize = 16;

/// Decides whether `f` is a propositional tautology over boxed atoms.
pub fn is_taut(f: &Formula) -> bool {
    let g = checker_norm(f);
    let mut atoms = Vec::new();
    collect_atoms(&g, &mut atoms);
    if atoms.len() > MAX_TAUT_ATOMS {
        return false;
    }
    let mut assignment = Vec::with_capacity(atoms.len());
    holds_under_all(&g, &atoms, &mut assignment)
}

fn collect_atoms(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Box_(..) | Formula::Dia(..) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        Formula::Neg(a) => collect_atoms(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
    }
}

fn holds_under_all(f: &Formula, atoms: &[Formula], assignment: &mut Vec<bool>) -> bool {
    if assignment.len() == atoms.len() {
        return eval(f, atoms, assignment);
    }
    assignment.push(true);
    let t = holds_under_all(f, atoms, assignment);
    assignment.pop();
    if !t {
        return false;
    }
    assignment.push(false);
    let u = holds_under_all(f, atoms, assignment);
    assignment.pop();
    u
}

fn eval(f: &Formula, atoms: &[Formula], assignment: &[bool]) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Box_(..) | Formula::Dia(..) => {
            let i = atoms.iter().position(|a| a == f).unwrap();
            assignment[i]
        }
        Formula::Neg(a) => !eval(a, atoms, assignment),
        Formula::And(a, b) => eval(a, atoms, assignment) && eval(b, atoms, assignment),
        Formula::Or(a, b) => eval(a, atoms, assignment) || eval(b, atoms, assignment),
        Formula::Imp(a, b) => !eval(a, atoms, assignment) || eval(b, atoms, assignment),
    }
}

/// All justifications under which `f` is an axiom instance, dual forms
/// included, plus `PropTaut` when the propositional decider accepts.
/// Matching happens on the checker normal form, so diamond sugar never
/// changes the answer.
pub fn match_axiom(f: &Formula) -> Vec<Justification> {
    let g = checker_norm(f);
    let mut out = Vec::new();
    if let Formula::Imp(lhs, rhs) = &g {
        // K: [a](A -> B) -> ([a]A -> [a]B)
        if let (Formula::Box_(a1, body), Formula::Imp(x, y)) = (lhs.as_ref(), rhs.as_ref()) {
            if let (Formula::Box_(a2, l), Formula::Box_(a3, r)) = (x.as_ref(), y.as_ref()) {
                if a1 == a2 && a2 == a3 {
                    if let Formula::Imp(bl, br) = body.as_ref() {
                        if bl == l && br == r {
                            out.push(Justification::AxiomK(a1.clone()));
                        }
                    }
                }
            }
        }
        // Loeb: [a]([a]A -> A) -> [a]A
        if let (Formula::Box_(a1, body), Formula::Box_(a2, target)) = (lhs.as_ref(), rhs.as_ref()) {
            if a1 == a2 {
                if let Formula::Imp(bl, br) = body.as_ref() {
                    if let Formula::Box_(a3, inner) = bl.as_ref() {
                        if a3 == a1 && inner == target && br == target {
                            out.push(Justification::AxiomLoeb(a1.clone()));
                        }
                    }
                }
            }
        }
        // Mono, primal: [lo]A -> [hi]A
        if let (Formula::Box_(lo, x), Formula::Box_(hi, y)) = (lhs.as_ref(), rhs.as_ref()) {
            if x == y && lo.0 <= hi.0 {
                out.push(Justification::AxiomMono(lo.clone(), hi.clone()));
            }
        }
        // Mono, dual: ~[hi]A -> ~[lo]A  (i.e. <hi>A' -> <lo>A')
        if let (Formula::Neg(nl), Formula::Neg(nr)) = (lhs.as_ref(), rhs.as_ref()) {
            if let (Formula::Box_(hi, x), Formula::Box_(lo, y)) = (nl.as_ref(), nr.as_ref()) {
                if x == y && lo.0 <= hi.0 {
                    out.push(Justification::AxiomMono(lo.clone(), hi.clone()));
                }
            }
        }
        // NegIntro, primal: <lo>A -> [hi]<lo>A, with <lo>A normed to ~[lo]~A
        if let Formula::Box_(hi, boxed) = rhs.as_ref() {
            if boxed.as_ref() == lhs.as_ref() {
                if let Formula::Neg(n) = lhs.as_ref() {
                    if let Formula::Box_(lo, _) = n.as_ref() {
                        if lo.0 < hi.0 {
                            out.push(Justification::AxiomNegIntro(lo.clone(), hi.clone()));
                        }
                    }
                }
            }
        }
        // NegIntro, dual: <hi>[lo]A -> [lo]A, normed ~[hi]~[lo]A -> [lo]A
        if let (Formula::Neg(n), Formula::Box_(lo2, x)) = (lhs.as_ref(), rhs.as_ref()) {
            if let Formula::Box_(hi, inner) = n.as_ref() {
                if let Formula::Neg(m) = inner.as_ref() {
                    if let Formula::Box_(lo, y) = m.as_ref() {
                        if lo == lo2 && x == y && lo.0 < hi.0 {
                            out.push(Justification::AxiomNegIntro(lo.clone(), hi.clone()));
                        }
                    }
                }
            }
        }
    }
    if is_taut(&g) {
        out.push(Justification::PropTaut);
    }
    out
}

/// Verifies every line and the goal. On failure reports the first offending
/// line and the reason.
pub fn check_proof(p: &Proof) -> Result<(), CheckError> {
    if p.lines.is_empty() {
        return Err(CheckError::at(0, "proof has no lines".to_string()));
    }
    let normed: Vec<Formula> = p.lines.iter().map(|l| checker_norm(&l.formula)).collect();
    for (idx, line) in p.lines.iter().enumerate() {
        let no = idx + 1;
        match &line.justification {
            Justification::AxiomK(_)
            | Justification::AxiomLoeb(_)
            | Justification::AxiomMono(..)
            | Justification::AxiomNegIntro(..)
            | Justification::PropTaut => {
                if let Justification::AxiomMono(lo, hi) = &line.justification {
                    if lo.0 > hi.0 {
                        return Err(CheckError::at(no, "MONO requires lo <= hi"));
                    }
                }
                if let Justification::AxiomNegIntro(lo, hi) = &line.justification {
                    if lo.0 >= hi.0 {
                        return Err(CheckError::at(no, "NEGINTRO requires lo < hi"));
                    }
                }
                if !match_axiom(&line.formula).contains(&line.justification) {
                    return Err(CheckError::at(
                        no,
                        format!(
                            "formula is not an instance of {}",
                            format::print_justification(&line.justification)
                        ),
                    ));
                }
            }
            Justification::ModusPonens(i, j) => {
                let (i, j) = (*i, *j);
                if i == 0 || j == 0 || i >= no || j >= no {
                    return Err(CheckError::at(
                        no,
                        "MP reference does not point strictly backwards",
                    ));
                }
                let Formula::Imp(ante, cons) = &normed[j - 1] else {
                    return Err(CheckError::at(
                        no,
                        format!("MP: line {j} is not an implication"),
                    ));
                };
                if ante.as_ref() != &normed[i - 1] {
                    return Err(CheckError::at(
                        no,
                        format!("MP: line {i} does not match the antecedent of line {j}"),
                    ));
                }
                if cons.as_ref() != &normed[idx] {
                    return Err(CheckError::at(
                        no,
                        "MP: conclusion does not match".to_string(),
                    ));
                }
            }
            Justification::Necessitation(i, a) => {
                let i = *i;
                if i == 0 || i >= no {
                    return Err(CheckError::at(
                        no,
                        "NEC reference does not point strictly backwards",
                    ));
                }
                let expected = Formula::boxed(a.clone(), p.lines[i - 1].formula.clone());
                if checker_norm(&expected) != normed[idx] {
                    return Err(CheckError::at(
                        no,
                        format!("NEC: formula is not [{a}] of line {i}"),
                    ));
                }
            }
        }
    }
    if !norm_eq(&p.goal, &p.lines.last().unwrap().formula) {
        return Err(CheckError::at(
            p.lines.len(),
            "goal does not match the last line".to_string(),
        ));
    }
    Ok(())
}
