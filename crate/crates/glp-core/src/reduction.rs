//! Fundamental sequences, reflection-rule derivations, rule elimination, and
//! the collapse of the rule to a consistency axiom.
//!
//! The reflection rule over a side formula `phi` infers `<n>(psi & phi)` from
//! `psi`, with no complexity restriction on `psi`. Its strength is captured by
//! the fundamental-sequence formulas
//!
//! ```text
//! Q^0_n(phi)     = <n>phi
//! Q^{k+1}_n(phi) = <n>(phi & Q^k_n(phi))
//! ```
//!
//! [`eliminate_rule`] turns a derivation that uses the rule k times into a
//! checkable proof of `Q^k_n(phi) -> conclusion`; [`collapse_rule`] proves the
//! closure step `(<n>phi & psi) -> <n>(psi & phi)` that makes the rule
//! redundant once `psi` is stable at level n.

use crate::calculus::{inclusion_line, is_taut, Justification, ProofBuilder};
use crate::syntax::{norm_eq, normalize_top, parse_formula, print_formula, Formula, ModalIndex};
use crate::text::ParseError;
use std::fmt::Write as _;
use thiserror::Error;

/// `Q^k_n(phi)`, literally as defined.
pub fn q_formula(n: &ModalIndex, k: usize, phi: &Formula) -> Formula {
    let mut q = Formula::dia(n.clone(), phi.clone());
    for _ in 0..k {
        q = Formula::dia(n.clone(), Formula::and(phi.clone(), q));
    }
    q
}

/// `Q^k_n(phi)` with T-conjuncts collapsed.
pub fn q_formula_normalized(n: &ModalIndex, k: usize, phi: &Formula) -> Formula {
    normalize_top(&q_formula(n, k, phi))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("side condition violated: marker {marker} exceeds rule level {level}")]
    IndexOrder {
        marker: ModalIndex,
        level: ModalIndex,
    },
    #[error("stability of the side formula at level {level} not certified")]
    NotStable { level: ModalIndex },
}

/// Syntactic certificate that `psi -> [n]psi` is derivable. Sound, not
/// complete: T, F, diamonds `<m>chi` with m < n, and conjunctions or
/// disjunctions of stable formulas are accepted; everything else (boxes
/// included) is conservatively rejected.
pub fn n_stable(psi: &Formula, n: &ModalIndex) -> bool {
    let mut pb = ProofBuilder::new();
    stability_line(&mut pb, psi, n).is_some()
}

/// Builds the line `psi -> [n]psi` when the stable fragment covers `psi`.
fn stability_line(pb: &mut ProofBuilder, psi: &Formula, n: &ModalIndex) -> Option<usize> {
    match psi {
        Formula::Top => {
            let top = pb.taut(Formula::Top);
            let boxed = pb.nec(top, n.clone());
            let weaken = pb.taut(Formula::imp(
                Formula::boxed(n.clone(), Formula::Top),
                Formula::imp(Formula::Top, Formula::boxed(n.clone(), Formula::Top)),
            ));
            Some(pb.mp(boxed, weaken))
        }
        Formula::Bottom => Some(pb.taut(Formula::imp(
            Formula::Bottom,
            Formula::boxed(n.clone(), Formula::Bottom),
        ))),
        Formula::Dia(m, inner) if m.0 < n.0 => Some(pb.neg_intro(m, n, inner)),
        Formula::And(a, b) => {
            let la = stability_line(pb, a, n)?;
            let lb = stability_line(pb, b, n)?;
            let both = Formula::and((**a).clone(), (**b).clone());
            let t = pb.taut(Formula::imp(
                (**a).clone(),
                Formula::imp((**b).clone(), both.clone()),
            ));
            let m1 = pb.box_mono(t, n); // [n]a -> [n](b -> a & b)
            let k = pb.axiom(
                Formula::imp(
                    Formula::boxed(n.clone(), Formula::imp((**b).clone(), both.clone())),
                    Formula::imp(
                        Formula::boxed(n.clone(), (**b).clone()),
                        Formula::boxed(n.clone(), both.clone()),
                    ),
                ),
                Justification::AxiomK(n.clone()),
            );
            let curried = pb.chain(m1, k); // [n]a -> ([n]b -> [n](a & b))
            let target = Formula::imp(both.clone(), Formula::boxed(n.clone(), both.clone()));
            let la_f = pb.formula(la).clone();
            let lb_f = pb.formula(lb).clone();
            let cu_f = pb.formula(curried).clone();
            let t2 = pb.taut(Formula::imp(
                la_f,
                Formula::imp(lb_f, Formula::imp(cu_f, target)),
            ));
            let s1 = pb.mp(la, t2);
            let s2 = pb.mp(lb, s1);
            Some(pb.mp(curried, s2))
        }
        Formula::Or(a, b) => {
            let la = stability_line(pb, a, n)?;
            let lb = stability_line(pb, b, n)?;
            let either = Formula::or((**a).clone(), (**b).clone());
            let ta = pb.taut(Formula::imp((**a).clone(), either.clone()));
            let ia = pb.box_mono(ta, n); // [n]a -> [n](a | b)
            let tb = pb.taut(Formula::imp((**b).clone(), either.clone()));
            let ib = pb.box_mono(tb, n);
            let target = Formula::imp(either.clone(), Formula::boxed(n.clone(), either.clone()));
            let la_f = pb.formula(la).clone();
            let lb_f = pb.formula(lb).clone();
            let ia_f = pb.formula(ia).clone();
            let ib_f = pb.formula(ib).clone();
            let t2 = pb.taut(Formula::imp(
                la_f,
                Formula::imp(lb_f, Formula::imp(ia_f, Formula::imp(ib_f, target))),
            ));
            let s1 = pb.mp(la, t2);
            let s2 = pb.mp(lb, s1);
            let s3 = pb.mp(ia, s2);
            Some(pb.mp(ib, s3))
        }
        _ => None,
    }
}

/// The closure step of the rule-collapse lemma: a checked proof of
/// `(<n>phi & psi) -> <n>(psi & phi)`, for `psi` certified stable at level
/// `n`. The `marker` argument records the complexity-class parameter the
/// lemma makes redundant; it must not exceed `n`.
pub fn collapse_rule(
    n: &ModalIndex,
    marker: &ModalIndex,
    phi: &Formula,
    psi: &Formula,
) -> Result<crate::calculus::Proof, ReductionError> {
    if marker.0 > n.0 {
        return Err(ReductionError::IndexOrder {
            marker: marker.clone(),
            level: n.clone(),
        });
    }
    let mut pb = ProofBuilder::new();
    let stable = stability_line(&mut pb, psi, n)
        .ok_or_else(|| ReductionError::NotStable { level: n.clone() })?;
    let collect = pb.dia_collect(n, phi, psi); // <n>phi & [n]psi -> <n>(phi & psi)
    let antecedent = Formula::and(Formula::dia(n.clone(), phi.clone()), psi.clone());
    let stable_f = pb.formula(stable).clone();
    let t = pb.taut(Formula::imp(
        stable_f,
        Formula::imp(
            antecedent.clone(),
            Formula::and(
                Formula::dia(n.clone(), phi.clone()),
                Formula::boxed(n.clone(), psi.clone()),
            ),
        ),
    ));
    let s = pb.mp(stable, t);
    let s2 = pb.chain(s, collect);
    let swap = pb.taut(Formula::imp(
        Formula::and(phi.clone(), psi.clone()),
        Formula::and(psi.clone(), phi.clone()),
    ));
    let dm = pb.dia_mono(swap, n);
    let last = pb.chain(s2, dm);
    Ok(pb.proof_of(last))
}

/// The finite prefix `[<m>Q^k_n(phi) | k = 0..=k_max]` of the equi-consistent
/// child family of `<m><n+1>phi`; requires m <= n. Witnesses come from
/// [`equi_child_witness`].
pub fn equi_children(
    m: &ModalIndex,
    n: &ModalIndex,
    phi: &Formula,
    k_max: usize,
) -> Result<Vec<Formula>, ReductionError> {
    if m.0 > n.0 {
        return Err(ReductionError::IndexOrder {
            marker: m.clone(),
            level: n.clone(),
        });
    }
    Ok((0..=k_max)
        .map(|k| Formula::dia(m.clone(), q_formula(n, k, phi)))
        .collect())
}

/// Checked proof of `<m><n+1>phi -> <m>Q^k_n(phi)`, the witness that child k
/// follows from the parent.
pub fn equi_child_witness(
    m: &ModalIndex,
    n: &ModalIndex,
    phi: &Formula,
    k: usize,
) -> Result<crate::calculus::Proof, ReductionError> {
    if m.0 > n.0 {
        return Err(ReductionError::IndexOrder {
            marker: m.clone(),
            level: n.clone(),
        });
    }
    let mut pb = ProofBuilder::new();
    let incl = inclusion_line(&mut pb, &n.0, k, phi);
    let last = pb.dia_mono(incl, m);
    Ok(pb.proof_of(last))
}

// --- rule derivations ---------------------------------------------------------

/// One application of the reflection rule: from `premise` infer
/// `<n>(premise & phi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleStep {
    pub premise: Formula,
    pub conclusion: Formula,
}

/// A derivation over base axioms using the reflection rule for a single
/// `(n, phi)`. Base axioms must be certifiable by the propositional decision
/// procedure: a hypothesis-free Hilbert proof cannot discharge arbitrary
/// assumptions under Necessitation, so the eliminated proof only exists when
/// the base theory's contribution is available outright.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleDerivation {
    pub rule_index: ModalIndex,
    pub side_formula: Formula,
    pub base_axioms: Vec<Formula>,
    pub steps: Vec<RuleStep>,
    pub conclusion: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule derivation invalid at {}: {msg}", step.map(|s| format!("step {s}")).unwrap_or_else(|| "top level".into()))]
pub struct DerivationError {
    /// 1-based step index, or `None` for axioms / the final conclusion.
    pub step: Option<usize>,
    pub msg: String,
}

impl RuleDerivation {
    /// Checks the derivation invariant: certifiable base axioms, admissible
    /// premises, rule-shaped conclusions, admissible final conclusion.
    pub fn validate(&self) -> Result<(), DerivationError> {
        for (i, ax) in self.base_axioms.iter().enumerate() {
            if !is_taut(ax) {
                return Err(DerivationError {
                    step: None,
                    msg: format!(
                        "base axiom {} is not certifiable by the propositional decision procedure",
                        i + 1
                    ),
                });
            }
        }
        let mut available = self.base_axioms.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if !admissible(&available, &step.premise) {
                return Err(DerivationError {
                    step: Some(i + 1),
                    msg: "premise is not an axiom, an earlier conclusion, or a propositional consequence of earlier conclusions".into(),
                });
            }
            let expected = Formula::dia(
                self.rule_index.clone(),
                Formula::and(step.premise.clone(), self.side_formula.clone()),
            );
            if !norm_eq(&step.conclusion, &expected) {
                return Err(DerivationError {
                    step: Some(i + 1),
                    msg: format!(
                        "conclusion is not of rule shape {}",
                        print_formula(&expected)
                    ),
                });
            }
            available.push(step.conclusion.clone());
        }
        if !admissible(&available, &self.conclusion) {
            return Err(DerivationError {
                step: None,
                msg: "final conclusion does not follow from the derivation".into(),
            });
        }
        Ok(())
    }
}

fn admissible(available: &[Formula], target: &Formula) -> bool {
    if available.iter().any(|f| norm_eq(f, target)) {
        return true;
    }
    let conj = available
        .iter()
        .fold(Formula::Top, |acc, f| Formula::and(acc, f.clone()));
    is_taut(&Formula::imp(conj, target.clone()))
}

/// Eliminates the reflection rule from a valid derivation: returns `k` (at
/// most the number of rule steps) and a checked proof of
/// `Q^k_n(phi) -> conclusion`, following the induction on rule applications:
/// each step is absorbed by one Q level through Necessitation and K, except
/// that a premise already implied by `phi` costs nothing.
pub fn eliminate_rule(
    d: &RuleDerivation,
) -> Result<(usize, crate::calculus::Proof), DerivationError> {
    d.validate()?;
    let n = &d.rule_index;
    let phi = &d.side_formula;
    let mut pb = ProofBuilder::new();
    let mut q_steps: Vec<usize> = Vec::new(); // q_steps[j]: Q^{j+1} -> Q^j
    let mut available: Vec<(Formula, usize, usize)> = Vec::new();
    for ax in &d.base_axioms {
        let line = pb.taut(Formula::imp(q_formula(n, 0, phi), ax.clone()));
        available.push((ax.clone(), 0, line));
    }
    for step in &d.steps {
        let shaped = Formula::dia(n.clone(), Formula::and(step.premise.clone(), phi.clone()));
        let (level, line) = if is_taut(&Formula::imp(phi.clone(), step.premise.clone())) {
            let widen = pb.taut(Formula::imp(
                phi.clone(),
                Formula::and(step.premise.clone(), phi.clone()),
            ));
            (0, pb.dia_mono(widen, n)) // Q^0 -> <n>(premise & phi)
        } else {
            let (j, l) = resolve(&mut pb, &mut q_steps, &available, &step.premise, n, phi);
            let l_f = pb.formula(l).clone();
            let t = pb.taut(Formula::imp(
                l_f,
                Formula::imp(
                    Formula::and(phi.clone(), q_formula(n, j, phi)),
                    Formula::and(step.premise.clone(), phi.clone()),
                ),
            ));
            let lifted = pb.mp(l, t);
            (j + 1, pb.dia_mono(lifted, n)) // Q^{j+1} -> <n>(premise & phi)
        };
        let _ = shaped;
        available.push((step.conclusion.clone(), level, line));
    }
    let (k, line) = resolve(&mut pb, &mut q_steps, &available, &d.conclusion, n, phi);
    debug_assert!(k <= d.steps.len());
    let goal = Formula::imp(q_formula(n, k, phi), d.conclusion.clone());
    Ok((k, pb.proof_with_goal(line, goal)))
}

/// Line `Q^j -> target` for the least convenient `j`: a direct hit on an
/// available formula, or the propositional combination of everything
/// available lifted to the maximum level in play.
fn resolve(
    pb: &mut ProofBuilder,
    q_steps: &mut Vec<usize>,
    available: &[(Formula, usize, usize)],
    target: &Formula,
    n: &ModalIndex,
    phi: &Formula,
) -> (usize, usize) {
    if let Some((_, j, l)) = available.iter().find(|(f, _, _)| norm_eq(f, target)) {
        return (*j, *l);
    }
    let level = available.iter().map(|(_, j, _)| *j).max().unwrap_or(0);
    let q = q_formula(n, level, phi);
    let lifted: Vec<usize> = available
        .iter()
        .map(|(_, j, l)| lift_to(pb, q_steps, n, phi, *l, *j, level))
        .collect();
    if lifted.is_empty() {
        // target must be an outright tautology
        let t = pb.taut(target.clone());
        return (0, pb.under(&q_formula(n, 0, phi), t));
    }
    (level, pb.imp_from(&q, &lifted, target))
}

/// Lifts `Q^j -> chi` to `Q^to -> chi` by descending the Q chain.
fn lift_to(
    pb: &mut ProofBuilder,
    q_steps: &mut Vec<usize>,
    n: &ModalIndex,
    phi: &Formula,
    line: usize,
    j: usize,
    to: usize,
) -> usize {
    if j == to {
        return line;
    }
    debug_assert!(j < to);
    ensure_q_steps(pb, q_steps, n, phi, to);
    let mut desc = q_steps[to - 1]; // Q^to -> Q^{to-1}
    for jj in (j..to - 1).rev() {
        desc = pb.chain(desc, q_steps[jj]);
    }
    pb.chain(desc, line)
}

fn ensure_q_steps(
    pb: &mut ProofBuilder,
    q_steps: &mut Vec<usize>,
    n: &ModalIndex,
    phi: &Formula,
    upto: usize,
) {
    while q_steps.len() < upto {
        let j = q_steps.len();
        let line = if j == 0 {
            let t = pb.taut(Formula::imp(
                Formula::and(phi.clone(), q_formula(n, 0, phi)),
                phi.clone(),
            ));
            pb.dia_mono(t, n)
        } else {
            let prev = q_steps[j - 1]; // Q^j -> Q^{j-1}
            let prev_f = pb.formula(prev).clone();
            let t = pb.taut(Formula::imp(
                prev_f,
                Formula::imp(
                    Formula::and(phi.clone(), q_formula(n, j, phi)),
                    Formula::and(phi.clone(), q_formula(n, j - 1, phi)),
                ),
            ));
            let m = pb.mp(prev, t);
            pb.dia_mono(m, n)
        };
        q_steps.push(line);
    }
}

// --- derivation file format -----------------------------------------------
//
// RULE <ord> ; <formula>          the rule level n and side formula phi
// 1. <formula> ; AXIOM            a base axiom
// 2. <formula> ; PROP             a propositional consequence, for reference
// 3. <formula> ; RR(2)            rule applied to the formula on line 2
// GOAL <formula>
//
// RR lines carry the conclusion <n>(premise & phi); the referenced line is
// the premise. Blank lines and '#' comments are ignored.

pub fn print_derivation(d: &RuleDerivation) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "RULE {} ; {}",
        d.rule_index,
        print_formula(&d.side_formula)
    )
    .unwrap();
    let mut lines: Vec<Formula> = Vec::new();
    for ax in &d.base_axioms {
        lines.push(ax.clone());
        writeln!(out, "{}. {} ; AXIOM", lines.len(), print_formula(ax)).unwrap();
    }
    for step in &d.steps {
        let premise_line = match lines.iter().position(|f| f == &step.premise) {
            Some(i) => i + 1,
            None => {
                lines.push(step.premise.clone());
                writeln!(
                    out,
                    "{}. {} ; PROP",
                    lines.len(),
                    print_formula(&step.premise)
                )
                .unwrap();
                lines.len()
            }
        };
        lines.push(step.conclusion.clone());
        writeln!(
            out,
            "{}. {} ; RR({})",
            lines.len(),
            print_formula(&step.conclusion),
            premise_line
        )
        .unwrap();
    }
    writeln!(out, "GOAL {}", print_formula(&d.conclusion)).unwrap();
    out
}

pub fn parse_derivation(text: &str) -> Result<RuleDerivation, ParseError> {
    let mut rule: Option<(ModalIndex, Formula)> = None;
    let mut lines: Vec<Formula> = Vec::new();
    let mut base_axioms = Vec::new();
    let mut steps = Vec::new();
    let mut conclusion = None;
    let mut offset = 0;
    for raw in text.lines() {
        let at = offset;
        offset += raw.len() + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if conclusion.is_some() {
            return Err(ParseError::new(at, "content after the GOAL line"));
        }
        if let Some(rest) = trimmed.strip_prefix("RULE") {
            if rule.is_some() {
                return Err(ParseError::new(at, "duplicate RULE line"));
            }
            let Some(semi) = rest.find(';') else {
                return Err(ParseError::new(at, "RULE line needs '<ord> ; <formula>'"));
            };
            let ord = crate::ordinal::parse_ordinal(rest[..semi].trim())
                .map_err(|e| ParseError::new(at, e.msg))?;
            let phi = parse_formula(&rest[semi + 1..]).map_err(|e| ParseError::new(at, e.msg))?;
            rule = Some((ModalIndex(ord), phi));
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("GOAL") {
            conclusion = Some(parse_formula(rest).map_err(|e| ParseError::new(at, e.msg))?);
            continue;
        }
        if rule.is_none() {
            return Err(ParseError::new(at, "expected a RULE line first"));
        }
        let Some(dot) = trimmed.find('.') else {
            return Err(ParseError::new(at, "expected 'n. formula ; justification'"));
        };
        let number: usize = trimmed[..dot]
            .trim()
            .parse()
            .map_err(|_| ParseError::new(at, "bad line number"))?;
        if number != lines.len() + 1 {
            return Err(ParseError::new(
                at,
                format!("line numbered {number}, expected {}", lines.len() + 1),
            ));
        }
        let body = &trimmed[dot + 1..];
        let Some(semi) = body.find(';') else {
            return Err(ParseError::new(at, "missing ';' before justification"));
        };
        let formula = parse_formula(&body[..semi]).map_err(|e| ParseError::new(at, e.msg))?;
        let just = body[semi + 1..].trim();
        if just == "AXIOM" {
            base_axioms.push(formula.clone());
        } else if just == "PROP" {
            // participates only as a referenced premise
        } else if let Some(arg) = just.strip_prefix("RR(").and_then(|s| s.strip_suffix(')')) {
            let premise_line: usize = arg
                .trim()
                .parse()
                .map_err(|_| ParseError::new(at, "RR needs a line number"))?;
            if premise_line == 0 || premise_line > lines.len() {
                return Err(ParseError::new(
                    at,
                    "RR reference does not point strictly backwards",
                ));
            }
            steps.push(RuleStep {
                premise: lines[premise_line - 1].clone(),
                conclusion: formula.clone(),
            });
        } else {
            return Err(ParseError::new(
                at,
                format!("unknown justification '{just}'"),
            ));
        }
        lines.push(formula);
    }
    let (rule_index, side_formula) = rule.ok_or_else(|| ParseError::new(0, "missing RULE line"))?;
    let conclusion = conclusion.ok_or_else(|| ParseError::new(offset, "missing GOAL line"))?;
    Ok(RuleDerivation {
        rule_index,
        side_formula,
        base_axioms,
        steps,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn idx(n: u64) -> ModalIndex {
        ModalIndex::nat(n)
    }

    #[test]
    fn q_formula_examples() {
        assert_eq!(q_formula(&idx(1), 0, &Formula::Top), p("<1>T"));
        assert_eq!(q_formula(&idx(0), 1, &Formula::Top), p("<0>(T & <0>T)"));
        assert_eq!(
            q_formula_normalized(&idx(0), 1, &Formula::Top),
            p("<0><0>T")
        );
        assert_eq!(
            q_formula(&idx(2), 2, &p("<0>T")),
            p("<2>(<0>T & <2>(<0>T & <2><0>T))")
        );
    }

    #[test]
    fn stability_examples() {
        assert!(n_stable(&p("<0>T"), &idx(1)));
        assert!(n_stable(&p("T"), &idx(5)));
        assert!(!n_stable(&p("<1>T"), &idx(1)));
        assert!(n_stable(&p("<0>T & (F | <1>F)"), &idx(2)));
        assert!(!n_stable(&p("[0]T"), &idx(1)));
    }

    #[test]
    fn collapse_rule_examples() {
        let proof = collapse_rule(&idx(1), &idx(0), &Formula::Top, &p("<0>T")).unwrap();
        assert_eq!(check_proof(&proof), Ok(()));
        assert!(norm_eq(&proof.goal, &p("(<1>T & <0>T) -> <1>(<0>T & T)")));

        let degenerate = collapse_rule(&idx(2), &idx(0), &p("<0>T"), &Formula::Top).unwrap();
        assert_eq!(check_proof(&degenerate), Ok(()));

        assert_eq!(
            collapse_rule(&idx(1), &idx(0), &Formula::Top, &p("<1>T")),
            Err(ReductionError::NotStable { level: idx(1) })
        );
        assert!(matches!(
            collapse_rule(&idx(1), &idx(2), &Formula::Top, &Formula::Top),
            Err(ReductionError::IndexOrder { .. })
        ));
    }

    #[test]
    fn equi_children_examples() {
        let kids = equi_children(&idx(0), &idx(0), &Formula::Top, 2).unwrap();
        let rendered: Vec<String> = kids.iter().map(print_formula).collect();
        assert_eq!(
            rendered,
            vec!["<0><0>T", "<0><0>(T & <0>T)", "<0><0>(T & <0>(T & <0>T))"]
        );
        assert_eq!(
            equi_children(&idx(1), &idx(2), &Formula::Top, 0).unwrap(),
            vec![p("<1><2>T")]
        );
        assert!(equi_children(&idx(2), &idx(1), &Formula::Top, 1).is_err());

        let witness = equi_child_witness(&idx(0), &idx(1), &Formula::Top, 1).unwrap();
        assert_eq!(check_proof(&witness), Ok(()));
        assert!(norm_eq(&witness.goal, &p("<0><2>T -> <0><1>(T & <1>T)")));
    }

    fn single_step_derivation() -> RuleDerivation {
        RuleDerivation {
            rule_index: idx(1),
            side_formula: Formula::Top,
            base_axioms: vec![],
            steps: vec![RuleStep {
                premise: Formula::Top,
                conclusion: p("<1>(T & T)"),
            }],
            conclusion: p("<1>(T & T)"),
        }
    }

    #[test]
    fn eliminate_single_trivial_step() {
        let d = single_step_derivation();
        let (k, proof) = eliminate_rule(&d).unwrap();
        assert_eq!(k, 0);
        assert_eq!(check_proof(&proof), Ok(()));
        assert!(norm_eq(&proof.goal, &p("<1>T -> <1>T")));
    }

    #[test]
    fn eliminate_nested_steps() {
        let first = p("<0>(T & T)");
        let d = RuleDerivation {
            rule_index: idx(0),
            side_formula: Formula::Top,
            base_axioms: vec![],
            steps: vec![
                RuleStep {
                    premise: Formula::Top,
                    conclusion: first.clone(),
                },
                RuleStep {
                    premise: first.clone(),
                    conclusion: Formula::dia_nat(0, Formula::and(first.clone(), Formula::Top)),
                },
            ],
            conclusion: Formula::dia_nat(0, Formula::and(first, Formula::Top)),
        };
        let (k, proof) = eliminate_rule(&d).unwrap();
        assert_eq!(k, 1);
        assert_eq!(check_proof(&proof), Ok(()));
        assert!(norm_eq(&proof.goal, &p("<0>(T & <0>T) -> <0><0>T")));
    }

    #[test]
    fn malformed_step_reported() {
        let mut d = single_step_derivation();
        d.steps[0].conclusion = p("<0>T");
        let err = eliminate_rule(&d).unwrap_err();
        assert_eq!(err.step, Some(1));
    }

    #[test]
    fn derivation_format_round_trip() {
        let d = RuleDerivation {
            rule_index: idx(1),
            side_formula: p("<0>T"),
            base_axioms: vec![Formula::Top],
            steps: vec![RuleStep {
                premise: Formula::Top,
                conclusion: p("<1>(T & <0>T)"),
            }],
            conclusion: p("<1>(T & <0>T)"),
        };
        let text = print_derivation(&d);
        assert_eq!(parse_derivation(&text).unwrap(), d);
        assert!(parse_derivation("1. T ; AXIOM\nGOAL T\n").is_err()); // no RULE
        assert!(parse_derivation("RULE 1 ; T\n1. T ; RR(1)\nGOAL T\n").is_err());
        // forward ref
    }
}
