//! Incremental construction of checkable proofs.
//!
//! The builder appends lines and hands back 1-based line indices for later
//! reference. Lines are deduplicated by checker normal form, so distinct
//! lines always carry distinct formulas and repeated lemmas cost nothing.
//!
//! On top of the raw axioms and rules it provides the handful of derived
//! inference patterns every generator in this crate is assembled from:
//! implication chaining, conjunction introduction under a common antecedent,
//! monotonicity of box and diamond under a proved implication, the
//! `<a>A & [a]B -> <a>(A & B)` collection step, and transitivity
//! `<a><a>A -> <a>A` (derived from Loeb's axiom, since there is no 4 axiom).

use super::{Justification, Proof, ProofLine};
use crate::syntax::{checker_norm, Formula, ModalIndex};
use std::collections::HashMap;

#[derive(Default)]
pub struct ProofBuilder {
    lines: Vec<ProofLine>,
    seen: HashMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }

    /// Appends a line unless an equivalent one exists; returns its index.
    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        let key = checker_norm(&formula);
        if let Some(&i) = self.seen.get(&key) {
            return i;
        }
        self.lines.push(ProofLine {
            formula,
            justification,
        });
        let i = self.lines.len();
        self.seen.insert(key, i);
        i
    }

    pub fn taut(&mut self, f: Formula) -> usize {
        self.push(f, Justification::PropTaut)
    }

    pub fn axiom(&mut self, f: Formula, j: Justification) -> usize {
        self.push(f, j)
    }

    /// Modus Ponens; the conclusion is read off the implication line.
    pub fn mp(&mut self, premise: usize, implication: usize) -> usize {
        let Formula::Imp(_, q) = self.formula(implication) else {
            panic!("mp: line {implication} is not an implication");
        };
        let conclusion = (**q).clone();
        self.push(conclusion, Justification::ModusPonens(premise, implication))
    }

    pub fn nec(&mut self, premise: usize, index: ModalIndex) -> usize {
        let f = Formula::boxed(index.clone(), self.formula(premise).clone());
        self.push(f, Justification::Necessitation(premise, index))
    }

    pub fn into_proof(self, goal: Formula) -> Proof {
        Proof {
            lines: self.lines,
            goal,
        }
    }

    /// Finishes the proof at `line`: everything the line does not reach
    /// through its rule references is scaffolding and is garbage-collected,
    /// with the survivors renumbered. The goal is the line's formula.
    pub fn proof_of(self, line: usize) -> Proof {
        let goal = self.lines[line - 1].formula.clone();
        self.proof_with_goal(line, goal)
    }

    /// Like [`Self::proof_of`] with an explicitly stated goal, which must be
    /// equivalent to the line's formula for the checker to accept.
    pub fn proof_with_goal(self, line: usize, goal: Formula) -> Proof {
        Proof {
            lines: prune(self.lines, line),
            goal,
        }
    }

    // --- implication plumbing ------------------------------------------------

    fn parts(&self, imp: usize) -> (Formula, Formula) {
        let Formula::Imp(a, b) = self.formula(imp) else {
            panic!("line {imp} is not an implication");
        };
        ((**a).clone(), (**b).clone())
    }

    /// `A -> A`.
    pub fn imp_refl(&mut self, a: &Formula) -> usize {
        self.taut(Formula::imp(a.clone(), a.clone()))
    }

    /// From `A -> B` and `B -> C`: `A -> C`.
    pub fn chain(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = self.parts(ab);
        let (b2, c) = self.parts(bc);
        debug_assert_eq!(checker_norm(&b), checker_norm(&b2));
        let t = self.taut(Formula::imp(
            Formula::imp(a.clone(), b),
            Formula::imp(Formula::imp(b2, c.clone()), Formula::imp(a, c)),
        ));
        let s = self.mp(ab, t);
        self.mp(bc, s)
    }

    /// From `A -> B` and a tautology `B -> C`: `A -> C`.
    pub fn chain_taut(&mut self, ab: usize, c: Formula) -> usize {
        let (_, b) = self.parts(ab);
        let t = self.taut(Formula::imp(b, c));
        self.chain(ab, t)
    }

    /// From `A -> B` and `A -> C`: `A -> (B & C)`.
    pub fn conj_intro(&mut self, ab: usize, ac: usize) -> usize {
        let (a, b) = self.parts(ab);
        let (a2, c) = self.parts(ac);
        debug_assert_eq!(checker_norm(&a), checker_norm(&a2));
        let t = self.taut(Formula::imp(
            Formula::imp(a.clone(), b.clone()),
            Formula::imp(
                Formula::imp(a2, c.clone()),
                Formula::imp(a, Formula::and(b, c)),
            ),
        ));
        let s = self.mp(ab, t);
        self.mp(ac, s)
    }

    /// Weakens an outright theorem `X` (line) to `Q -> X`.
    pub fn under(&mut self, q: &Formula, line: usize) -> usize {
        let x = self.formula(line).clone();
        let t = self.taut(Formula::imp(x.clone(), Formula::imp(q.clone(), x)));
        self.mp(line, t)
    }

    /// From `Q -> X1`, ..., `Q -> Xn` and the propositional fact
    /// `X1 -> (... -> (Xn -> target))`: `Q -> target`.
    pub fn imp_from(&mut self, q: &Formula, parts: &[usize], target: &Formula) -> usize {
        let xs: Vec<Formula> = parts.iter().map(|&l| self.parts(l).1).collect();
        let curried = xs
            .iter()
            .rev()
            .fold(target.clone(), |acc, x| Formula::imp(x.clone(), acc));
        let outright = self.taut(curried);
        let mut cur = self.under(q, outright); // Q -> (X1 -> ...)
        for &part in parts {
            // S step: from Q -> (X -> R) and Q -> X: Q -> R
            let (_, xr) = self.parts(cur);
            let Formula::Imp(x, r) = &xr else {
                panic!("imp_from: arity mismatch")
            };
            let t = self.taut(Formula::imp(
                Formula::imp(q.clone(), xr.clone()),
                Formula::imp(
                    Formula::imp(q.clone(), (**x).clone()),
                    Formula::imp(q.clone(), (**r).clone()),
                ),
            ));
            let s = self.mp(cur, t);
            cur = self.mp(part, s);
        }
        cur
    }

    // --- modal derived rules --------------------------------------------------

    /// From `A -> B`: `[a]A -> [a]B` (Necessitation plus K).
    pub fn box_mono(&mut self, ab: usize, index: &ModalIndex) -> usize {
        let (a, b) = self.parts(ab);
        let boxed_imp = self.nec(ab, index.clone());
        let k = self.axiom(
            Formula::imp(
                self.formula(boxed_imp).clone(),
                Formula::imp(
                    Formula::boxed(index.clone(), a),
                    Formula::boxed(index.clone(), b),
                ),
            ),
            Justification::AxiomK(index.clone()),
        );
        self.mp(boxed_imp, k)
    }

    /// From `A -> B`: `<a>A -> <a>B`, by contraposition through the box.
    pub fn dia_mono(&mut self, ab: usize, index: &ModalIndex) -> usize {
        let (a, b) = self.parts(ab);
        let t = self.taut(Formula::imp(
            Formula::imp(a.clone(), b.clone()),
            Formula::imp(Formula::neg(b.clone()), Formula::neg(a.clone())),
        ));
        let contra = self.mp(ab, t);
        // contra: ~B -> ~A, then [a]~B -> [a]~A, then flip back to diamonds
        let boxed = self.box_mono(contra, index);
        let (ba, bb) = self.parts(boxed);
        let flip = self.taut(Formula::imp(
            Formula::imp(ba, bb),
            Formula::imp(
                Formula::dia(index.clone(), a),
                Formula::dia(index.clone(), b),
            ),
        ));
        self.mp(boxed, flip)
    }

    /// `<a>A & [a]B -> <a>(A & B)`.
    pub fn dia_collect(&mut self, index: &ModalIndex, a: &Formula, b: &Formula) -> usize {
        let ab = Formula::and(a.clone(), b.clone());
        let t = self.taut(Formula::imp(
            Formula::neg(ab.clone()),
            Formula::imp(b.clone(), Formula::neg(a.clone())),
        ));
        let step = self.box_mono(t, index);
        let k = self.axiom(
            Formula::imp(
                Formula::boxed(
                    index.clone(),
                    Formula::imp(b.clone(), Formula::neg(a.clone())),
                ),
                Formula::imp(
                    Formula::boxed(index.clone(), b.clone()),
                    Formula::boxed(index.clone(), Formula::neg(a.clone())),
                ),
            ),
            Justification::AxiomK(index.clone()),
        );
        let curried = self.chain(step, k); // [a]~(A&B) -> ([a]B -> [a]~A)
        let (x, yz) = self.parts(curried);
        let flip = self.taut(Formula::imp(
            Formula::imp(x, yz),
            Formula::imp(
                Formula::and(
                    Formula::dia(index.clone(), a.clone()),
                    Formula::boxed(index.clone(), b.clone()),
                ),
                Formula::dia(index.clone(), ab),
            ),
        ));
        self.mp(curried, flip)
    }

    /// Transitivity of the box, `[a]D -> [a][a]D`, derived from Loeb.
    pub fn box_four(&mut self, index: &ModalIndex, d: &Formula) -> usize {
        let bd = Formula::boxed(index.clone(), d.clone());
        let body = Formula::and(d.clone(), bd.clone());
        let bbody = Formula::boxed(index.clone(), body.clone());

        let proj1 = self.taut(Formula::imp(body.clone(), d.clone()));
        let mono1 = self.box_mono(proj1, index); // [a](D & [a]D) -> [a]D
        let lift = self.taut(Formula::imp(
            Formula::imp(bbody.clone(), bd.clone()),
            Formula::imp(d.clone(), Formula::imp(bbody.clone(), body.clone())),
        ));
        let progressive = self.mp(mono1, lift); // D -> ([a]body -> body)
        let boxed_prog = self.box_mono(progressive, index); // [a]D -> [a]([a]body -> body)
        let loeb = self.axiom(
            Formula::imp(
                Formula::boxed(index.clone(), Formula::imp(bbody.clone(), body.clone())),
                bbody.clone(),
            ),
            Justification::AxiomLoeb(index.clone()),
        );
        let to_body = self.chain(boxed_prog, loeb); // [a]D -> [a]body
        let proj2 = self.taut(Formula::imp(body, bd));
        let mono2 = self.box_mono(proj2, index); // [a]body -> [a][a]D
        self.chain(to_body, mono2)
    }

    /// `<a><a>X -> <a>X`, the dual of [`Self::box_four`].
    pub fn dia_four(&mut self, index: &ModalIndex, x: &Formula) -> usize {
        let four = self.box_four(index, &Formula::neg(x.clone()));
        let (p, q) = self.parts(four);
        let flip = self.taut(Formula::imp(
            Formula::imp(p, q),
            Formula::imp(
                Formula::dia(index.clone(), Formula::dia(index.clone(), x.clone())),
                Formula::dia(index.clone(), x.clone()),
            ),
        ));
        self.mp(four, flip)
    }

    /// `<hi>X -> <lo>X` for lo <= hi, the dual reading of monotonicity.
    pub fn mono_dual(&mut self, lo: &ModalIndex, hi: &ModalIndex, x: &Formula) -> usize {
        debug_assert!(lo.0 <= hi.0);
        self.axiom(
            Formula::imp(
                Formula::dia(hi.clone(), x.clone()),
                Formula::dia(lo.clone(), x.clone()),
            ),
            Justification::AxiomMono(lo.clone(), hi.clone()),
        )
    }

    /// `<lo>X -> [hi]<lo>X` for lo < hi.
    pub fn neg_intro(&mut self, lo: &ModalIndex, hi: &ModalIndex, x: &Formula) -> usize {
        debug_assert!(lo.0 < hi.0);
        let d = Formula::dia(lo.clone(), x.clone());
        self.axiom(
            Formula::imp(d.clone(), Formula::boxed(hi.clone(), d)),
            Justification::AxiomNegIntro(lo.clone(), hi.clone()),
        )
    }
}

/// Keeps exactly the lines reachable from `last` through Modus Ponens and
/// Necessitation references, renumbered. References point strictly
/// backwards, so a single left-to-right pass can remap them.
fn prune(lines: Vec<ProofLine>, last: usize) -> Vec<ProofLine> {
    let mut used = vec![false; lines.len()];
    let mut stack = vec![last - 1];
    while let Some(i) = stack.pop() {
        if used[i] {
            continue;
        }
        used[i] = true;
        match &lines[i].justification {
            Justification::ModusPonens(a, b) => {
                stack.push(a - 1);
                stack.push(b - 1);
            }
            Justification::Necessitation(a, _) => stack.push(a - 1),
            _ => {}
        }
    }
    let mut remap = vec![0usize; lines.len()];
    let mut kept = Vec::new();
    for (i, mut line) in lines.into_iter().enumerate() {
        if !used[i] {
            continue;
        }
        line.justification = match line.justification {
            Justification::ModusPonens(a, b) => {
                Justification::ModusPonens(remap[a - 1], remap[b - 1])
            }
            Justification::Necessitation(a, index) => {
                Justification::Necessitation(remap[a - 1], index)
            }
            other => other,
        };
        kept.push(line);
        remap[i] = kept.len();
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn finish(pb: ProofBuilder, goal_line: usize) -> crate::calculus::Proof {
        pb.proof_of(goal_line)
    }

    #[test]
    fn derived_rules_all_check() {
        let i0 = ModalIndex::nat(0);
        let i1 = ModalIndex::nat(1);

        let mut pb = ProofBuilder::new();
        let ab = pb.taut(p("T & F -> F"));
        let l = pb.dia_mono(ab, &i1);
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));

        let mut pb = ProofBuilder::new();
        let l = pb.dia_collect(&i1, &p("<0>T"), &p("T -> F"));
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));

        let mut pb = ProofBuilder::new();
        let l = pb.box_four(&i0, &p("<1>T"));
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));

        let mut pb = ProofBuilder::new();
        let l = pb.dia_four(&i0, &p("<1>T"));
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));

        let mut pb = ProofBuilder::new();
        let a = pb.taut(p("T & T -> T"));
        let b = pb.taut(p("T -> (F -> T)"));
        let l = pb.chain(a, b);
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));

        let mut pb = ProofBuilder::new();
        let a = pb.taut(p("F -> T"));
        let b = pb.taut(p("F -> (T -> T)"));
        let l = pb.conj_intro(a, b);
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));
    }

    #[test]
    fn imp_from_combines_parts() {
        let mut pb = ProofBuilder::new();
        let q = p("<0><0>T");
        let refl = pb.imp_refl(&q);
        let x1 = pb.chain_taut(refl, p("T | F"));
        let x2 = pb.imp_refl(&q);
        let l = pb.imp_from(&q, &[x1, x2], &p("(T | F) & <0><0>T"));
        assert_eq!(check_proof(&finish(pb, l)), Ok(()));
    }
}
