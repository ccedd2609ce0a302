//! Transfinite-descent consistency certificates and theory ordinals.
//!
//! A certificate is a finite tree rooted at a worm. Every edge carries a
//! checkable proof `parent -> <0>child`, so the tree as a whole witnesses
//! the descent structure of the consistency proof: a successor node steps to
//! its tail, a node `<n+1>B` steps to the fundamental-sequence family
//! `Q^k_n(B)` (a finite prefix, with a schema marker standing for the full
//! family), and children that do not normalize to worms close the tree as
//! sound boundary leaves. Worm-shaped nodes carry their ordinal, and labels
//! strictly descend along edges.
//!
//! The certificate engine only talks to a [`Provider`], the abstract
//! base-theory contract: a deduction-theorem shift, a soundness attestation,
//! coverage of the theory by worm axioms, and the equi-consistency step
//! producing children with their edge proofs. The bundled
//! [`SymbolicGlpProvider`] realizes the contract inside the calculus itself.
//! [`verify_certificate`] re-checks everything from scratch and shares no
//! state with the builder.

use crate::calculus::{
    check_proof, inclusion_to_zero_line, parse_proof, print_proof, Proof, ProofBuilder,
};
use crate::ordinal::{parse_ordinal, CnfOrdinal, OrdinalBound};
use crate::reduction::q_formula;
use crate::syntax::{
    as_worm, norm_eq, normalize_top, parse_formula, print_formula, Formula, ModalIndex, Worm,
};
use crate::text::ParseError;
use crate::worms::{checked_indices, ordinal_at, worm_ordinal, WormError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// Recorded strength of the meta-theory the descent argument is formalizable
/// in; metadata only, never computed with.
pub const META_THEORY_LABEL: &str = "EA+-strength";

/// A worm-presented theory: finitely many worm axioms plus schema families
/// `{<offset+i>T | i in omega}`.
///
/// Invariant: all worm indices are natural (enforced by [`TheorySpec::parse`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheorySpec {
    pub axioms: Vec<Worm>,
    pub schemas: Vec<SchemaSpec>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemaSpec {
    pub offset: u64,
}

impl TheorySpec {
    /// Parses the theory file format: one `AXIOM <worm>` or
    /// `SCHEMA offset=<nat>` per line; blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<TheorySpec, ParseError> {
        let mut axioms = Vec::new();
        let mut schemas = Vec::new();
        let mut offset = 0;
        for raw in text.lines() {
            let at = offset;
            offset += raw.len() + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("AXIOM") {
                let f = parse_formula(rest).map_err(|e| ParseError::new(at, e.msg))?;
                let Some(w) = as_worm(&f) else {
                    return Err(ParseError::new(at, "AXIOM must be a worm"));
                };
                if checked_indices(&w).is_err() {
                    return Err(ParseError::new(
                        at,
                        "AXIOM indices must be natural numbers within the decidable bound",
                    ));
                }
                axioms.push(w);
            } else if let Some(rest) = trimmed.strip_prefix("SCHEMA") {
                let rest = rest.trim();
                let Some(value) = rest.strip_prefix("offset=") else {
                    return Err(ParseError::new(at, "SCHEMA needs offset=<nat>"));
                };
                let n: u64 = value
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(at, "SCHEMA offset must be a natural number"))?;
                schemas.push(SchemaSpec { offset: n });
            } else {
                return Err(ParseError::new(at, "expected AXIOM or SCHEMA"));
            }
        }
        Ok(TheorySpec { axioms, schemas })
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        for a in &self.axioms {
            writeln!(out, "AXIOM {}", print_formula(&a.to_formula())).unwrap();
        }
        for s in &self.schemas {
            writeln!(out, "SCHEMA offset={}", s.offset).unwrap();
        }
        out
    }
}

/// The abstract base-theory contract the certificate engine is written
/// against. The four capabilities mirror what a concrete family of
/// provability operators has to supply: a provable deduction theorem, GLP
/// soundness, coverage of the target theory by iterated consistency, and the
/// equi-consistency step from `<n+1>phi` to its fundamental sequence.
pub trait Provider {
    /// The deduction-theorem shift: the formula denoting "`psi` is
    /// `<n>`-consistent with the base theory extended by `phi`".
    fn deduction_shift(&self, n: &ModalIndex, psi: &Formula, phi: &Formula) -> Formula;

    /// Why reasoning in the calculus is sound for this provider's modalities.
    fn soundness_attestation(&self) -> String;

    /// A finite prefix of the worm axioms covering the theory.
    fn coverage(&self, theory: &TheorySpec, bound: usize) -> Vec<Worm>;

    /// Children `Q^k_n(body)` for k = 0..=k_max, each with a proof of
    /// `<n+1>body -> <0>child`. The engine re-checks every proof.
    fn equi_step(&self, n: u64, body: &Worm, k_max: usize) -> Vec<(Formula, Proof)>;
}

/// The bundled provider: conditions witnessed inside the calculus itself.
#[derive(Default)]
pub struct SymbolicGlpProvider;

impl Provider for SymbolicGlpProvider {
    fn deduction_shift(&self, n: &ModalIndex, psi: &Formula, phi: &Formula) -> Formula {
        Formula::dia(n.clone(), Formula::and(psi.clone(), phi.clone()))
    }

    fn soundness_attestation(&self) -> String {
        "axioms and rules are used schematically over the closed fragment; every emitted derivation is re-checked by check_proof".to_string()
    }

    fn coverage(&self, theory: &TheorySpec, bound: usize) -> Vec<Worm> {
        let mut worms = theory.axioms.clone();
        for schema in &theory.schemas {
            worms.extend((0..bound as u64).map(|i| Worm::from_nats(&[schema.offset + i])));
        }
        worms
    }

    fn equi_step(&self, n: u64, body: &Worm, k_max: usize) -> Vec<(Formula, Proof)> {
        let phi = body.to_formula();
        let ni = ModalIndex::nat(n);
        (0..=k_max)
            .map(|k| {
                let mut pb = ProofBuilder::new();
                let line = inclusion_to_zero_line(&mut pb, n, k, &phi);
                (q_formula(&ni, k, &phi), pb.proof_of(line))
            })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertKind {
    /// The empty worm T.
    Leaf,
    /// `<0>B`, one child B.
    Successor,
    /// `<n+1>B`, children `Q^k_n(B)` with the schema marker standing for
    /// the full family.
    Reduction,
    /// A child that does not normalize to a worm; sound truncation.
    Boundary,
}

impl CertKind {
    fn name(self) -> &'static str {
        match self {
            CertKind::Leaf => "leaf",
            CertKind::Successor => "successor",
            CertKind::Reduction => "reduction",
            CertKind::Boundary => "boundary",
        }
    }

    fn from_name(s: &str) -> Option<CertKind> {
        Some(match s {
            "leaf" => CertKind::Leaf,
            "successor" => CertKind::Successor,
            "reduction" => CertKind::Reduction,
            "boundary" => CertKind::Boundary,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CertNode {
    pub formula: Formula,
    pub kind: CertKind,
    /// Present exactly when the formula is a natural-index worm.
    pub ordinal: Option<CnfOrdinal>,
    pub schema_marker: bool,
    pub children: Vec<CertEdge>,
}

#[derive(Clone, Debug)]
pub struct CertEdge {
    /// Checkable proof of `parent -> <0>child`.
    pub proof: Proof,
    pub node: CertNode,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub meta_theory: String,
    pub root: CertNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("descent point outside the decidable fragment: {0}")]
    Index(#[from] WormError),
    #[error("provider violated the equi-step contract: {0}")]
    ProviderContract(String),
    #[error("certificate format: {0}")]
    Format(String),
}

/// Expands `root` into a full descent certificate with `k_max + 1` children
/// per reduction node, edge proofs supplied by the provider and re-checked
/// here. Terminates because worm labels strictly descend and non-worm
/// children become boundaries.
pub fn build_certificate(
    root: &Worm,
    k_max: usize,
    provider: &dyn Provider,
) -> Result<Certificate, AnalysisError> {
    let nats = checked_indices(root)?;
    Ok(Certificate {
        meta_theory: META_THEORY_LABEL.to_string(),
        root: expand(&nats, k_max, provider)?,
    })
}

fn expand(w: &[u64], k_max: usize, provider: &dyn Provider) -> Result<CertNode, AnalysisError> {
    let formula = Worm::from_nats(w).to_formula();
    let ordinal = Some(ordinal_at(w, 0));
    if w.is_empty() {
        return Ok(CertNode {
            formula,
            kind: CertKind::Leaf,
            ordinal,
            schema_marker: false,
            children: Vec::new(),
        });
    }
    if w[0] == 0 {
        let child = expand(&w[1..], k_max, provider)?;
        let mut pb = ProofBuilder::new();
        let refl = pb.imp_refl(&formula);
        let proof = pb.proof_of(refl);
        return Ok(CertNode {
            formula,
            kind: CertKind::Successor,
            ordinal,
            schema_marker: false,
            children: vec![CertEdge { proof, node: child }],
        });
    }
    let n = w[0] - 1;
    let body = Worm::from_nats(&w[1..]);
    let supplied = provider.equi_step(n, &body, k_max);
    if supplied.is_empty() {
        return Err(AnalysisError::ProviderContract(
            "no children supplied".into(),
        ));
    }
    let mut children = Vec::new();
    for (raw_child, proof) in supplied {
        check_proof(&proof)
            .map_err(|e| AnalysisError::ProviderContract(format!("edge proof rejected: {e}")))?;
        let child_formula = normalize_top(&raw_child);
        let expected = Formula::imp(formula.clone(), Formula::dia_nat(0, child_formula.clone()));
        if !norm_eq(&proof.goal, &expected) {
            return Err(AnalysisError::ProviderContract(format!(
                "edge proof concludes {} instead of {}",
                print_formula(&proof.goal),
                print_formula(&expected)
            )));
        }
        let node = match as_worm(&child_formula).and_then(|cw| checked_indices(&cw).ok()) {
            Some(child_nats) => {
                if ordinal_at(&child_nats, 0) >= ordinal_at(w, 0) {
                    return Err(AnalysisError::ProviderContract(
                        "child does not strictly descend".into(),
                    ));
                }
                expand(&child_nats, k_max, provider)?
            }
            None => CertNode {
                formula: child_formula,
                kind: CertKind::Boundary,
                ordinal: None,
                schema_marker: false,
                children: Vec::new(),
            },
        };
        children.push(CertEdge { proof, node });
    }
    Ok(CertNode {
        formula,
        kind: CertKind::Reduction,
        ordinal,
        schema_marker: true,
        children,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate invalid at {}: {reason}", path_display(path))]
pub struct CertError {
    /// Child indices from the root down to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

fn path_display(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let mut s = "root".to_string();
        for i in path {
            s.push('.');
            s.push_str(&i.to_string());
        }
        s
    }
}

/// Re-validates a certificate from scratch: node kinds against formulas,
/// ordinal labels against the assignment, child shapes against the
/// fundamental-sequence definition, every edge proof against the checker,
/// and strict label descent. Independent of how the certificate was built.
pub fn verify_certificate(c: &Certificate) -> Result<(), CertError> {
    let mut path = Vec::new();
    verify_node(&c.root, &mut path)
}

fn verify_node(node: &CertNode, path: &mut Vec<usize>) -> Result<(), CertError> {
    let fail = |path: &[usize], reason: String| {
        Err(CertError {
            path: path.to_vec(),
            reason,
        })
    };
    let worm = as_worm(&node.formula).and_then(|w| checked_indices(&w).ok().map(|n| (w, n)));
    let expected_kind = match &worm {
        None => CertKind::Boundary,
        Some((w, _)) if w.is_empty() => CertKind::Leaf,
        Some((_, nats)) if nats[0] == 0 => CertKind::Successor,
        Some(_) => CertKind::Reduction,
    };
    if node.kind != expected_kind {
        return fail(
            path,
            format!(
                "kind {} does not match the formula (expected {})",
                node.kind.name(),
                expected_kind.name()
            ),
        );
    }
    match &worm {
        Some((_, nats)) => {
            let expected = ordinal_at(nats, 0);
            match &node.ordinal {
                Some(o) if *o == expected => {}
                Some(o) => {
                    return fail(
                        path,
                        format!("ordinal label {o} differs from the assignment {expected}"),
                    )
                }
                None => return fail(path, "worm node is missing its ordinal label".into()),
            }
        }
        None => {
            if node.ordinal.is_some() {
                return fail(path, "non-worm node carries an ordinal label".into());
            }
        }
    }
    if node.schema_marker != matches!(node.kind, CertKind::Reduction) {
        return fail(
            path,
            "schema marker must be set exactly on reduction nodes".into(),
        );
    }
    match node.kind {
        CertKind::Leaf | CertKind::Boundary => {
            if !node.children.is_empty() {
                return fail(path, "terminal node has children".into());
            }
        }
        CertKind::Successor => {
            let (_, nats) = worm.as_ref().unwrap();
            if node.children.len() != 1 {
                return fail(path, "successor node must have exactly one child".into());
            }
            let tail = Worm::from_nats(&nats[1..]).to_formula();
            if !norm_eq(&node.children[0].node.formula, &tail) {
                return fail(path, "successor child is not the tail worm".into());
            }
        }
        CertKind::Reduction => {
            let (_, nats) = worm.as_ref().unwrap();
            if node.children.is_empty() {
                return fail(path, "reduction node has no children".into());
            }
            let n = ModalIndex::nat(nats[0] - 1);
            let body = Worm::from_nats(&nats[1..]).to_formula();
            for (k, edge) in node.children.iter().enumerate() {
                let expected = normalize_top(&q_formula(&n, k, &body));
                if !norm_eq(&edge.node.formula, &expected) {
                    path.push(k);
                    let reason = format!(
                        "child is not the fundamental-sequence formula {}",
                        print_formula(&expected)
                    );
                    let e = fail(path, reason);
                    path.pop();
                    return e;
                }
            }
        }
    }
    for (i, edge) in node.children.iter().enumerate() {
        path.push(i);
        if let Err(e) = check_proof(&edge.proof) {
            let r = fail(path, format!("edge proof rejected: {e}"));
            path.pop();
            return r;
        }
        let expected = Formula::imp(
            node.formula.clone(),
            Formula::dia_nat(0, edge.node.formula.clone()),
        );
        if !norm_eq(&edge.proof.goal, &expected) {
            let r = fail(
                path,
                "edge proof does not conclude parent -> <0>child".into(),
            );
            path.pop();
            return r;
        }
        if let (Some(parent), Some(child)) = (&node.ordinal, &edge.node.ordinal) {
            if child >= parent {
                let r = fail(path, format!("descent violation: {child} >= {parent}"));
                path.pop();
                return r;
            }
        }
        verify_node(&edge.node, path)?;
        path.pop();
    }
    Ok(())
}

/// The ordinal bound of a worm-presented theory: 0 for the empty theory, the
/// maximum of `o` over the axioms for a finite presentation, and epsilon_0
/// as soon as a schema is present (the family `<offset+i>T` is unbounded in
/// the worm order).
///
/// This is the committed sup reading of the Turing-progression ordinal for
/// worm presentations; note that a conjunction of worms can sit strictly
/// above both conjuncts, so the bound is about the listed axioms, not about
/// arbitrary consequences of their conjunction.
pub fn pi1_ordinal(t: &TheorySpec) -> OrdinalBound {
    if !t.schemas.is_empty() {
        return OrdinalBound::EpsilonZero;
    }
    let mut best = CnfOrdinal::zero();
    for a in &t.axioms {
        let o = worm_ordinal(a).expect("TheorySpec invariant: decidable natural indices");
        if o > best {
            best = o;
        }
    }
    OrdinalBound::Below(best)
}

// --- JSON serialization -----------------------------------------------------
//
// Every node object carries `root` (the node formula), `kind`, `ordinal`
// (canonical text or null), `schema_marker`, and `children` (ordered). Every
// non-root node adds `edge_proof`, the embedded proof-file text of its
// incoming edge. The root node carries `meta_theory`.

#[derive(Serialize, Deserialize)]
struct NodeJson {
    root: String,
    kind: String,
    ordinal: Option<String>,
    schema_marker: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    edge_proof: Option<String>,
    children: Vec<NodeJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    meta_theory: Option<String>,
}

fn node_to_json(node: &CertNode, edge_proof: Option<&Proof>, meta: Option<&str>) -> NodeJson {
    NodeJson {
        root: print_formula(&node.formula),
        kind: node.kind.name().to_string(),
        ordinal: node.ordinal.as_ref().map(|o| o.to_string()),
        schema_marker: node.schema_marker,
        edge_proof: edge_proof.map(print_proof),
        children: node
            .children
            .iter()
            .map(|e| node_to_json(&e.node, Some(&e.proof), None))
            .collect(),
        meta_theory: meta.map(str::to_string),
    }
}

fn node_from_json(nj: &NodeJson) -> Result<CertNode, AnalysisError> {
    let formula =
        parse_formula(&nj.root).map_err(|e| AnalysisError::Format(format!("formula: {e}")))?;
    let kind = CertKind::from_name(&nj.kind)
        .ok_or_else(|| AnalysisError::Format(format!("unknown node kind '{}'", nj.kind)))?;
    let ordinal = match &nj.ordinal {
        None => None,
        Some(text) => {
            Some(parse_ordinal(text).map_err(|e| AnalysisError::Format(format!("ordinal: {e}")))?)
        }
    };
    let mut children = Vec::new();
    for child in &nj.children {
        let proof_text = child
            .edge_proof
            .as_ref()
            .ok_or_else(|| AnalysisError::Format("child node is missing edge_proof".into()))?;
        let proof = parse_proof(proof_text)
            .map_err(|e| AnalysisError::Format(format!("edge proof: {e}")))?;
        children.push(CertEdge {
            proof,
            node: node_from_json(child)?,
        });
    }
    Ok(CertNode {
        formula,
        kind,
        ordinal,
        schema_marker: nj.schema_marker,
        children,
    })
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let nj = node_to_json(&self.root, None, Some(&self.meta_theory));
        let mut s = serde_json::to_string_pretty(&nj).expect("serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Certificate, AnalysisError> {
        let nj: NodeJson =
            serde_json::from_str(text).map_err(|e| AnalysisError::Format(e.to_string()))?;
        let meta_theory = nj
            .meta_theory
            .clone()
            .ok_or_else(|| AnalysisError::Format("root node is missing meta_theory".into()))?;
        if nj.edge_proof.is_some() {
            return Err(AnalysisError::Format(
                "root node cannot carry an edge proof".into(),
            ));
        }
        Ok(Certificate {
            meta_theory,
            root: node_from_json(&nj)?,
        })
    }
}
