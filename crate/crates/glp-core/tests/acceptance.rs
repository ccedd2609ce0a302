//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured facts. Run with `cargo test --test acceptance -- --nocapture`
//! to see them.

mod common;

use common::{enumerate_worms, random_below_w_w_w, worm};
use glp_core::analysis::{
    build_certificate, pi1_ordinal, verify_certificate, Certificate, SchemaSpec,
    SymbolicGlpProvider, TheorySpec,
};
use glp_core::calculus::{certify_less, check_proof, derive_inclusion};
use glp_core::reduction::{eliminate_rule, q_formula_normalized, RuleDerivation, RuleStep};
use glp_core::syntax::{as_worm, Formula, ModalIndex};
use glp_core::worms::{worm_cmp, worm_cmp_structural, worm_ordinal};
use glp_core::{ord_cmp, CnfOrdinal, OrdinalBound};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::time::Instant;

/// Criterion 1: over all 1093 worms of length <= 6 with indices in {0,1,2},
/// the strict order from worm_cmp is irreflexive, transitive, and
/// trichotomous, in under ten seconds.
#[test]
fn acceptance_1_well_order() {
    let start = Instant::now();
    let worms = enumerate_worms(6, &[0, 1, 2]);
    assert_eq!(worms.len(), 1093);
    let ordinals: Vec<CnfOrdinal> = worms
        .iter()
        .map(|w| worm_ordinal(&worm(w)).unwrap())
        .collect();

    // rank every worm inside a total order; agreement of worm_cmp with the
    // rank comparison on every pair is exactly irreflexivity of the strict
    // part, trichotomy, and transitivity (the ranks are transitively ordered)
    let mut sorted: Vec<CnfOrdinal> = ordinals.clone();
    sorted.sort();
    sorted.dedup();
    let ranks: Vec<usize> = ordinals
        .iter()
        .map(|o| sorted.binary_search(o).unwrap())
        .collect();

    for i in 0..worms.len() {
        let wi = worm(&worms[i]);
        assert_eq!(
            worm_cmp(&wi, &wi).unwrap(),
            Ordering::Equal,
            "irreflexivity at {wi}"
        );
        for j in 0..worms.len() {
            let expected = ranks[i].cmp(&ranks[j]);
            assert_eq!(
                ordinals[i].cmp(&ordinals[j]),
                expected,
                "order inconsistency between worms {i} and {j}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "well-order suite took {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 1 (well-order suite): PASS — 1093 worms, {} pairs, {elapsed:?}",
        worms.len() * worms.len()
    );
}

/// Criterion 2: worm_cmp, worm_cmp_structural, and ord_cmp over the ordinal
/// assignment agree pairwise on all ~1.2M pairs of the enumeration.
#[test]
fn acceptance_2_isomorphism() {
    let worms = enumerate_worms(6, &[0, 1, 2]);
    let parsed: Vec<_> = worms.iter().map(|w| worm(w)).collect();
    let ordinals: Vec<CnfOrdinal> = parsed.iter().map(|w| worm_ordinal(w).unwrap()).collect();
    let mut pairs = 0u64;
    for i in 0..parsed.len() {
        for j in 0..parsed.len() {
            let through_ordinals = ord_cmp(&ordinals[i], &ordinals[j]);
            let direct = worm_cmp(&parsed[i], &parsed[j]).unwrap();
            let structural = worm_cmp_structural(&parsed[i], &parsed[j]).unwrap();
            assert_eq!(direct, through_ordinals, "worm_cmp vs o at ({i},{j})");
            assert_eq!(structural, through_ordinals, "structural vs o at ({i},{j})");
            pairs += 1;
        }
    }
    println!("ACCEPTANCE 2 (isomorphism suite): PASS — {pairs} comparisons, zero disagreements");
}

/// Criterion 3: 500 random ordinals below w^(w^w) survive the round trip
/// through the canonical worm exactly.
#[test]
fn acceptance_3_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let a = random_below_w_w_w(&mut rng);
        assert!(a.is_valid_cnf());
        let w = glp_core::worm_of_ordinal(&a);
        assert_eq!(worm_ordinal(&w).unwrap(), a, "round trip failed for {a}");
    }
    println!("ACCEPTANCE 3 (round trip): PASS — 500 random ordinals below w^(w^w)");
}

/// Criterion 4: the inclusion-lemma generator passes the checker for all
/// levels in {0,1,2}, k up to 5, and both side formulas, in under five
/// seconds.
#[test]
fn acceptance_4_inclusion_generator() {
    let start = Instant::now();
    let phis = [Formula::Top, Formula::dia_nat(0, Formula::Top)];
    let mut proofs = 0;
    for alpha in 0..=2u64 {
        for k in 0..=5usize {
            for phi in &phis {
                let proof = derive_inclusion(&CnfOrdinal::nat(alpha), k, phi);
                assert_eq!(check_proof(&proof), Ok(()), "alpha={alpha} k={k} phi={phi}");
                proofs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "inclusion generator took {elapsed:?}"
    );
    println!("ACCEPTANCE 4 (inclusion generator): PASS — {proofs} checked proofs, {elapsed:?}");
}

fn random_derivation(rng: &mut impl Rng) -> RuleDerivation {
    let rule_index = ModalIndex::nat(rng.gen_range(0..3));
    let side_formula = match rng.gen_range(0..3) {
        0 => Formula::Top,
        1 => Formula::dia_nat(0, Formula::Top),
        _ => Formula::dia_nat(1, Formula::Top),
    };
    let base_axioms = match rng.gen_range(0..3) {
        0 => vec![],
        1 => vec![Formula::Top],
        _ => vec![Formula::imp(Formula::Bottom, Formula::Top)],
    };
    let mut steps: Vec<RuleStep> = Vec::new();
    let mut conclusions: Vec<Formula> = Vec::new();
    for _ in 0..rng.gen_range(1..=5usize) {
        let premise = if conclusions.is_empty() || rng.gen_bool(0.3) {
            Formula::Top
        } else if conclusions.len() >= 2 && rng.gen_bool(0.3) {
            let a = conclusions[rng.gen_range(0..conclusions.len())].clone();
            let b = conclusions[rng.gen_range(0..conclusions.len())].clone();
            Formula::and(a, b)
        } else {
            conclusions[rng.gen_range(0..conclusions.len())].clone()
        };
        let conclusion = Formula::dia(
            rule_index.clone(),
            Formula::and(premise.clone(), side_formula.clone()),
        );
        conclusions.push(conclusion.clone());
        steps.push(RuleStep {
            premise,
            conclusion,
        });
    }
    let conclusion = conclusions[rng.gen_range(0..conclusions.len())].clone();
    RuleDerivation {
        rule_index,
        side_formula,
        base_axioms,
        steps,
        conclusion,
    }
}

/// Criterion 5: one hundred random valid derivations with at most five rule
/// steps eliminate into checked proofs with k bounded by the step count.
#[test]
fn acceptance_5_rule_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..100 {
        let d = random_derivation(&mut rng);
        d.validate()
            .unwrap_or_else(|e| panic!("round {round}: generated derivation invalid: {e}"));
        let (k, proof) = eliminate_rule(&d).unwrap_or_else(|e| panic!("round {round}: {e}"));
        assert!(
            k <= d.steps.len(),
            "round {round}: k={k} exceeds {} steps",
            d.steps.len()
        );
        assert_eq!(check_proof(&proof), Ok(()), "round {round}");
    }
    println!(
        "ACCEPTANCE 5 (rule elimination): PASS — 100 random derivations, k <= steps, all checked"
    );
}

/// Criterion 6: the fundamental-sequence chain. For n <= 2 and k <= 5,
/// certify_less certifies Q^k_n(T) below Q^{k+1}_n(T) and below <n+1>T,
/// with every certificate accepted by the checker.
#[test]
fn acceptance_6_q_chain() {
    let mut certificates = 0;
    for n in 0..=2u64 {
        let ni = ModalIndex::nat(n);
        let successor = worm(&[n + 1]);
        for k in 0..=5usize {
            let q_k = as_worm(&q_formula_normalized(&ni, k, &Formula::Top)).unwrap();
            let q_next = as_worm(&q_formula_normalized(&ni, k + 1, &Formula::Top)).unwrap();
            for (small, large) in [(&q_k, &q_next), (&q_k, &successor)] {
                let proof = certify_less(small, large, 64)
                    .unwrap_or_else(|| panic!("no certificate for {small} <0 {large}"));
                assert_eq!(check_proof(&proof), Ok(()), "{small} <0 {large}");
                certificates += 1;
            }
        }
    }
    println!("ACCEPTANCE 6 (Q-chain): PASS — {certificates} checked order certificates");
}

fn collect_paths(v: &serde_json::Value, path: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(path.clone());
    if let Some(children) = v.get("children").and_then(|c| c.as_array()) {
        for (i, child) in children.iter().enumerate() {
            let mut p = path.clone();
            p.push(i);
            collect_paths(child, p, out);
        }
    }
}

fn node_at<'a>(v: &'a mut serde_json::Value, path: &[usize]) -> &'a mut serde_json::Value {
    let mut cur = v;
    for &i in path {
        cur = &mut cur["children"][i];
    }
    cur
}

fn mutate_json(value: &mut serde_json::Value, rng: &mut impl Rng) -> &'static str {
    let mut paths = Vec::new();
    collect_paths(value, Vec::new(), &mut paths);
    let path = paths[rng.gen_range(0..paths.len())].clone();
    let node = node_at(value, &path);
    let choice = rng.gen_range(0..6);
    match choice {
        0 => {
            node["ordinal"] = serde_json::json!("w^(w^w)*7");
            "ordinal label bump"
        }
        1 => {
            let kind = node["kind"].as_str().unwrap();
            node["kind"] = serde_json::json!(if kind == "leaf" { "reduction" } else { "leaf" });
            "kind swap"
        }
        2 => {
            let marker = node["schema_marker"].as_bool().unwrap();
            node["schema_marker"] = serde_json::json!(!marker);
            "schema marker flip"
        }
        3 => {
            let old = node["root"].as_str().unwrap();
            node["root"] = serde_json::json!(format!("({old}) & F"));
            "formula tamper"
        }
        4 => {
            if let Some(proof) = node.get("edge_proof").and_then(|p| p.as_str()) {
                let tampered = proof.replace("GOAL", "GOAL F & ");
                node["edge_proof"] = serde_json::json!(tampered);
                "edge proof goal tamper"
            } else {
                node["ordinal"] = serde_json::json!("w^(w^w)*7");
                "ordinal label bump"
            }
        }
        _ => {
            if let Some(children) = node.get_mut("children").and_then(|c| c.as_array_mut()) {
                if children.len() >= 2 {
                    children.swap(0, 1);
                    return "child reorder";
                } else if children.len() == 1 {
                    children.clear();
                    return "child removal";
                }
            }
            node["ordinal"] = serde_json::json!("w^(w^w)*7");
            "ordinal label bump"
        }
    }
}

/// Criterion 7: certificates for every worm of length <= 4 over {0,1,2}
/// build with K=3 and verify, and 200 mutations of serialized certificates
/// are all rejected.
#[test]
fn acceptance_7_certificates() {
    let worms = enumerate_worms(4, &[0, 1, 2]);
    assert_eq!(worms.len(), 121);
    let provider = SymbolicGlpProvider;
    let mut serialized = Vec::new();
    for w in &worms {
        let cert = build_certificate(&worm(w), 3, &provider)
            .unwrap_or_else(|e| panic!("build failed for {:?}: {e}", w));
        assert_eq!(
            verify_certificate(&cert),
            Ok(()),
            "verify failed for {:?}",
            w
        );
        serialized.push(cert.to_json());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rejected = 0;
    for round in 0..200 {
        let json = &serialized[rng.gen_range(0..serialized.len())];
        let mut value: serde_json::Value = serde_json::from_str(json).unwrap();
        let op = mutate_json(&mut value, &mut rng);
        let mutated = serde_json::to_string(&value).unwrap();
        let rejected_now = match Certificate::from_json(&mutated) {
            Err(_) => true,
            Ok(cert) => verify_certificate(&cert).is_err(),
        };
        assert!(
            rejected_now,
            "round {round}: mutation '{op}' survived verification"
        );
        rejected += 1;
    }
    println!(
        "ACCEPTANCE 7 (certificate engine): PASS — 121 certificates verified, {rejected}/200 mutations rejected"
    );
}

/// Criterion 8: the ordinal anchors of worm-presented theories, exactly.
#[test]
fn acceptance_8_theory_ordinals() {
    let empty = TheorySpec {
        axioms: vec![],
        schemas: vec![],
    };
    assert_eq!(pi1_ordinal(&empty), OrdinalBound::Below(CnfOrdinal::zero()));

    let one_consistency = TheorySpec {
        axioms: vec![worm(&[0])],
        schemas: vec![],
    };
    assert_eq!(
        pi1_ordinal(&one_consistency),
        OrdinalBound::Below(CnfOrdinal::one())
    );

    let pa_presentation = TheorySpec {
        axioms: vec![],
        schemas: vec![SchemaSpec { offset: 1 }],
    };
    assert_eq!(pi1_ordinal(&pa_presentation), OrdinalBound::EpsilonZero);
    println!("ACCEPTANCE 8 (theory ordinal anchors): PASS — Below(0), Below(1), e0, exact");
}

/// Criterion 9: ordinal arithmetic laws over 1000 random triples, with the
/// normal-form validator run on every produced value.
#[test]
fn acceptance_9_ordinal_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let checked = |o: CnfOrdinal| {
        assert!(o.is_valid_cnf(), "invalid CNF produced: {o:?}");
        o
    };
    for round in 0..1000 {
        let a = checked(random_below_w_w_w(&mut rng));
        let b = checked(random_below_w_w_w(&mut rng));
        let c = checked(random_below_w_w_w(&mut rng));

        let left = checked(checked(a.plus(&b)).plus(&c));
        let right = checked(a.plus(&checked(b.plus(&c))));
        assert_eq!(left, right, "associativity failed at round {round}");

        if a < b {
            assert!(
                checked(c.plus(&a)) < checked(c.plus(&b)),
                "right strictness at {round}"
            );
            assert!(
                checked(a.omega_power()) < checked(b.omega_power()),
                "omega_power at {round}"
            );
        }
        if a <= b {
            assert!(
                checked(a.plus(&c)) <= checked(b.plus(&c)),
                "left weakness at {round}"
            );
        }
    }
    println!("ACCEPTANCE 9 (ordinal arithmetic): PASS — 1000 random triples, validator clean");
}
