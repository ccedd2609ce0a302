//! The order `<0` on worms and its order isomorphism with epsilon_0.
//!
//! `A <0 B` holds when `B -> <0>A` is derivable; on worms this is a
//! well-order of type epsilon_0. The ordinal assignment `o` realizing the
//! isomorphism is computed by recursion on the split at the leftmost 0:
//!
//! * `o(T) = 0`
//! * `o(W) = w^o(demote(W))` for nonempty 0-free `W`
//! * `o(H <0> B) = o(B) + w^o(demote(H))` with `H` the maximal 0-free prefix
//!
//! Decision procedures here are restricted to natural modal indices;
//! transfinite indices are rejected rather than partially supported.
//!
//! Two comparators are provided on purpose: [`worm_cmp`] goes through the
//! ordinal assignment, [`worm_cmp_structural`] recurses on the decomposition
//! directly without ever materializing an ordinal. They are checked against
//! each other (and against proof certificates) by the test suites.

use crate::ordinal::CnfOrdinal;
use crate::syntax::{ModalIndex, Worm};
use std::cmp::Ordering;
use thiserror::Error;

/// Largest modal index the decision procedures accept. The ordinal of a
/// worm nests one `w^(.)` level per index value, so unbounded indices would
/// build unboundedly deep towers; beyond this the index is treated like a
/// transfinite one and rejected.
pub const MAX_DECIDABLE_INDEX: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WormError {
    #[error("transfinite modal index: decision procedure is restricted to natural indices")]
    TransfiniteIndex,
    #[error("modal index exceeds the decidable bound {MAX_DECIDABLE_INDEX}")]
    IndexTooLarge,
    #[error("index 0 cannot be demoted")]
    ZeroIndex,
}

pub(crate) fn checked_indices(w: &Worm) -> Result<Vec<u64>, WormError> {
    let nats = w.nat_indices().ok_or(WormError::TransfiniteIndex)?;
    if nats.iter().any(|&n| n > MAX_DECIDABLE_INDEX) {
        return Err(WormError::IndexTooLarge);
    }
    Ok(nats)
}

/// Every index decreased by 1. Errors if an index is 0 or transfinite.
pub fn demote(w: &Worm) -> Result<Worm, WormError> {
    let nats = checked_indices(w)?;
    if nats.contains(&0) {
        return Err(WormError::ZeroIndex);
    }
    Ok(Worm(nats.iter().map(|&n| ModalIndex::nat(n - 1)).collect()))
}

/// Every index increased by 1; inverse of [`demote`].
pub fn promote(w: &Worm) -> Result<Worm, WormError> {
    let nats = checked_indices(w)?;
    Ok(Worm(nats.iter().map(|&n| ModalIndex::nat(n + 1)).collect()))
}

/// The ordinal assignment `o`.
pub fn worm_ordinal(w: &Worm) -> Result<CnfOrdinal, WormError> {
    Ok(ordinal_at(&checked_indices(w)?, 0))
}

/// The canonical normal-form worm denoting `a`: the unique worm produced by
/// inverting the `o` recursion, peeling the smallest Cantor term first.
pub fn worm_of_ordinal(a: &CnfOrdinal) -> Worm {
    Worm::from_nats(&worm_of_at(a, 0))
}

/// `worm_of_ordinal(worm_ordinal(w))`, the canonical representative of `w`'s
/// equivalence class.
pub fn canonical_worm(w: &Worm) -> Result<Worm, WormError> {
    Ok(worm_of_ordinal(&worm_ordinal(w)?))
}

/// Comparison through the ordinal assignment. `Equal` means equivalence under
/// the order, not syntactic identity.
pub fn worm_cmp(a: &Worm, b: &Worm) -> Result<Ordering, WormError> {
    Ok(worm_ordinal(a)?.cmp(&worm_ordinal(b)?))
}

/// Independent comparator: structural recursion on the `H <0> B` split and
/// demotion, mirroring Cantor-normal-form comparison without computing `o`.
pub fn worm_cmp_structural(a: &Worm, b: &Worm) -> Result<Ordering, WormError> {
    let na = checked_indices(a)?;
    let nb = checked_indices(b)?;
    Ok(cmp_at(&na, 0, &nb, 0))
}

// --- internals on natural-index worms ---------------------------------------
//
// A shift `s` reads the slice as already demoted `s` times: the effective
// index of `w[i]` is `w[i] - s`. All entries are assumed >= s.

pub(crate) fn ordinal_at(w: &[u64], s: u64) -> CnfOrdinal {
    debug_assert!(w.iter().all(|&i| i >= s));
    if w.is_empty() {
        return CnfOrdinal::zero();
    }
    match w.iter().position(|&i| i == s) {
        None => ordinal_at(w, s + 1).omega_power(),
        Some(p) => {
            let head = ordinal_at(&w[..p], s + 1).omega_power();
            ordinal_at(&w[p + 1..], s).plus(&head)
        }
    }
}

pub(crate) fn worm_of_at(a: &CnfOrdinal, s: u64) -> Vec<u64> {
    if a.is_zero() {
        return Vec::new();
    }
    let (rest, gamma) = a.peel_smallest().unwrap();
    if gamma.is_zero() {
        let mut v = vec![s];
        v.extend(worm_of_at(&rest, s));
        v
    } else if rest.is_zero() {
        worm_of_at(&gamma, s + 1)
    } else {
        let mut v = worm_of_at(&gamma, s + 1);
        v.push(s);
        v.extend(worm_of_at(&rest, s));
        v
    }
}

/// Head/tail at the leftmost index equal to `s`. A worm without such an
/// index is its own head with an empty tail; the two readings assign the
/// same ordinal.
fn split_at(w: &[u64], s: u64) -> (&[u64], &[u64]) {
    match w.iter().position(|&i| i == s) {
        Some(p) => (&w[..p], &w[p + 1..]),
        None => (w, &w[w.len()..]),
    }
}

fn cmp_at(a: &[u64], sa: u64, b: &[u64], sb: u64) -> Ordering {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let (ha, ta) = split_at(a, sa);
    let (hb, tb) = split_at(b, sb);
    match cmp_at(ha, sa + 1, hb, sb + 1) {
        // o(a) = o(ta) + w^h with the w^h strictly between the two sides:
        // a exceeds b exactly when its tail already does.
        Ordering::Less => {
            if cmp_at(ta, sa, b, sb) == Ordering::Less {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        Ordering::Greater => {
            if cmp_at(tb, sb, a, sa) == Ordering::Less {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        Ordering::Equal => {
            // equal leading w^h: compare tails with terms below w^h discarded,
            // since those are absorbed on both sides
            let ta2 = truncate_below(ta, sa, ha, sa + 1);
            let tb2 = truncate_below(tb, sb, hb, sb + 1);
            cmp_at(&ta2, sa, &tb2, sb)
        }
    }
}

/// A worm denoting `o(x)` with all Cantor terms below `w^o(d)` discarded.
fn truncate_below(x: &[u64], sx: u64, d: &[u64], sd: u64) -> Vec<u64> {
    if x.is_empty() {
        return Vec::new();
    }
    let (hx, tx) = split_at(x, sx);
    let rest = truncate_below(tx, sx, d, sd);
    if cmp_at(hx, sx + 1, d, sd) != Ordering::Less {
        let mut out = hx.to_vec();
        // a bare nonempty head denotes the same ordinal as head<s>; the
        // empty head does not, so the separator must stay
        if !rest.is_empty() || hx.is_empty() {
            out.push(sx);
            out.extend(rest);
        }
        out
    } else {
        rest
    }
}
