//! Symbolic engine for the closed fragment of polymodal provability logic.
//!
//! The crate provides, bottom up:
//!
//! * [`ordinal`] — Cantor normal form arithmetic below epsilon_0;
//! * [`syntax`] — closed modal formulas, worms, parsing and printing;
//! * [`worms`] — the well-order `<0` on worms and its ordinal assignment;
//! * [`calculus`] — Hilbert-style proof objects, an independent checker, and
//!   generators that emit checker-accepted derivations (inclusion lemmas for
//!   the fundamental-sequence formulas, and order certificates `B -> <0>A`);
//! * [`reduction`] — fundamental sequences `Q^k_n`, reflection-rule
//!   derivations and their elimination, and the collapse of the rule to a
//!   single consistency axiom;
//! * [`analysis`] — transfinite-descent consistency certificates and the
//!   `Pi^0_1`-style ordinal of worm-axiomatized theories, parametrized by an
//!   abstract base-theory provider.
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared or moved across threads freely.

pub mod analysis;
pub mod calculus;
pub mod ordinal;
pub mod reduction;
pub mod syntax;
mod text;
pub mod worms;

pub use ordinal::{ord_cmp, parse_ordinal, print_ordinal, CnfOrdinal, OrdKind, OrdinalBound};
pub use syntax::{as_worm, normalize_top, parse_formula, print_formula, Formula, ModalIndex, Worm};
pub use text::ParseError;
pub use worms::{
    canonical_worm, demote, promote, worm_cmp, worm_cmp_structural, worm_of_ordinal, worm_ordinal,
    WormError,
};

#[cfg(test)]
mod concurrency {
    // all public value types move and share across threads freely
    #[test]
    fn value_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::CnfOrdinal>();
        assert_send_sync::<crate::Formula>();
        assert_send_sync::<crate::Worm>();
        assert_send_sync::<crate::calculus::Proof>();
        assert_send_sync::<crate::analysis::Certificate>();
        assert_send_sync::<crate::analysis::TheorySpec>();
    }
}
