//! Sahlqvist and inductive inequalities for normal DLE logics: classification,
//! parametric Gödel–McKinsey–Tarski translation, finite-frame semantics,
//! complex algebras and first-order correspondents.

pub mod algebra;
pub mod cli;
pub mod correspond;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod gentree;
pub mod semantics;
pub mod signature;
pub mod translate;

pub use error::Error;
pub use formula::{Formula, Inequality, VarOrderType};
pub use gentree::DependencyOrder;
pub use signature::{Family, Polarity, Signature};

/// Default cap on frame sizes for exhaustive checks; `SK_MAX_WORLDS` overrides it.
pub const DEFAULT_MAX_WORLDS: usize = 4;

pub fn max_worlds_cap() -> usize {
    std::env::var("SK_MAX_WORLDS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_WORLDS)
}
