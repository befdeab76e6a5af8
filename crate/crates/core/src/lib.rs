//! Finite unary semigroups: construction, identity checking, and
//! machine certification of facts about matrix semigroups with
//! transposition, Moore-Penrose inversion, symplectic and anti-diagonal
//! involutions.
//!
//! The crate is organized by subsystem:
//!
//! * [`semigroup`] - the table-backed kernel: validation, closures,
//!   products, quotients, morphism search, Green's R-relation.
//! * [`terms`] - unary terms, involutory words, identity checking,
//!   Zimin words and bounded isoterm search.
//! * [`constructions`] - groups, unary Rees matrix semigroups, the named
//!   six- and ten-element examples, and the critical semigroups `T_k`.
//! * [`matrices`] - exact matrices over `GF(p^e)` with involution and over
//!   the Boolean semiring, Moore-Penrose inverses, matrix-family builders.
//! * [`sapir`] - the substitution system over `a_ij` letters and its
//!   bounded twisted 0-direct union model.
//! * [`claims`] - the claim registry that re-derives each finite fact.
//! * [`usg`] - the `.usg` text interchange format.

pub mod claims;
pub mod constructions;
mod error;
pub mod matrices;
pub mod sapir;
pub mod semigroup;
pub mod terms;
pub mod usg;

pub use error::{Error, Result};
pub use semigroup::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
pub use terms::UnaryTerm;

/// Default evaluation budget for exhaustive identity checks.
pub const DEFAULT_ASSIGNMENT_BUDGET: u64 = 200_000_000;

/// Default node budget for morphism search.
pub const DEFAULT_MORPHISM_BUDGET: u64 = 100_000_000;
