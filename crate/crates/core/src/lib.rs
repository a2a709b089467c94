//! Finite universal algebra and constraint satisfaction for small idempotent algebras.

pub mod algebra;
pub mod catalog;
pub mod congruence;
pub mod csp;
pub mod error;
pub mod linalg;
pub mod relation;
pub mod solvers;
pub mod structure;
pub mod subuniverse;
pub mod term;
pub mod verify;

pub use algebra::{enumerate_cibs, find_isomorphism, FiniteAlgebra, Operation, Quotient, Radix};
pub use congruence::{Congruence, CongruenceLattice};
pub use csp::{Constraint, CspInstance, Domain};
pub use error::{Error, Result};
pub use relation::Relation;
pub use solvers::{Decision, SolveOutcome, Strategy};
pub use subuniverse::Subuniverse;
pub use term::Term;

/// The guide in `book/src`, compiled so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/congruences.md")]
    mod congruences {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
