//! Constraint satisfaction over finite structures that carry both operations
//! and relations.
//!
//! The crate provides:
//!
//! - a text format (`.finstr`) and core constructions for finite structures:
//!   graphs, products, substructures, quotients, expansions;
//! - terms, identities, clones of term and polynomial operations at bounded
//!   arity, free algebras, and a star-extension growth construction;
//! - congruence generation and lattices with tame-congruence primitives:
//!   minimal sets, traces, cover types, separating polynomials;
//! - a brute-force homomorphism engine used as the test oracle everywhere;
//! - polynomial-time homomorphism enumerators (semilattice targets, group
//!   targets, and a certificate-driven recursive enumerator) together with
//!   certificate derivation and classification of small algebras;
//! - instance rewriting by identity enforcement and quantifier-free
//!   primitive-positive reductions between term-equivalent templates;
//! - end-to-end solvers and the Boolean dichotomy classifier;
//! - a (k,l)-minimality laboratory for relational width experiments.
//!
//! Start with the `examples/` directory; each file is a runnable tour of one
//! capability. The `finstr` binary exposes the same functionality as
//! subcommands.

pub mod cert;
pub mod cli;
pub mod clone;
pub mod congruence;
pub mod error;
pub mod format;
pub mod hom;
pub mod paper;
pub mod random;
pub mod rewrite;
pub mod signature;
pub mod solve;
pub mod structure;
pub mod table;
pub mod tct;
pub mod term;
pub mod width;

pub use congruence::Congruence;
pub use error::{Error, Result};
pub use format::{parse_structure, serialize_structure};
pub use hom::{count_homs, enumerate_homs, find_hom, hom_exists, is_homomorphism, Homomorphism};
pub use signature::Signature;
pub use structure::Structure;
pub use table::OpTable;
pub use term::{eval_term, parse_identities, parse_term, satisfies_identity, Identity, Term};
