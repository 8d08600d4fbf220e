//! Exact arithmetic for genus fields of finite abelian extensions of
//! rational function fields over finite fields.
//!
//! The crate computes, for an abelian extension of k = F_q(T) given by
//! radical or Artin-Schreier-Witt data, an explicit generator list for its
//! genus field (the maximal extension unramified at the finite primes and
//! fully split at infinity, abelian over k), together with the invariants
//! that drive the construction. An independent brute-force oracle checks
//! containment, unramifiedness, infinity splitting and bounded maximality.
//!
//! Everything is deterministic: field moduli, factorizations and generator
//! orderings are reproducible bit for bit across runs.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod composer;
pub mod error;
pub mod field;
pub mod group;
pub mod kummer;
pub mod lattice;
pub mod nonkummer;
pub mod oracle;
pub mod poly;
pub mod radicand;
pub mod ratfunc;
pub mod symbols;
pub mod witt;

pub use error::{Error, Result};
pub use field::{make_field, mult_order, ord_mod, radical_degree, Embedding, FieldCtx, FieldElem};
pub use group::{KummerGroup, Tower};
pub use poly::Poly;
pub use radicand::Radicand;
pub use ratfunc::RationalFunction;
pub use symbols::PlaceInvariants;
