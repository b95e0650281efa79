//! Exact arithmetic in reduced power algebras `A_F = Q^Λ / I_F`.
//!
//! Index sets are eventually-periodic subsets of ℕ ([`epset`]), elements of
//! `Q^Λ` are piecewise polynomials with finite exceptions ([`element`]),
//! generating filters are Fréchet filters joined with finitely many
//! eventually-periodic generators ([`filter`]). Within this class every
//! question the quotient construction raises is decidable: equality of
//! cosets, the partial order, ideal membership, and the existence of the
//! coarsening and restriction homomorphisms between algebras ([`algebra`]).
//! [`oracle`] checks the ideal/filter correspondence exhaustively on finite
//! index sets and provides pointwise brute-force deciders; [`dsl`] is the
//! small program language driven by the `redpow` binary.

// Errors carry the offending sets for their messages.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod dsl;
pub mod element;
pub mod epset;
pub mod filter;
pub mod oracle;
pub mod poly;
pub mod sample;

pub use algebra::{Algebra, AlgebraError, Coset, Hom};
pub use element::{Element, ElementError};
pub use epset::{EpSet, EpSetError};
pub use filter::{Filter, FilterError};
pub use poly::Poly;
