//! Exact-arithmetic toolkit for density computations on small tournaments and
//! step tournamentons, with verifiers for flag-algebra PSD certificates.
//!
//! Everything numeric is done over arbitrary-precision rationals (or univariate
//! polynomials over them); there is no floating point anywhere on a verification
//! path. The crate is organized around:
//!
//! * [`exact`] — rationals, polynomials, symmetric matrices with an exact
//!   positive-semidefiniteness decision and kernel bases;
//! * [`tournament`] — finite tournaments on up to 16 vertices: canonical forms,
//!   isomorphism-free enumeration, automorphisms;
//! * [`catalog`] — the named classes `H0`–`H19` of tournaments on at most 5
//!   vertices, resolved from structural pins plus coefficient-table data;
//! * [`density`] — exact homomorphism counts and densities;
//! * [`tournamenton`] — block-constant limit objects and their exact densities;
//! * [`flags`] — rooted flags, flag families and product coefficients;
//! * [`certify`] — PSD certificates bounding linear combinations of densities;
//! * [`negative`] — the non-forcing constructions (`U_z`, the 7-vertex search);
//! * [`sampler`] — seeded `W`-random tournament generation and empirical stats.

pub mod catalog;
pub mod certify;
pub mod density;
pub mod exact;
pub mod flags;
pub mod negative;
pub mod sampler;
pub mod tournament;
pub mod tournamenton;

pub use catalog::{catalog, Catalog};
pub use exact::{parse_rat, rat, Poly, Rat, SymMatrix};
pub use tournament::Tournament;
pub use tournamenton::StepTournamenton;

/// Error for all textual formats accepted by the crate (rationals, tournament
/// encodings, linear combinations, flags, tournamenton expressions).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

impl ParseError {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        ParseError(msg.into())
    }
}
