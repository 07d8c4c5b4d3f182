//! Exact certification of constant-rank matrix pencils.
//!
//! A linear space of a x b matrices of dimension n+1 is encoded as the
//! pencil of linear forms it induces on P^n. This crate constructs the
//! classical examples of such spaces, certifies that a pencil has constant
//! rank (symbolically above, and by exhaustive finite-field enumeration,
//! random rational sampling or stratified unit minors below), computes the
//! splitting type of the image sheaf along lines, runs the Chern-class
//! obstruction calculus that bounds the possible dimensions, and assembles
//! the full table of l(r; a) — the maximal dimension of a constant-rank-r
//! space of a x a matrices — which is known exactly for a <= 10.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! never floating point.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example westwick_splitting   # rank-4 plane pencil, splitting (-1,-1,0,0)
//! cargo run --example construct_and_verify # band + embedded spaces with certificates
//! cargo run --example chern_calculus       # twisted tangent classes and inverses
//! cargo run --example obstructions         # cubic enumeration, dim-5 sieve, corank-2 chain
//! cargo run --example bounds_table         # the full l(r;a) table for a <= 10
//! cargo run --example skew_pencils         # skew spaces of corank one for odd a
//! cargo run --example finite_field_search  # exhaustive subspace search over F_p
//! ```
//!
//! The same functionality is scriptable through the thin `constrank`
//! binary; see the README for the command surface.

pub mod bounds;
pub mod chern;
pub mod constructions;
pub mod exact;
pub mod pencil;
pub mod report;
pub mod rng;
pub mod search;

pub use bounds::{bound, explain, table, BoundRecord};
pub use chern::ChernPoly;
pub use constructions::{banded, embedded, skew3, skew_search_candidate, westwick5};
pub use pencil::{
    line_splitting_type, verify_constant_rank, MatrixSpace, RankCertificate, SplittingType,
    Strategy,
};
pub use report::RunConfig;
