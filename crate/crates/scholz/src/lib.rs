//! Residue symbols, fundamental units, class groups, and empirical
//! verification of Scholz-type reciprocity laws over Q and the five
//! norm-Euclidean imaginary quadratic fields.
//!
//! The crate has five layers:
//!
//! * [`field`] / [`element`] / [`primes`] / [`finite`] — exact arithmetic
//!   in the ground rings Z, Z[i], Z[sqrt(-2)], Z[(1+sqrt(-d))/2] and their
//!   residue fields;
//! * [`symbols`] — quadratic and quartic residue symbols, unit-group
//!   symbols;
//! * [`real_quadratic`] — Pell units and narrow class groups of real
//!   quadratic fields via reduced indefinite forms;
//! * [`relquad`] — quadratic extensions K = F(sqrt(mu)) of a ground
//!   field: integral bases, ideals, unit search, class groups by relation
//!   matrices, the ambiguous class number formula, and the supplementary
//!   laws;
//! * [`verify`] / [`report`] — per-theorem clause evaluation, character
//!   tables, conjecture scans, and sweep drivers used by the `scholz`
//!   binary.

pub mod cache;
pub mod element;
pub mod error;
pub mod field;
pub mod finite;
pub mod primes;
pub mod real_quadratic;
pub mod relquad;
pub mod report;
pub mod symbols;
pub mod verify;

pub use element::RingElement;
pub use error::{Error, Result};
pub use field::GroundField;
pub use symbols::Sign;
