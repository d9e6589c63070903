//! Finite semigroups, integral monoid rings and free resolutions.
//!
//! The crate builds partial free resolutions of the trivial module `ℤ` over
//! `ℤS` for finite monoids `S`, certifies their exactness with exact integer
//! lattice computations, and implements constructions that transfer
//! resolutions between a monoid and its ideals, maximal subgroups and left
//! groups. Right-module questions are answered by running the same code on the
//! opposite semigroup.
//!
//! Conventions used throughout:
//! - semigroup elements are `0..order`, external text formats are 1-based;
//! - integer vectors are rows and matrices act on the right (`v·M`).
// Index loops mirror the matrix and poset notation they implement.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod corpus;
pub mod error;
pub mod format;
pub mod fp1;
pub mod lattice;
pub mod rees;
pub mod report;
pub mod resolution;
pub mod semigroup;
pub mod transfer;

pub use error::Error;
