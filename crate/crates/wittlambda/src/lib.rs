//! Exact-arithmetic lambda-rings and the combinatorics they induce.
//!
//! The crate computes with big Witt vectors over arbitrary divisor-closed
//! truncation sets, lambda-structures given by commuting Frobenius lifts on
//! finitely presented rings, the F_1-point combinatorics of toric fans, and
//! the Carlitz-module function-field analogue. Everything is exact: BigInt
//! and BigRational coefficients, finite fields by fixed irreducibles, no
//! floating point anywhere.
//!
//! Enumerations (point searches, brute-force chart counts, verification
//! sweeps) run data-parallel on rayon under the default `parallel` feature
//! and sequentially without it; results are identical either way.

pub mod arith;
pub mod carlitz;
pub mod error;
pub mod f1;
pub mod fq;
pub mod lambda;
pub mod monoid;
pub mod par;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod textio;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
