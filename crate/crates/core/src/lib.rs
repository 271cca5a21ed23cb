//! Exact calculator for codes in the zero-rate regime.
//!
//! A code over the alphabet `[q]` stops admitting positive-rate families
//! once the noise level crosses a computable threshold. This crate
//! computes that threshold exactly, together with the full toolbox around
//! it: the four list-radius notions (Chebyshev, relaxed, average,
//! weighted average), the LP relaxation with its minimax dual and
//! center rounding, the expected-radius functional on the probability
//! simplex with its extremal properties as executable checks, the
//! balanced-column code construction with its exact radius trade-off, and
//! a brute-force list-recoverability verifier.
//!
//! Closed-form quantities are exact big-integer rationals; floating point
//! is confined to the LP solver. Exhaustive searches run data-parallel
//! under the `parallel` feature (default) and have sequential fallbacks
//! with identical results.

pub mod budget;
pub mod code;
pub mod combinatorics;
pub mod construction;
pub mod distributions;
pub mod error;
pub mod lp;
pub mod par;
pub mod radii;
pub mod rational;
pub mod sampling;
pub mod suite;
pub mod thresholds;
pub mod verifier;

pub use budget::Budget;
pub use code::{hamming_distance, list_recovery_distance, Codebook, ListSet, SubsetSpace, Symbol};
pub use distributions::SimplexPoint;
pub use error::{Error, Result};
pub use rational::Rational;
