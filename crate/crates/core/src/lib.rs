//! Numerical laboratory for the special-state picture of quantum measurement.
//!
//! Each module owns one family of computations:
//!
//! * [`decay`]: a discrete level coupled to a quasi-continuum band, survival
//!   probability, Zeno time and recurrence diagnostics.
//! * [`special`]: eigenvectors of `C†C` with `C = P U P`, the initial states
//!   that are fully decayed or fully undecayed at a chosen time.
//! * [`catmap`]: cat-map gas dynamics, coarse-grained entropy and the
//!   two-time boundary value experiment.
//! * [`kicks`]: Cauchy-distributed spin kicks, wrapped sums, outcome
//!   probabilities and conditional kick expectations.
//! * [`fields`]: Biot–Savart fields of the finite two-wire Stern–Gerlach
//!   surrogate and the order-of-magnitude kick estimates.

pub mod catmap;
pub mod decay;
mod error;
pub mod fields;
pub mod kicks;
mod par;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
