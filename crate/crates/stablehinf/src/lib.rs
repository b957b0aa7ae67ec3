//! Stable H-infinity controller synthesis for SISO time-delay plants.
//!
//! The pipeline: classify the delay structure of the plant numerator and
//! denominator, locate the finitely many right-half-plane zeros, factor the
//! plant into inner/outer parts, reduce weighted sensitivity minimization by
//! a stable controller to Nevanlinna-Pick interpolation by a unit, and
//! realize the resulting controller without unstable pole-zero cancellations
//! through FIR-block decomposition.
//!
//! See the `examples/` directory for one runnable example per stage; the
//! `stablehinf` binary drives the same pipeline from plant description files.

pub mod error;
pub mod numerics;
pub mod factorization;
pub mod quasipoly;
pub mod zerofinder;

pub use error::{Error, Result};
