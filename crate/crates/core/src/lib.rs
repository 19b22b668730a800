//! Rate-region toolkit for the two-user discrete memoryless interference
//! channel whose state is known non-causally at both transmitters.
//!
//! The crate computes the achievable regions of the simultaneous-encoding
//! and superposition-encoding schemes (rate splitting plus Gel'fand–Pinsker
//! binning), projects them onto the `(R1, R2)` plane with exact
//! Fourier–Motzkin elimination, explores auxiliary-distribution space, and
//! validates the coding schemes with a small Monte Carlo simulator.

pub mod channel;
pub mod fm;
pub mod prob;
pub mod regions;
pub mod search;
pub mod sim;
pub mod theorems;
