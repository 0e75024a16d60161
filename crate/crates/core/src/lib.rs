//! Numerical laboratory for a zero-point-field model built from an infinite
//! collection of harmonic oscillators.
//!
//! | module | what it computes |
//! |---|---|
//! | [`units`] | dimensioned quantities, CODATA constants in Gaussian, SI and natural units |
//! | [`oscillator`] | single-oscillator ground state, width, sampling |
//! | [`field`] | spectral mode draws, field synthesis, coarse-grained RMS and its l⁻² scaling |
//! | [`casimir`] | plate force closed form and the regularized mode-sum cross-check |
//! | [`lamb`] | ½⟨(Δr)²⟩∇²V level shift with a Welton jitter estimate |
//! | [`coil`] | induced coil current from the fluctuating field |
//! | [`cli`] | the `zpflab` command line |

pub mod casimir;
pub mod cli;
pub mod coil;
pub mod error;
pub mod field;
pub mod lamb;
pub mod numeric;
pub mod oscillator;
pub mod units;

pub use error::{Error, Result};
