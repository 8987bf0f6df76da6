//! Numerical workbench for composition operators C_φ f = f∘φ on the Hardy
//! space H², where φ is a hyperbolic automorphism of the unit disc.
//!
//! The crate is organised around the objects it computes with:
//!
//! * [`moebius`]: linear fractional maps, their classification, fixed
//!   points, multipliers, iterates and conjugations.
//! * [`hardy`]: H² functions as finite Taylor-coefficient vectors,
//!   composition by boundary sampling, norms and Poisson quadratic forms.
//! * [`poisson`]: Poisson kernel evaluation, pointwise and orbit-sum
//!   bounds, discrete maximal functions.
//! * [`eigen`]: orbit norm sequences, Laurent-series eigenfunctions,
//!   circle-indexed partial sums, decay fits and the hypercyclicity check.
//! * [`spectrum`]: finite sections of C_φ, operator-norm estimates and
//!   residual maps over the spectral annulus.
//! * [`config`] / [`report`]: experiment configuration and deterministic
//!   CSV reports for the CLI.

pub mod cli;
pub mod config;
pub mod eigen;
pub mod error;
pub mod hardy;
pub mod moebius;
pub mod poisson;
pub mod report;
pub mod spectrum;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
