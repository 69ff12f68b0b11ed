//! Numerical laboratory for the second-variation theory of minimal
//! hypersurfaces of revolution in `R^n`.
//!
//! The crate builds the two model hypersurfaces with finite total curvature
//! (the `n`-dimensional catenoid and the hyperplane), reduces the Jacobi
//! operator `J = Δ + |A|²` to weighted Sturm–Liouville problems per
//! spherical-harmonic mode, and computes Morse index, certified nullity
//! lower bounds, bounded harmonic functions and their differentials,
//! the coordinate-projection test functions built from harmonic 1-forms,
//! and the pointwise rigidity data (principal-curvature multiplicities,
//! constraint ranks, frame relations).
//!
//! Everything here is `no_std + alloc`: pure computation over immutable
//! grids. File formats, caching and the command-line front end live in the
//! companion `minsurf-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod geometry;
pub mod harmonic;
pub mod linalg;
pub mod profile;
pub mod quad;
pub mod rigidity;
pub mod sampling;
pub mod spectral;
pub mod sphere;
pub mod tridiag;
pub mod variational;

#[cfg(any(test, feature = "test-oracles"))]
pub mod oracle;

use alloc::string::String;
use core::fmt;

/// Errors shared across the computational modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    Domain(String),
    /// The requested tolerance could not be met on the given grid.
    Accuracy { requested: f64, achieved: f64 },
    /// A field fails the integrability tail model.
    NotIntegrable(String),
    /// A construction diverges (e.g. bounded harmonic limits in `n = 3`).
    Divergent(String),
    /// The grid does not reach far enough for the requested fit or check.
    InsufficientRange { needed: f64, available: f64 },
    /// Identically-zero or otherwise degenerate input.
    DegenerateInput(String),
    /// A finite-difference stencil would reach outside the grid.
    StencilMargin { index: usize, margin: usize },
    /// Inputs that must share a grid or a shape do not.
    InputMismatch(String),
    /// The computation terminated without a certified answer.
    Inconclusive(String),
    /// A constructed object failed its own invariants (broken integrator).
    InternalConsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Accuracy {
                requested,
                achieved,
            } => write!(
                f,
                "accuracy error: requested {requested:e}, achieved {achieved:e}"
            ),
            Error::NotIntegrable(msg) => write!(f, "not integrable: {msg}"),
            Error::Divergent(msg) => write!(f, "divergent: {msg}"),
            Error::InsufficientRange { needed, available } => write!(
                f,
                "insufficient range: need {needed}, grid reaches {available}"
            ),
            Error::DegenerateInput(msg) => write!(f, "degenerate input: {msg}"),
            Error::StencilMargin { index, margin } => write!(
                f,
                "sample {index} is within {margin} nodes of the boundary stencil margin"
            ),
            Error::InputMismatch(msg) => write!(f, "input mismatch: {msg}"),
            Error::Inconclusive(msg) => write!(f, "inconclusive: {msg}"),
            Error::InternalConsistency(msg) => write!(f, "internal consistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
