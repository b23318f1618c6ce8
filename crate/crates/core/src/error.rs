//! Error type shared by the solver, Berry-phase and oracle modules.

use std::fmt;

use crate::schrodinger::SpectralResult;

/// Errors produced by the library.
#[derive(Debug)]
pub enum Error {
    /// A model parameter violates its domain (N >= 1, D > 0, alpha >= 0, ...).
    InvalidParameter(String),
    /// The sampled potential does not confine the particle (a grid edge lies
    /// at or below the interior minimum).
    NonConfining { edge_value: f64, interior_min: f64 },
    /// An iterative eigensolver failed to reach its residual target.
    NoConvergence { iterations: usize, residual: f64 },
    /// Grid refinement hit its step or size limit before the eigenvalue
    /// stabilized. Carries the best result obtained so far.
    MaxRefinementExceeded {
        steps: usize,
        best: Box<SpectralResult>,
    },
    /// Derivative input is not uniformly spaced in alpha.
    NonUniformSpacing {
        index: usize,
        expected: f64,
        found: f64,
    },
    /// The Symanzik change of variables degenerates (alpha = 0).
    DegenerateScalingMap,
    /// Log-log fit input is unusable (too few points or non-positive values).
    FitInput(String),
    /// Requested oracle basis exceeds the dimension guard.
    DimensionTooLarge { dim: usize, max: usize },
    /// The oracle ground state is quasi-degenerate; the overlap-product loop
    /// refuses to run on an ill-defined state.
    QuasiDegenerate { gap: f64, threshold: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonConfining {
                edge_value,
                interior_min,
            } => write!(
                f,
                "potential is not confining: edge value {edge_value} does not exceed \
                 interior minimum {interior_min}"
            ),
            Error::NoConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "eigensolver did not converge after {iterations} iterations \
                 (residual {residual:.3e})"
            ),
            Error::MaxRefinementExceeded { steps, best } => write!(
                f,
                "grid refinement limit reached after {steps} steps \
                 (best energy {:.12e})",
                best.energy
            ),
            Error::NonUniformSpacing {
                index,
                expected,
                found,
            } => write!(
                f,
                "non-uniform alpha spacing at index {index}: expected step {expected}, \
                 found {found}"
            ),
            Error::DegenerateScalingMap => {
                write!(f, "Symanzik map is degenerate at alpha = 0")
            }
            Error::FitInput(msg) => write!(f, "unusable fit input: {msg}"),
            Error::DimensionTooLarge { dim, max } => {
                write!(f, "oracle basis dimension {dim} exceeds guard {max}")
            }
            Error::QuasiDegenerate { gap, threshold } => write!(
                f,
                "ground state quasi-degenerate: gap {gap:.3e} below threshold {threshold:.1e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
