//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by grid operations, solvers and propagation.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Two fields that must live on the same grid have different lengths.
    #[error("dimension mismatch: expected {expected} points, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Orbital index outside the occupied set.
    #[error("orbital index {index} out of range (set holds {len})")]
    IndexOutOfRange { index: usize, len: usize },

    /// Overlap matrix too ill-conditioned to orthonormalize.
    #[error("degenerate orbital set: overlap condition number {cond:.3e} exceeds 1e12")]
    DegenerateSet { cond: f64 },

    /// A matrix that must be hermitian is not, beyond tolerance.
    #[error("symmetry violation: max |m - m^H| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NonHermitian { deviation: f64, tolerance: f64 },

    /// A value left its admissible domain (negative density and the like).
    #[error("domain error: {0}")]
    Domain(String),

    /// Static solver ran out of iterations.
    #[error(
        "static solve did not converge in {iterations} iterations \
         (orbital residual {residual:.3e}, symmetry residual {sym_residual:.3e})"
    )]
    NonConvergence {
        iterations: usize,
        residual: f64,
        sym_residual: f64,
    },

    /// NaN appeared during iteration.
    #[error("divergence at iteration {iteration}: non-finite value in {context}")]
    Divergence { iteration: usize, context: String },

    /// Unitary gradient line search shrank the step below useful size.
    #[error("symmetry-condition stall: step underflow with residual {residual:.3e}")]
    SymmetryStall { residual: f64 },

    /// Orthonormality broke down during propagation.
    #[error(
        "propagation instability at t = {time:.4}: orthonormality drift {drift:.3e} \
         exceeds 1e-6; reduce the time step"
    )]
    StabilityLoss { time: f64, drift: f64 },

    /// Not enough samples for the requested analysis.
    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

/// Crate-wide result alias.
pub type Result<V> = std::result::Result<V, CoreError>;
