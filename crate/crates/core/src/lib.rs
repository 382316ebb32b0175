//! 1D real-space quantum dynamics with orbital-dependent mean fields.
//!
//! The crate implements exchange-only LDA, Hartree-Fock and the
//! double-set self-interaction correction (SIC) for soft-Coulomb model
//! atoms and molecules on a periodic spectral grid: ground states by
//! damped gradient iteration with interlaced unitary optimization, and
//! real-time propagation with boost excitation, absorbing boundaries and
//! conservation diagnostics.
//!
//! Everything is generic over the real scalar type; `f64` aliases for the
//! main types are exported at the crate root.

pub mod error;
pub mod exchange;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod orbital;
pub mod quad;
pub mod scalar;

pub use error::{CoreError, Result};
pub use scalar::Scalar;

/// f64 aliases used by the CLI and most tests.
pub mod f64p {
    pub type Grid1D = crate::grid::Grid1D<f64>;
    pub type Orbital = crate::orbital::Orbital<f64>;
    pub type OrbitalSet = crate::orbital::OrbitalSet<f64>;
    pub type DensityField = crate::orbital::DensityField<f64>;
    pub type SquareMatrixC = crate::linalg::SquareMatrixC<f64>;
    pub type UnitaryMap = crate::linalg::UnitaryMap<f64>;
    pub type ModelParams = crate::model::ModelParams<f64>;
    pub type Model1D = crate::model::Model1D<f64>;
    pub type HartreeKernel = crate::model::HartreeKernel<f64>;
    pub type ExchangeTable = crate::exchange::ExchangeTable<f64>;
}
