//! Bound states of the one-dimensional Coulomb-like potential `-alpha/X`
//! when position and momentum obey the deformed commutator
//! `[X, P] = i(1 + beta P^2)` (units with hbar = 1, 2m = 1).
//!
//! The crate is organised by concern:
//!
//! * [`model`]: parameters, the quantization function and the spectrum
//!   (closed form, root-found and small-`beta` series).
//! * [`wavefunction`]: normalized momentum-space eigenfunctions, their ODE
//!   residual, the boundary constant and the inverse-position operator.
//! * [`quadrature`]: adaptive integration over the real line and the
//!   state-level integrals built on it (inner product, measure integral,
//!   hermiticity defect).
//! * [`semiclassical`]: the deformed Bohr-Sommerfeld rule.
//! * [`cli`]: the command-line front end, kept in the library so it can be
//!   driven from tests.

pub mod cli;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod semiclassical;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{BoundState, Method, ModelParams, RegimeDiagnostics, SpectralFamily};
pub use quadrature::{IntegralResult, QuadratureSpec};
pub use semiclassical::ClassicalConfig;
pub use wavefunction::Wavefunction;

/// Complex scalar used for wavefunction values and integrals.
pub type Complex = num_complex::Complex64;
