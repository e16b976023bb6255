//! Bound spectrum of the quartic double well `H = p²/2 + a x² + b x⁴` and
//! its quasiclassical analysis.
//!
//! Three variational bases (Sinc DVR, scaled Hermite functions, Lagrange
//! mesh on Hermite nodes) and EBK quantization produce [`Spectrum`]s; the
//! [`classical`] and [`analysis`] modules compare them with the classical
//! period, the tunneling splittings and the logarithmic divergence of the
//! density of states at the barrier top.

pub mod analysis;
pub mod classical;
pub mod ebk;
pub mod error;
pub mod io;
pub mod model;
pub mod solvers;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{
    derived_constants, potential, DerivedConstants, EnergyLevel, Method, Parity, PotentialParams,
    Spectrum, SpectrumMetadata,
};
