//! Quantities derived from spectra: density of states, tunneling
//! splittings, basis convergence and log-linear fits.

pub mod convergence;
pub mod dos;
pub mod fit;
pub mod tunneling;

pub use convergence::{convergence_study, ConvergencePoint, ConvergenceStudy};
pub use dos::{density_of_states, DosPoint};
pub use fit::{fit_loglinear, FitResult};
pub use tunneling::{
    parity_pairs, tunneling_rows, tunneling_scaling, wkb_transmission, BarrierExtent, ParityPair,
    Transmission, TunnelingRow, TunnelingScaling, WkbForm, WkbOptions,
};

use crate::error::Result;

/// Points `(ln|Ē|, 2πħρ)` of a density series inside `(e_lo, e_hi)`, both
/// negative, ready for [`fit_loglinear`].
pub fn lyapunov_points(points: &[DosPoint], e_lo: f64, e_hi: f64) -> Vec<(f64, f64)> {
    points
        .iter()
        .filter(|p| p.e_bar > e_lo && p.e_bar < e_hi && p.e_bar < 0.0)
        .map(|p| (p.e_bar.abs().ln(), p.scaled_density))
        .collect()
}

/// Log-linear fit of the density near the separatrix.
pub fn lyapunov_fit(points: &[DosPoint], e_lo: f64, e_hi: f64) -> Result<FitResult> {
    fit_loglinear(&lyapunov_points(points, e_lo, e_hi))
}
