//! Sinc DVR on the uniform grid `x_k = kΩ`, `k = −k_max..=k_max`.
//!
//! Kinetic elements of `−(ħ²/2) d²/dx²`:
//! `T_kk = ħ²π²/(6Ω²)`, `T_{kk'} = ħ²(−1)^{k'−k}/(Ω²(k'−k)²)`.
//! The potential is diagonal, `V(kΩ)`.

use std::f64::consts::PI;

use super::cubic::{best_positive_root, real_cubic_roots};
use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::model::PotentialParams;

fn check_size(n: usize) -> Result<usize> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Argument(format!(
            "sinc basis size must be odd and >= 3 (N = 2 k_max + 1), got {n}"
        )));
    }
    Ok((n - 1) / 2)
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    Ok(())
}

pub fn build_sinc_matrix(n: usize, omega: f64, params: &PotentialParams) -> Result<SymmetricMatrix> {
    let k_max = check_size(n)? as i64;
    check_omega(omega)?;
    let hb2 = params.hbar * params.hbar;
    let t_scale = hb2 / (omega * omega);
    let t_diag = t_scale * PI * PI / 6.0;
    // off-diagonals depend only on |k − k'|
    let t_off: Vec<f64> = (0..n)
        .map(|d| {
            if d == 0 {
                t_diag
            } else {
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                sign * t_scale / (d * d) as f64
            }
        })
        .collect();
    Ok(SymmetricMatrix::from_lower_fn(n, |i, j| {
        let mut v = t_off[i - j];
        if i == j {
            let k = i as i64 - k_max;
            v += params.potential(k as f64 * omega);
        }
        v
    }))
}

fn power_sums(k_max: usize) -> (f64, f64) {
    (1..=k_max).fold((0.0, 0.0), |(s2, s4), k| {
        let k2 = (k * k) as f64;
        (s2 + 2.0 * k2, s4 + 2.0 * k2 * k2)
    })
}

/// `Tr H(Ω) = Nħ²π²/(6Ω²) + a S₂ Ω² + b S₄ Ω⁴`.
pub fn sinc_trace(n: usize, omega: f64, params: &PotentialParams) -> Result<f64> {
    let k_max = check_size(n)?;
    let (s2, s4) = power_sums(k_max);
    let hb2 = params.hbar * params.hbar;
    let o2 = omega * omega;
    Ok(n as f64 * hb2 * PI * PI / (6.0 * o2) + params.a * s2 * o2 + params.b * s4 * o2 * o2)
}

/// Ω solving `d/dΩ Tr H = 0`.
///
/// Multiplying the stationarity condition by Ω³ gives the cubic
/// `4b S₄ u³ + 2a S₂ u² − (ħ²π²/3) N = 0` in `u = Ω²`.
pub fn optimize_omega_sinc(n: usize, params: &PotentialParams) -> Result<f64> {
    let k_max = check_size(n)?;
    let (s2, s4) = power_sums(k_max);
    let hb2 = params.hbar * params.hbar;
    let roots = real_cubic_roots(
        4.0 * params.b * s4,
        2.0 * params.a * s2,
        0.0,
        -hb2 * PI * PI / 3.0 * n as f64,
    );
    best_positive_root(&roots, |om| sinc_trace(n, om, params).unwrap_or(f64::INFINITY)).ok_or_else(
        || Error::numeric("optimize_omega_sinc", format!("no positive root for N = {n}")),
    )
}
