//! Reflection symmetry of grid bases.
//!
//! On a mesh symmetric under `x ↦ −x` (Sinc, LMM) the Hamiltonian commutes
//! with index reversal `J`. Changing to the basis `(e_i ± e_{n−1−i})/√2`
//! (plus the centre node for odd `n`) splits it into an even and an odd block.

use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::model::Parity;

#[derive(Debug, Clone)]
pub struct MirrorBlocks {
    pub even: SymmetricMatrix,
    pub odd: SymmetricMatrix,
    dim: usize,
}

/// Splits a mirror-symmetric matrix into its even and odd blocks.
///
/// Block index `i < n/2` pairs node `i` with node `n−1−i`; for odd `n` the
/// even block has one extra trailing row for the centre node.
pub fn mirror_blocks(m: &SymmetricMatrix) -> Result<MirrorBlocks> {
    let n = m.dim();
    let scale = m.inf_norm().max(f64::MIN_POSITIVE);
    if !m.is_mirror_symmetric(1e-12 * scale) {
        return Err(Error::Argument("matrix is not reflection symmetric".into()));
    }
    let half = n / 2;
    let centre = (n % 2 == 1).then_some(half);
    let even_dim = half + centre.is_some() as usize;
    let mut even = SymmetricMatrix::zeros(even_dim);
    let mut odd = SymmetricMatrix::zeros(half);
    for i in 0..half {
        for j in 0..=i {
            let direct = m.get(i, j);
            let crossed = m.get(i, n - 1 - j);
            even.set(i, j, direct + crossed);
            odd.set(i, j, direct - crossed);
        }
    }
    if let Some(c) = centre {
        for i in 0..half {
            even.set(half, i, std::f64::consts::SQRT_2 * m.get(c, i));
        }
        even.set(half, half, m.get(c, c));
    }
    Ok(MirrorBlocks { even, odd, dim: n })
}

impl MirrorBlocks {
    pub fn full_dim(&self) -> usize {
        self.dim
    }

    /// Full-mesh coefficients of an even-block vector.
    pub fn expand_even(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let half = n / 2;
        let mut out = vec![0.0; n];
        for i in 0..half {
            out[i] = v[i] * FRAC_1_SQRT_2;
            out[n - 1 - i] = v[i] * FRAC_1_SQRT_2;
        }
        if n % 2 == 1 {
            out[half] = v[half];
        }
        out
    }

    pub fn expand_odd(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n / 2 {
            out[i] = v[i] * FRAC_1_SQRT_2;
            out[n - 1 - i] = -v[i] * FRAC_1_SQRT_2;
        }
        out
    }
}

/// Mirror overlap `s = Σ c_k c_{−k} / Σ c_k²` of coefficients on a symmetric
/// mesh: even above 0.9, odd below −0.9, unknown in between.
pub fn classify_parity(coeffs: &[f64]) -> Parity {
    let n = coeffs.len();
    let norm: f64 = coeffs.iter().map(|c| c * c).sum();
    if n == 0 || norm == 0.0 || !norm.is_finite() {
        return Parity::Unknown;
    }
    let overlap: f64 = (0..n).map(|i| coeffs[i] * coeffs[n - 1 - i]).sum();
    let s = overlap / norm;
    if s > 0.9 {
        Parity::Even
    } else if s < -0.9 {
        Parity::Odd
    } else {
        Parity::Unknown
    }
}
