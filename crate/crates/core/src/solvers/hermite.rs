//! Scaled harmonic-oscillator basis.
//!
//! With `x = Ω√(ħ/2)(a + a†)` the Hamiltonian couples `n` only to `n ± 2`
//! and `n ± 4`:
//!
//! ```text
//! H_{n,n}   = (bΩ⁴/4)(6n²+6n+3)ħ² + (aΩ²/2 + 1/(4Ω²))(2n+1)ħ
//! H_{n−2,n} = √(n(n−1)) [ (bΩ⁴/4)(4n−2)ħ² + (aΩ²/2)ħ − ħ/(4Ω²) ]
//! H_{n−4,n} = (bΩ⁴/4)ħ² √(n(n−1)(n−2)(n−3))
//! ```
//!
//! so even and odd `n` decouple into two banded blocks of half bandwidth 2.

use super::cubic::{best_positive_root, real_cubic_roots};
use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::model::PotentialParams;

#[derive(Debug, Clone)]
pub struct HermiteBlocks {
    /// Rows/columns `n = 0, 2, 4, …`.
    pub even: SymmetricMatrix,
    /// Rows/columns `n = 1, 3, 5, …`.
    pub odd: SymmetricMatrix,
}

pub(crate) fn hermite_element(n_row: usize, n_col: usize, omega: f64, params: &PotentialParams) -> f64 {
    let (lo, hi) = if n_row <= n_col { (n_row, n_col) } else { (n_col, n_row) };
    let hb = params.hbar;
    let (a, b) = (params.a, params.b);
    let o2 = omega * omega;
    let quart = b * o2 * o2 / 4.0 * hb * hb;
    let n = hi as f64;
    match hi - lo {
        0 => quart * (6.0 * n * n + 6.0 * n + 3.0) + (a * o2 / 2.0 + 1.0 / (4.0 * o2)) * (2.0 * n + 1.0) * hb,
        2 => (n * (n - 1.0)).sqrt() * (quart * (4.0 * n - 2.0) + a * o2 / 2.0 * hb - hb / (4.0 * o2)),
        4 => quart * (n * (n - 1.0) * (n - 2.0) * (n - 3.0)).sqrt(),
        _ => 0.0,
    }
}

fn check(n: usize, omega: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("hermite basis size must be positive".into()));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    Ok(())
}

/// Even/odd blocks for the basis `n = 0..N−1`.
pub fn build_hermite_blocks(n: usize, omega: f64, params: &PotentialParams) -> Result<HermiteBlocks> {
    check(n, omega)?;
    let block = |first: usize| {
        let dim = (n - first).div_ceil(2);
        let mut m = SymmetricMatrix::banded(dim, 2);
        for i in 0..dim {
            for j in i.saturating_sub(2)..=i {
                m.set(i, j, hermite_element(first + 2 * i, first + 2 * j, omega, params));
            }
        }
        m
    };
    Ok(HermiteBlocks {
        even: block(0),
        odd: block(1),
    })
}

/// The full `N×N` matrix in the original `n` ordering.
pub fn build_hermite_matrix(n: usize, omega: f64, params: &PotentialParams) -> Result<SymmetricMatrix> {
    check(n, omega)?;
    let mut m = SymmetricMatrix::banded(n, 4);
    for i in 0..n {
        for j in i.saturating_sub(4)..=i {
            m.set(i, j, hermite_element(i, j, omega, params));
        }
    }
    Ok(m)
}

fn sums(n: usize) -> (f64, f64) {
    let s1 = (0..n)
        .map(|k| {
            let k = k as f64;
            6.0 * k * k + 6.0 * k + 3.0
        })
        .sum();
    (s1, (n * n) as f64)
}

pub fn hermite_trace(n: usize, omega: f64, params: &PotentialParams) -> f64 {
    let (s1, s2) = sums(n);
    let hb = params.hbar;
    let o2 = omega * omega;
    params.b * o2 * o2 * hb * hb * s1 / 4.0 + (params.a * o2 / 2.0 + 1.0 / (4.0 * o2)) * hb * s2
}

/// Ω solving `d/dΩ Tr H = 0`, i.e. the cubic
/// `b ħ S₁ u³ + a S₂ u² − S₂/2 = 0` in `u = Ω²`.
pub fn optimize_omega_hermite(n: usize, params: &PotentialParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::Argument("hermite basis size must be positive".into()));
    }
    let (s1, s2) = sums(n);
    let roots = real_cubic_roots(params.b * params.hbar * s1, params.a * s2, 0.0, -s2 / 2.0);
    best_positive_root(&roots, |om| hermite_trace(n, om, params)).ok_or_else(|| {
        Error::numeric("optimize_omega_hermite", format!("no positive root for N = {n}"))
    })
}
