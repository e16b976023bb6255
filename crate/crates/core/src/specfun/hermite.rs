//! Roots of the physicists' Hermite polynomial `H_N`.

use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};

pub const MAX_HERMITE_NODES: usize = 2000;

/// Orthonormal Hermite recurrence evaluated at `x`: returns
/// `(p_N, p_{N−1})` up to a common positive factor. The factor is rescaled
/// on the fly so large N does not overflow; only ratios are meaningful.
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = std::f64::consts::PI.powf(-0.25);
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * p - ((jf - 1.0) / jf).sqrt() * p_prev;
        p_prev = p;
        p = next;
        let mag = p.abs().max(p_prev.abs());
        if mag > 1e150 {
            p *= 1e-150;
            p_prev *= 1e-150;
        }
    }
    (p, p_prev)
}

/// Newton step `p_N / p_N'` with `p_N' = √(2N) p_{N−1}`.
pub fn hermite_newton_step(n: usize, x: f64) -> f64 {
    let (p, p_prev) = hermite_pair(n, x);
    p / ((2.0 * n as f64).sqrt() * p_prev)
}

/// The N real roots of `H_N`, ascending.
///
/// Golub–Welsch eigenvalues of the Jacobi matrix (off-diagonal `√(k/2)`),
/// then Newton polishing on the orthonormal recurrence and exact
/// antisymmetrization `x_k = −x_{N−1−k}`.
pub fn hermite_nodes(n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_HERMITE_NODES {
        return Err(Error::Argument(format!(
            "hermite_nodes: need 1 <= N <= {MAX_HERMITE_NODES}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![0.0]);
    }
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let (mut x, _) = symmetric_tridiagonal_eigen(&vec![0.0; n], &off, false)?;
    x.sort_by(f64::total_cmp);
    for xk in x.iter_mut() {
        for _ in 0..8 {
            let dx = hermite_newton_step(n, *xk);
            *xk -= dx;
            if dx.abs() <= 1e-15 * xk.abs().max(1.0) {
                break;
            }
        }
    }
    for k in 0..n / 2 {
        let sym = 0.5 * (x[n - 1 - k] - x[k]);
        x[k] = -sym;
        x[n - 1 - k] = sym;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::numeric("hermite_nodes", format!("roots not distinct for N = {n}")));
    }
    Ok(x)
}
