//! Fixed quadrature rules and the endpoint-singular integrator.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureKind {
    GaussLegendre,
    /// Nodes and weights for `∫ f(x)/√((x−x₁)(x₂−x)) dx`.
    InverseSqrtEndpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

impl QuadratureRule {
    /// n-point Gauss–Legendre rule on `[lo, hi]`, Golub–Welsch.
    pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("gauss_legendre: n must be positive".into()));
        }
        if !(lo < hi) {
            return Err(Error::Argument(format!(
                "gauss_legendre: empty interval [{lo}, {hi}]"
            )));
        }
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        let (values, first) = symmetric_tridiagonal_eigen(&diag, &off, true)?;
        let first = first.expect("first components requested");
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut pairs: Vec<(f64, f64)> = values
            .iter()
            .zip(&first)
            .map(|(&x, &v)| (mid + half * x, 2.0 * half * v * v))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(QuadratureRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            kind: QuadratureKind::GaussLegendre,
        })
    }

    /// n-point Gauss–Chebyshev rule for the weight `1/√((x−x₁)(x₂−x))`.
    ///
    /// Equivalent to substituting `x = x₁ + (x₂−x₁) sin²θ` and applying the
    /// midpoint rule in θ.
    pub fn inverse_sqrt(n: usize, x1: f64, x2: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("inverse_sqrt rule: n must be positive".into()));
        }
        if !(x1 < x2) {
            return Err(Error::Argument(format!(
                "inverse_sqrt rule: need x1 < x2, got [{x1}, {x2}]"
            )));
        }
        let c = 0.5 * (x1 + x2);
        let r = 0.5 * (x2 - x1);
        let w = PI / n as f64;
        // k = n-1 … 0 gives ascending nodes
        let nodes = (0..n)
            .rev()
            .map(|k| c + r * ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos())
            .collect();
        Ok(QuadratureRule {
            nodes,
            weights: vec![w; n],
            kind: QuadratureKind::InverseSqrtEndpoint,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

const MAX_DOUBLINGS: usize = 20;
const INV_SQRT_RTOL: f64 = 1e-12;

/// `∫_{x₁}^{x₂} f(x)/√((x−x₁)(x₂−x)) dx` for `f` smooth on `[x₁, x₂]`.
///
/// Starts from `n` Chebyshev nodes and doubles until two successive
/// estimates agree to 1e−12 relative (measured against `∫|f|` so that
/// integrals that cancel to zero still terminate).
pub fn integrate_inverse_sqrt<F>(mut f: F, x1: f64, x2: f64, n: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if n < 8 {
        return Err(Error::Argument(format!(
            "integrate_inverse_sqrt: need n >= 8, got {n}"
        )));
    }
    if !(x1 < x2) || !x1.is_finite() || !x2.is_finite() {
        return Err(Error::Argument(format!(
            "integrate_inverse_sqrt: need finite x1 < x2, got [{x1}, {x2}]"
        )));
    }
    let c = 0.5 * (x1 + x2);
    let r = 0.5 * (x2 - x1);
    let mut estimate = |n: usize| -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for k in 0..n {
            let x = c + r * ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos();
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::numeric(
                    "integrate_inverse_sqrt",
                    format!("integrand is {v} at x = {x}"),
                ));
            }
            sum += v;
            abs_sum += v.abs();
        }
        let w = PI / n as f64;
        Ok((w * sum, w * abs_sum))
    };
    let (mut prev, _) = estimate(n)?;
    let mut n = n;
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        let (cur, scale) = estimate(n)?;
        if (cur - prev).abs() <= INV_SQRT_RTOL * scale.max(cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::numeric(
        "integrate_inverse_sqrt",
        format!("no convergence on [{x1}, {x2}] after {MAX_DOUBLINGS} doublings (n = {n})"),
    ))
}
