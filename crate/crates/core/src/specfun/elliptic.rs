//! Complete and incomplete elliptic integrals of the first kind.
//!
//! Both use the PARAMETER convention `m = k²`:
//!
//! ```text
//! F(φ|m) = ∫₀^φ dθ / √(1 − m sin²θ),   K(m) = F(π/2|m)
//! ```
//!
//! Passing the modulus `k` where `m` is expected is the classic bug here;
//! the classical-period closed form hands `1 − 4x₁x₂/(x₁+x₂)²` straight in
//! as `m`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const AGM_MAX_ITER: usize = 64;
const AGM_TOL: f64 = 4.0 * f64::EPSILON;

/// Complete elliptic integral of the first kind, `K(m) = π / (2·AGM(1, √(1−m)))`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if m.is_nan() {
        return Err(Error::Argument("elliptic_k: m is NaN".into()));
    }
    if m >= 1.0 {
        return Err(Error::Domain {
            what: "elliptic_k (m < 1)",
            value: m,
        });
    }
    if m == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            return Ok(FRAC_PI_2 / a);
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Err(Error::numeric(
        "elliptic_k",
        format!("AGM did not converge for m = {m}"),
    ))
}

/// Incomplete elliptic integral of the first kind on the principal branch
/// `|φ| ≤ π/2`, via Carlson's `R_F`.
pub fn elliptic_f(phi: f64, m: f64) -> Result<f64> {
    if !phi.is_finite() || m.is_nan() {
        return Err(Error::Argument("elliptic_f: non-finite input".into()));
    }
    if phi.abs() > FRAC_PI_2 * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::Argument(format!(
            "elliptic_f: |phi| = {} outside the principal branch",
            phi.abs()
        )));
    }
    if m >= 1.0 {
        return Err(Error::Domain {
            what: "elliptic_f (m < 1)",
            value: m,
        });
    }
    if phi == 0.0 {
        return Ok(0.0);
    }
    let (s, c) = phi.sin_cos();
    let rf = carlson_rf(c * c, 1.0 - m * s * s, 1.0)?;
    Ok(s * rf)
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 {
        return Err(Error::Argument("carlson_rf: negative argument".into()));
    }
    let zeros = [x, y, z].iter().filter(|v| **v == 0.0).count();
    if zeros > 1 {
        return Err(Error::Argument("carlson_rf: more than one zero argument".into()));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..200 {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            // fifth-order tail; truncation error ~ Δ⁶ < 1e-24
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
            return Ok(series / mu.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
    Err(Error::numeric("carlson_rf", "duplication did not converge"))
}
