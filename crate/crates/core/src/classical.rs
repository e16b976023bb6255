//! Classical mechanics of the double well.
//!
//! Below the barrier (`V_min < E < 0`) every quantity refers to motion
//! inside ONE well, between the turning points `x₁ < x₂`. Above it
//! (`E > 0`) the orbit spans `[−x₂, x₂]`. The separatrix `E = 0` is a hard
//! error everywhere.
//!
//! All periods returned here are physical periods of a single orbit; the
//! factor 2 used when comparing the sub-barrier period with the total
//! density of states is applied by callers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PotentialParams;
use crate::specfun::{elliptic_k, integrate_inverse_sqrt};

const START_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    BelowCritical,
    AboveCritical,
}

impl Branch {
    pub fn of(energy: f64) -> Branch {
        if energy < 0.0 {
            Branch::BelowCritical
        } else {
            Branch::AboveCritical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::BelowCritical => "below",
            Branch::AboveCritical => "above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    /// `x₁`; absent above the barrier.
    pub inner: Option<f64>,
    /// `x₂`.
    pub outer: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodSample {
    pub energy: f64,
    pub period: f64,
    pub branch: Branch,
}

fn check_energy(energy: f64, params: &PotentialParams) -> Result<()> {
    if !energy.is_finite() {
        return Err(Error::Argument(format!("energy must be finite, got {energy}")));
    }
    if energy <= params.v_min() {
        return Err(Error::Domain {
            what: "classical motion (E > V_min)",
            value: energy,
        });
    }
    if energy == params.e_critical() {
        return Err(Error::Separatrix { energy });
    }
    Ok(())
}

/// Squared turning points `(x₁², x₂²)` below the barrier, or `(−c², x₂²)`
/// above it, where `E − V = b(x₂² − x²)(x² + c²)`.
///
/// The small root uses `(1−s) = (1−s²)/(1+s)` to avoid cancellation as
/// `E → 0`.
fn squared_roots(energy: f64, params: &PotentialParams) -> (f64, f64) {
    let (a, b) = (params.a, params.b);
    let s = (1.0 + 4.0 * b * energy / (a * a)).max(0.0).sqrt();
    let outer2 = -a * (1.0 + s) / (2.0 * b);
    let small2 = -2.0 * energy / (-a * (1.0 + s));
    (small2, outer2)
}

pub fn turning_points(energy: f64, params: &PotentialParams) -> Result<TurningPoints> {
    check_energy(energy, params)?;
    let (small2, outer2) = squared_roots(energy, params);
    let inner = (energy < 0.0).then(|| small2.sqrt());
    Ok(TurningPoints {
        inner,
        outer: outer2.sqrt(),
        energy,
    })
}

/// Period by quadrature of `∫ √2/√(E − V(x)) dx`.
///
/// The inverse-square-root endpoint factor is split off analytically:
/// below the barrier `E − V = b(x−x₁)(x₂−x)(x+x₁)(x+x₂)`, above it
/// `E − V = b(x₂−x)(x+x₂)(x²+c²)`.
pub fn period_quadrature(energy: f64, params: &PotentialParams) -> Result<f64> {
    check_energy(energy, params)?;
    let (small2, outer2) = squared_roots(energy, params);
    let x2 = outer2.sqrt();
    let pref = (2.0 / params.b).sqrt();
    if energy < 0.0 {
        let x1 = small2.sqrt();
        let i = integrate_inverse_sqrt(
            |x| 1.0 / ((x + x1) * (x + x2)).sqrt(),
            x1,
            x2,
            START_NODES,
        )?;
        Ok(pref * i)
    } else {
        let c2 = small2.abs();
        let i = integrate_inverse_sqrt(|x| 1.0 / (x * x + c2).sqrt(), -x2, x2, START_NODES)?;
        Ok(pref * i)
    }
}

/// Closed form `T = √(2/b)·2/(x₁+x₂)·K(1 − 4x₁x₂/(x₁+x₂)²)` (parameter
/// convention), valid for `V_min < E < 0`.
pub fn period_elliptic(energy: f64, params: &PotentialParams) -> Result<f64> {
    if !(energy > params.v_min() && energy < 0.0) {
        return Err(Error::Domain {
            what: "period_elliptic (V_min < E < 0)",
            value: energy,
        });
    }
    let tp = turning_points(energy, params)?;
    let x1 = tp.inner.expect("inner turning point below the barrier");
    let x2 = tp.outer;
    let sum = x1 + x2;
    // 1 − 4x₁x₂/(x₁+x₂)² = ((x₂−x₁)/(x₁+x₂))²
    let m = ((x2 - x1) / sum).powi(2);
    Ok((2.0 / params.b).sqrt() * 2.0 / sum * elliptic_k(m)?)
}

/// Logarithmic asymptote `−√(2/−a)(log[√b/(−4a)] + ½ log|E|)` of the
/// single-well period as `E → 0⁻`. Validity is the caller's concern.
pub fn period_asymptotic(energy: f64, params: &PotentialParams) -> Result<f64> {
    if !(energy > params.v_min() && energy < 0.0) {
        return Err(Error::Domain {
            what: "period_asymptotic (V_min < E < 0)",
            value: energy,
        });
    }
    let (a, b) = (params.a, params.b);
    Ok(-(2.0 / -a).sqrt() * ((b.sqrt() / (-4.0 * a)).ln() + 0.5 * energy.abs().ln()))
}

/// Loop action `J = ∮ p dx`: one well below the barrier, the full orbit
/// above it.
pub fn action(energy: f64, params: &PotentialParams) -> Result<f64> {
    check_energy(energy, params)?;
    let (small2, outer2) = squared_roots(energy, params);
    let x2 = outer2.sqrt();
    let pref = 2.0 * (2.0 * params.b).sqrt();
    if energy < 0.0 {
        let x1 = small2.sqrt();
        let i = integrate_inverse_sqrt(
            |x| (x - x1) * (x2 - x) * ((x + x1) * (x + x2)).sqrt(),
            x1,
            x2,
            START_NODES,
        )?;
        Ok(pref * i)
    } else {
        let c2 = small2.abs();
        let i = integrate_inverse_sqrt(
            |x| (outer2 - x * x) * (x * x + c2).sqrt(),
            -x2,
            x2,
            START_NODES,
        )?;
        Ok(pref * i)
    }
}

/// Single-well action at the separatrix, `2√2(−a)^{3/2}/(3b)`.
pub fn separatrix_action(params: &PotentialParams) -> f64 {
    2.0 * 2f64.sqrt() * (-params.a).powf(1.5) / (3.0 * params.b)
}

pub fn period_sample(energy: f64, params: &PotentialParams) -> Result<PeriodSample> {
    Ok(PeriodSample {
        energy,
        period: period_quadrature(energy, params)?,
        branch: Branch::of(energy),
    })
}

/// Jacobian of `(ẋ, ṗ) = (p, −4bx³ − 2ax)` at the origin.
pub fn jacobian_at_origin(params: &PotentialParams) -> [[f64; 2]; 2] {
    [[0.0, 1.0], [-2.0 * params.a, 0.0]]
}

/// Positive eigenvalue of the origin Jacobian, `√(−2a)`.
pub fn lyapunov(params: &PotentialParams) -> Result<f64> {
    if params.a >= 0.0 {
        return Err(Error::Domain {
            what: "lyapunov (a < 0, unstable origin)",
            value: params.a,
        });
    }
    let [[m00, m01], [m10, m11]] = jacobian_at_origin(params);
    let tr = m00 + m11;
    let det = m00 * m11 - m01 * m10;
    let disc = 0.25 * tr * tr - det;
    debug_assert!(disc > 0.0);
    Ok(0.5 * tr + disc.sqrt())
}

/// Slope and intercept of the predicted line `2πħρ = slope·log|E| + intercept`.
pub fn dos_asymptote_line(params: &PotentialParams) -> Result<(f64, f64)> {
    let lambda = lyapunov(params)?;
    let slope = -2.0 / lambda;
    let intercept = -4.0 / lambda * (params.b.sqrt() / (-4.0 * params.a)).ln();
    Ok((slope, intercept))
}

/// Scaled density `2πħρ(E)` predicted near the separatrix.
pub fn dos_asymptote(energy: f64, params: &PotentialParams) -> Result<f64> {
    if !(energy > params.v_min() && energy < 0.0) {
        return Err(Error::Domain {
            what: "dos_asymptote (V_min < E < 0)",
            value: energy,
        });
    }
    let (slope, intercept) = dos_asymptote_line(params)?;
    Ok(slope * energy.abs().ln() + intercept)
}
