//! Tunneling splittings of the below-barrier doublets and their WKB
//! barrier-penetration estimate.

use serde::{Deserialize, Serialize};

use crate::classical::turning_points;
use crate::error::{Error, Result};
use crate::model::{Method, Parity, PotentialParams, Spectrum};
use crate::specfun::integrate_inverse_sqrt;

use super::fit::{fit_loglinear, FitResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityPair {
    pub pair_index: usize,
    pub e_bar: f64,
    /// `E_odd − E_even`.
    pub gap: f64,
}

/// Consecutive (even, odd) doublets below `E_c`, ascending in `Ē`.
///
/// A trailing even level whose partner lies above `E_c` is dropped.
pub fn parity_pairs(spec: &Spectrum) -> Result<Vec<ParityPair>> {
    if spec.method == Method::Ebk {
        return Err(Error::Analysis(
            "EBK levels are degenerate by construction; use a diagonalization method".into(),
        ));
    }
    let below: Vec<_> = spec.below(spec.params.e_critical()).collect();
    let mut out = Vec::with_capacity(below.len() / 2);
    for (i, pair) in below.chunks_exact(2).enumerate() {
        let (even, odd) = (pair[0], pair[1]);
        if even.parity != Parity::Even || odd.parity != Parity::Odd {
            let bad = if even.parity != Parity::Even { even } else { odd };
            return Err(Error::DataIntegrity(format!(
                "parity alternation broken at level {} ({} at E = {})",
                bad.n, bad.parity, bad.energy
            )));
        }
        out.push(ParityPair {
            pair_index: i,
            e_bar: 0.5 * (even.energy + odd.energy),
            gap: (odd.energy - even.energy).max(0.0),
        });
    }
    Ok(out)
}

/// Which ħ power the WKB exponent carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WkbForm {
    /// `−2√(2/ħ)·∫√(V−E)dx`.
    #[default]
    Printed,
    /// `−(2√2/ħ)·∫√(V−E)dx`.
    Textbook,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BarrierExtent {
    /// `[−x₁, x₁]`.
    #[default]
    Full,
    /// `[0, x₁]`.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WkbOptions {
    pub form: WkbForm,
    pub extent: BarrierExtent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transmission {
    /// `ln 𝒯`; kept separately because 𝒯 underflows for small ħ.
    pub log_value: f64,
    pub value: f64,
    /// False when `E ≥ E_c` and there is no barrier (𝒯 = 1).
    pub has_barrier: bool,
}

/// `∫ √(V − E) dx` over the forbidden interval `[−x₁, x₁]`.
///
/// There `V − E = b(x₁² − x²)(x₂² − x²)`, so the integrand is
/// `(x₁² − x²)·√(b(x₂² − x²)) / √(x₁² − x²)`.
pub fn barrier_integral(energy: f64, params: &PotentialParams) -> Result<f64> {
    let tp = turning_points(energy, params)?;
    let x1 = tp.inner.ok_or(Error::Domain {
        what: "barrier_integral (E < E_c)",
        value: energy,
    })?;
    let x2 = tp.outer;
    let (x1s, x2s) = (x1 * x1, x2 * x2);
    let b = params.b;
    integrate_inverse_sqrt(
        |x| (x1s - x * x) * (b * (x2s - x * x)).max(0.0).sqrt(),
        -x1,
        x1,
        16,
    )
}

pub fn wkb_transmission(e_bar: f64, params: &PotentialParams, opts: WkbOptions) -> Result<Transmission> {
    params.validate()?;
    if !e_bar.is_finite() {
        return Err(Error::Argument(format!("energy must be finite, got {e_bar}")));
    }
    if e_bar <= params.v_min() {
        return Err(Error::Domain {
            what: "wkb_transmission (E > V_min)",
            value: e_bar,
        });
    }
    if e_bar >= params.e_critical() {
        return Ok(Transmission {
            log_value: 0.0,
            value: 1.0,
            has_barrier: false,
        });
    }
    let mut integral = barrier_integral(e_bar, params)?;
    if opts.extent == BarrierExtent::Half {
        integral *= 0.5;
    }
    let hb = params.hbar;
    let coeff = match opts.form {
        WkbForm::Printed => 2.0 * (2.0 / hb).sqrt(),
        WkbForm::Textbook => 2.0 * 2f64.sqrt() / hb,
    };
    let log_value = -coeff * integral;
    Ok(Transmission {
        log_value,
        value: log_value.exp(),
        has_barrier: true,
    })
}

/// Gaps below this are indistinguishable from eigensolver rounding and are
/// left out of the power-law fits.
pub fn resolvable_gap(params: &PotentialParams) -> f64 {
    1e4 * f64::EPSILON * params.v_min().abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TunnelingRow {
    pub hbar: f64,
    pub e_bar: f64,
    pub gap: f64,
    pub transmission: Transmission,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapFit {
    pub hbar: f64,
    /// `ln 𝒯` against `ln ΔE`; the slope is the exponent α in 𝒯 ∝ ΔE^α.
    pub fit: FitResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TunnelingScaling {
    pub alpha_gap: Vec<GapFit>,
    /// Mean `ln 𝒯` at matched `ln ΔE` against `ln ħ`; `𝒯 ∝ ħ^{−α}` means
    /// slope `−α`. `None` with fewer than three ħ values or no overlap of
    /// the gap ranges.
    pub alpha_hbar: Option<FitResult>,
}

/// Rows `(ħ, Ē, ΔE, 𝒯(Ē))` for every parity pair of one spectrum.
pub fn tunneling_rows(spec: &Spectrum, opts: WkbOptions) -> Result<Vec<TunnelingRow>> {
    parity_pairs(spec)?
        .into_iter()
        .map(|p| {
            Ok(TunnelingRow {
                hbar: spec.params.hbar,
                e_bar: p.e_bar,
                gap: p.gap,
                transmission: wkb_transmission(p.e_bar, &spec.params, opts)?,
            })
        })
        .collect()
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|v| *v < x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let t = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.0 };
    ys[k - 1] + t * (ys[k] - ys[k - 1])
}

/// Fits `ln 𝒯` against `ln ΔE` for each ħ, then compares ħ values at
/// matched `ΔE`.
///
/// Only resolvable gaps (see [`resolvable_gap`]) enter the fits. Matching
/// interpolates `ln 𝒯` linearly in `ln ΔE` on 16 points spanning the overlap
/// of all gap ranges.
pub fn tunneling_scaling(spectra: &[Spectrum], opts: WkbOptions) -> Result<TunnelingScaling> {
    if spectra.len() < 2 {
        return Err(Error::Analysis(format!(
            "tunneling scaling needs at least 2 values of hbar, got {}",
            spectra.len()
        )));
    }
    let mut curves: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::new();
    let mut alpha_gap = Vec::new();
    for spec in spectra {
        let rows = tunneling_rows(spec, opts)?;
        if rows.len() < 5 {
            return Err(Error::Analysis(format!(
                "hbar = {}: {} parity pairs, need at least 5",
                spec.params.hbar,
                rows.len()
            )));
        }
        let floor = resolvable_gap(&spec.params);
        let mut pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.gap > floor)
            .map(|r| (r.gap.ln(), r.transmission.log_value))
            .collect();
        let fit = fit_loglinear(&pts).map_err(|e| {
            Error::Analysis(format!("hbar = {}: {e}", spec.params.hbar))
        })?;
        alpha_gap.push(GapFit {
            hbar: spec.params.hbar,
            fit,
        });
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (xs, ys) = pts.into_iter().unzip();
        curves.push((spec.params.hbar, xs, ys));
    }

    let lo = curves.iter().map(|c| c.1[0]).fold(f64::NEG_INFINITY, f64::max);
    let hi = curves
        .iter()
        .map(|c| *c.1.last().expect("non-empty"))
        .fold(f64::INFINITY, f64::min);
    let alpha_hbar = if curves.len() >= 3 && hi > lo {
        const GRID: usize = 16;
        let pts: Vec<(f64, f64)> = curves
            .iter()
            .map(|(hb, xs, ys)| {
                let mean = (0..GRID)
                    .map(|i| interpolate(xs, ys, lo + (hi - lo) * i as f64 / (GRID - 1) as f64))
                    .sum::<f64>()
                    / GRID as f64;
                (hb.ln(), mean)
            })
            .collect();
        Some(fit_loglinear(&pts)?)
    } else {
        None
    };
    Ok(TunnelingScaling {
        alpha_gap,
        alpha_hbar,
    })
}
