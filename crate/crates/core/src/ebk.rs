//! Einstein–Brillouin–Keller quantization `∮ p dx = 2πħ(n + ½)`.
//!
//! Below the barrier each well carries its own librational orbit, so every
//! well level is doubly degenerate (an even/odd pair whose tunneling
//! splitting EBK cannot see). Above the barrier the rule is applied to the
//! single orbit enclosing both wells, whose action starts at `2 J_sep`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{action, period_quadrature, separatrix_action, Branch};
use crate::error::{Error, Result};
use crate::model::{Method, Parity, PotentialParams, Spectrum, SpectrumMetadata};

const REL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EbkLevel {
    /// Quantum number on its branch.
    pub n: usize,
    pub energy: f64,
    pub branch: Branch,
}

fn target_action(n: usize, hbar: f64) -> f64 {
    2.0 * PI * hbar * (n as f64 + 0.5)
}

/// Smallest above-branch quantum number, i.e. the first `n` whose
/// quantized action exceeds the full-orbit action `2 J_sep` at `E = 0⁺`.
pub fn first_above_n(params: &PotentialParams) -> usize {
    let x = 2.0 * separatrix_action(params) / (2.0 * PI * params.hbar) - 0.5;
    if x < 0.0 {
        0
    } else {
        x.floor() as usize + 1
    }
}

/// Energy of the `n`-th level on `branch`.
///
/// Newton steps (`dJ/dE` is the period) safeguarded by a bisection
/// bracket; stops once `|J(E) − J_n| ≤ 1e−12·J_n` or the bracket collapses
/// to rounding.
pub fn ebk_energy(n: usize, params: &PotentialParams, branch: Branch) -> Result<f64> {
    params.validate()?;
    let target = target_action(n, params.hbar);
    let j_sep = separatrix_action(params);
    let v_min = params.v_min();
    let delta = 1e-13 * v_min.abs();

    let (mut lo, mut hi) = match branch {
        Branch::BelowCritical => {
            if target >= j_sep {
                return Err(Error::BranchOverflow {
                    branch: branch.as_str(),
                    target,
                    limit: j_sep,
                });
            }
            (v_min + delta, -delta)
        }
        Branch::AboveCritical => {
            if target <= 2.0 * j_sep {
                return Err(Error::BranchOverflow {
                    branch: branch.as_str(),
                    target,
                    limit: 2.0 * j_sep,
                });
            }
            let lo = delta;
            let mut hi = v_min.abs().max(1.0);
            let mut grown = 0;
            while action(hi, params)? < target {
                hi *= 2.0;
                grown += 1;
                if grown > 200 {
                    return Err(Error::numeric("ebk_energy", format!("no bracket for n = {n}")));
                }
            }
            (lo, hi)
        }
    };
    let j_hi = action(hi, params)?;
    if target > j_hi {
        // within rounding of the separatrix
        return Err(Error::BranchOverflow {
            branch: branch.as_str(),
            target,
            limit: j_hi,
        });
    }

    let omega = (-4.0 * params.a).sqrt();
    let mut e = match branch {
        Branch::BelowCritical => v_min + params.hbar * omega * (n as f64 + 0.5),
        // J grows like E^{3/4} far above the barrier
        Branch::AboveCritical => 0.5 * (lo + hi),
    };
    if !(e > lo && e < hi) {
        e = 0.5 * (lo + hi);
    }
    for _ in 0..MAX_ITER {
        let f = action(e, params)? - target;
        if f.abs() <= REL_TOL * target {
            return Ok(e);
        }
        if f < 0.0 {
            lo = e;
        } else {
            hi = e;
        }
        if hi - lo <= 4.0 * f64::EPSILON * e.abs().max(lo.abs()).max(hi.abs()) {
            return Ok(e);
        }
        let step = f / period_quadrature(e, params)?;
        let next = e - step;
        e = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::numeric(
        "ebk_energy",
        format!("no convergence for n = {n} on the {} branch", branch.as_str()),
    ))
}

/// Well-branch and above-branch levels with energy ≤ `e_max`.
pub fn ebk_levels(params: &PotentialParams, e_max: f64) -> Result<Vec<EbkLevel>> {
    params.validate()?;
    if e_max.is_nan() {
        return Err(Error::Argument("e_max is NaN".into()));
    }
    let mut out = Vec::new();
    if e_max <= params.v_min() {
        return Ok(out);
    }
    let n_well = well_level_count(params);
    let mut well: Vec<EbkLevel> = (0..n_well)
        .into_par_iter()
        .map(|n| {
            ebk_energy(n, params, Branch::BelowCritical).map(|energy| EbkLevel {
                n,
                energy,
                branch: Branch::BelowCritical,
            })
        })
        .collect::<Result<_>>()?;
    well.retain(|l| l.energy <= e_max);
    out.extend(well);
    if e_max > 0.0 {
        let mut n = first_above_n(params);
        loop {
            let energy = ebk_energy(n, params, Branch::AboveCritical)?;
            if energy > e_max {
                break;
            }
            out.push(EbkLevel {
                n,
                energy,
                branch: Branch::AboveCritical,
            });
            n += 1;
        }
    }
    Ok(out)
}

/// EBK levels up to `e_max` as a [`Spectrum`]: each well level appears
/// twice (even, then odd), above-barrier levels once with unknown parity.
pub fn ebk_spectrum(params: &PotentialParams, e_max: f64) -> Result<Spectrum> {
    let levels = ebk_levels(params, e_max)?;
    let mut raw = Vec::with_capacity(2 * levels.len());
    for l in &levels {
        match l.branch {
            Branch::BelowCritical => {
                raw.push((l.energy, Parity::Even));
                raw.push((l.energy, Parity::Odd));
            }
            Branch::AboveCritical => raw.push((l.energy, Parity::Unknown)),
        }
    }
    Spectrum::from_unsorted(*params, Method::Ebk, raw, SpectrumMetadata::default())
}

/// Number of `n ≥ 0` with `2πħ(n+½) < J_sep`.
fn well_level_count(params: &PotentialParams) -> usize {
    let x = separatrix_action(params) / (2.0 * PI * params.hbar) - 0.5;
    if x <= 0.0 {
        0
    } else {
        x.ceil() as usize
    }
}

/// Number of states below `energy`, counting each well level twice.
///
/// At the barrier top this needs only the closed-form separatrix action.
pub fn count_states_below(params: &PotentialParams, energy: f64) -> Result<usize> {
    params.validate()?;
    if energy.is_nan() {
        return Err(Error::Argument("energy is NaN".into()));
    }
    if energy <= params.v_min() {
        return Ok(0);
    }
    let hb = params.hbar;
    let below = |j: f64| {
        let x = j / (2.0 * PI * hb) - 0.5;
        if x <= 0.0 {
            0
        } else {
            x.ceil() as usize
        }
    };
    if energy < 0.0 {
        return Ok(2 * below(action(energy, params)?));
    }
    let wells = 2 * well_level_count(params);
    if energy == 0.0 {
        return Ok(wells);
    }
    let above = below(action(energy, params)?).saturating_sub(first_above_n(params));
    Ok(wells + above)
}
