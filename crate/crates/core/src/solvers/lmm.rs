//! Lagrange mesh on the roots of `H_N`, scaled to `x_k = h·u_k`.
//!
//! The mesh kinetic matrix of `−d²/du²` is
//! `T_kk = (2N+1−u_k²)/3`, `T_{kl} = (−1)^{k−l}·2/(u_k−u_l)²`;
//! the Hamiltonian uses `(ħ²/2h²)·T + diag V(h·u_k)`.

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::model::PotentialParams;
use crate::specfun::hermite_nodes;

const LOG_H_LO: f64 = -3.0 * std::f64::consts::LN_10;
const LOG_H_HI: f64 = 3.0 * std::f64::consts::LN_10;

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Argument(format!("lmm mesh size must be >= 2, got {n}")));
    }
    Ok(())
}

/// Kinetic matrix of `−d²/du²` on the unscaled mesh.
pub fn lmm_kinetic(nodes: &[f64]) -> SymmetricMatrix {
    let n = nodes.len();
    SymmetricMatrix::from_lower_fn(n, |i, j| {
        if i == j {
            (2.0 * n as f64 + 1.0 - nodes[i] * nodes[i]) / 3.0
        } else {
            let d = nodes[i] - nodes[j];
            let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
            sign * 2.0 / (d * d)
        }
    })
}

pub fn build_lmm_matrix(n: usize, scale: f64, params: &PotentialParams) -> Result<SymmetricMatrix> {
    check_size(n)?;
    let nodes = hermite_nodes(n)?;
    lmm_matrix_on(&nodes, scale, params)
}

pub(crate) fn lmm_matrix_on(nodes: &[f64], scale: f64, params: &PotentialParams) -> Result<SymmetricMatrix> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Argument(format!("lmm scale must be positive, got {scale}")));
    }
    let t = params.hbar * params.hbar / (2.0 * scale * scale);
    let kin = lmm_kinetic(nodes);
    Ok(SymmetricMatrix::from_lower_fn(nodes.len(), |i, j| {
        let mut v = t * kin.get(i, j);
        if i == j {
            v += params.potential(scale * nodes[i]);
        }
        v
    }))
}

fn trace_on(nodes: &[f64], scale: f64, params: &PotentialParams) -> f64 {
    let n = nodes.len() as f64;
    let t = params.hbar * params.hbar / (2.0 * scale * scale);
    nodes
        .iter()
        .map(|u| t * (2.0 * n + 1.0 - u * u) / 3.0 + params.potential(scale * u))
        .sum()
}

pub fn lmm_trace(n: usize, scale: f64, params: &PotentialParams) -> Result<f64> {
    check_size(n)?;
    Ok(trace_on(&hermite_nodes(n)?, scale, params))
}

/// How [`optimize_scale_lmm`] located its minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleSearch {
    GoldenSection,
    GridFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleOptimum {
    pub scale: f64,
    pub trace: f64,
    pub path: ScaleSearch,
}

fn golden(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-12 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes `Tr H(h)` over `h ∈ [1e−3, 1e3]`.
///
/// A coarse scan in `log h` first brackets the minimum; golden section then
/// refines inside the bracket. If the scan finds more than one local minimum
/// the trace is not unimodal, and the best grid cell is refined instead.
pub fn optimize_scale_lmm(n: usize, params: &PotentialParams) -> Result<ScaleOptimum> {
    check_size(n)?;
    let nodes = hermite_nodes(n)?;
    let f = |lh: f64| trace_on(&nodes, lh.exp(), params);

    const GRID: usize = 240;
    let step = (LOG_H_HI - LOG_H_LO) / GRID as f64;
    let vals: Vec<f64> = (0..=GRID).map(|i| f(LOG_H_LO + i as f64 * step)).collect();
    let best = (0..=GRID)
        .min_by(|&i, &j| vals[i].total_cmp(&vals[j]))
        .expect("non-empty grid");
    let local_minima = (1..GRID)
        .filter(|&i| vals[i] < vals[i - 1] && vals[i] <= vals[i + 1])
        .count();
    let path = if local_minima == 1 && best > 0 && best < GRID {
        ScaleSearch::GoldenSection
    } else {
        ScaleSearch::GridFallback
    };
    let lo = LOG_H_LO + best.saturating_sub(1) as f64 * step;
    let hi = LOG_H_LO + (best + 1).min(GRID) as f64 * step;
    let lh = golden(&f, lo, hi);
    let trace = f(lh);
    if !trace.is_finite() {
        return Err(Error::numeric("optimize_scale_lmm", format!("non-finite trace at h = {}", lh.exp())));
    }
    Ok(ScaleOptimum {
        scale: lh.exp(),
        trace,
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(hbar: f64) -> PotentialParams {
        PotentialParams::default().with_hbar(hbar).unwrap()
    }

    #[test]
    fn two_point_mesh() {
        let nodes = hermite_nodes(2).unwrap();
        let kin = lmm_kinetic(&nodes);
        assert!((kin.get(0, 0) - 1.5).abs() < 1e-14);
        assert!((kin.get(1, 1) - 1.5).abs() < 1e-14);
        assert!((kin.get(0, 1) + 1.0).abs() < 1e-14);
        let m = build_lmm_matrix(2, 1.0, &p(1.0)).unwrap();
        assert!((m.get(0, 0) - (0.75 - 4.75)).abs() < 1e-13);
        assert!((m.get(0, 1) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn scale_dependence() {
        let params = p(1.0);
        let m1 = build_lmm_matrix(6, 1.0, &params).unwrap();
        let m2 = build_lmm_matrix(6, 2.0, &params).unwrap();
        let nodes = hermite_nodes(6).unwrap();
        assert!((m1.get(4, 1) - 4.0 * m2.get(4, 1)).abs() < 1e-13);
        let kin = lmm_kinetic(&nodes);
        for i in 0..6 {
            let want = kin.get(i, i) / 8.0 + params.potential(2.0 * nodes[i]);
            assert!((m2.get(i, i) - want).abs() < 1e-12);
        }
        assert!(m1.is_mirror_symmetric(1e-12));
        assert!(build_lmm_matrix(1, 1.0, &params).is_err());
        assert!(build_lmm_matrix(4, -1.0, &params).is_err());
    }

    /// Brute-force scan of `2·(3/2)/(2h²) + 2V(h/√2)` at 1e−4 resolution.
    #[test]
    fn two_point_scale_against_scan() {
        let params = p(1.0);
        let tr = |h: f64| 1.5 / (h * h) + 2.0 * params.potential(h / 2f64.sqrt());
        let mut best = (f64::INFINITY, 0.0);
        let mut h = 0.01;
        while h < 20.0 {
            let v = tr(h);
            if v < best.0 {
                best = (v, h);
            }
            h += 1e-4;
        }
        let opt = optimize_scale_lmm(2, &params).unwrap();
        assert_eq!(opt.path, ScaleSearch::GoldenSection);
        assert!((opt.scale - best.1).abs() < 2e-4, "{} vs {}", opt.scale, best.1);
    }

    #[test]
    fn trace_is_stationary() {
        for &(n, hb) in &[(2usize, 1.0), (40, 1.0), (200, 0.1)] {
            let params = p(hb);
            let opt = optimize_scale_lmm(n, &params).unwrap();
            let h = opt.scale;
            let dh = 1e-5 * h;
            let d = (lmm_trace(n, h + dh, &params).unwrap() - lmm_trace(n, h - dh, &params).unwrap())
                / (2.0 * dh);
            assert!(d.abs() < 1e-6 * opt.trace.abs() / h, "N={n}: {d}");
        }
    }

    #[test]
    fn scale_shrinks_with_hbar() {
        let a = optimize_scale_lmm(60, &p(1.0)).unwrap().scale;
        let b = optimize_scale_lmm(60, &p(0.1)).unwrap().scale;
        assert!(b < a);
    }
}
