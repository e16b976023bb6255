use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PotentialParams;
use crate::solvers::{solve_spectrum, SolverConfig};

/// Smallest reported difference; exact agreement is shown at this level
/// on log axes.
pub const DELTA_FLOOR: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub basis_size: usize,
    /// `|E_n(N) − E_n(N_ref)|`, floored; `None` when the basis holds fewer
    /// than `n + 1` levels.
    pub delta_e: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub level: usize,
    pub ref_size: usize,
    pub reference: f64,
    pub points: Vec<ConvergencePoint>,
}

/// Differences below `1e−15·|E_ref|` are rounding noise and are reported
/// as that floor (never below [`DELTA_FLOOR`]).
pub fn floor_delta(delta: f64, reference: f64) -> f64 {
    let floor = (1e-15 * reference.abs()).max(DELTA_FLOOR);
    delta.max(floor)
}

/// `ΔE_n(N)` against a reference solve of the same method and scale rule.
///
/// `template.basis_size` is ignored; `template.omega` (fixed Ω or h) is
/// applied to every size, including the reference.
pub fn convergence_study(
    template: &SolverConfig,
    level: usize,
    params: &PotentialParams,
    sizes: &[usize],
    ref_size: usize,
) -> Result<ConvergenceStudy> {
    if let Some(&n) = sizes.iter().find(|&&n| n >= ref_size) {
        return Err(Error::Argument(format!(
            "basis size {n} is not below the reference size {ref_size}"
        )));
    }
    let solve = |n: usize| {
        let mut cfg = *template;
        cfg.basis_size = Some(n);
        cfg.eig_count = Some(level + 1);
        solve_spectrum(&cfg, params)
    };
    let reference = solve(ref_size)?;
    let e_ref = reference
        .levels
        .get(level)
        .ok_or_else(|| {
            Error::Analysis(format!(
                "level {level} not present in the reference basis of size {ref_size}"
            ))
        })?
        .energy;
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let delta_e = solve(n)?
            .levels
            .get(level)
            .map(|l| floor_delta((l.energy - e_ref).abs(), e_ref));
        points.push(ConvergencePoint {
            basis_size: n,
            delta_e,
        });
    }
    Ok(ConvergenceStudy {
        level,
        ref_size,
        reference: e_ref,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Method;

    #[test]
    fn floor_rules() {
        assert_eq!(floor_delta(0.0, 0.0), DELTA_FLOOR);
        assert!((floor_delta(1e-20, -20.0) - 2e-14).abs() < 1e-28);
        assert_eq!(floor_delta(1e-3, -20.0), 1e-3);
    }

    #[test]
    fn sinc_ground_pair_converges() {
        let params = PotentialParams::default();
        let st = convergence_study(
            &SolverConfig::new(Method::Sinc),
            1,
            &params,
            &[11, 21, 41, 61],
            201,
        )
        .unwrap();
        let d: Vec<f64> = st.points.iter().map(|p| p.delta_e.unwrap()).collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert!(d[3] < 1e-10);
        assert!(convergence_study(&SolverConfig::new(Method::Sinc), 1, &params, &[301], 201).is_err());
    }

    #[test]
    fn absent_level_at_small_size() {
        let params = PotentialParams::default();
        let st = convergence_study(&SolverConfig::new(Method::Hermite), 8, &params, &[4, 40], 120).unwrap();
        assert_eq!(st.points[0].delta_e, None);
        assert!(st.points[1].delta_e.is_some());
    }
}
