//! Real roots of the stationarity cubics used for scale optimization.

use std::f64::consts::PI;

/// Real roots of `c3 u³ + c2 u² + c1 u + c0` (c3 ≠ 0), each polished by
/// Newton, ascending.
pub(crate) fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    debug_assert!(c3 != 0.0);
    let (b, c, d) = (c2 / c3, c1 / c3, c0 / c3);
    // depressed cubic t³ + p t + q with u = t − b/3
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let s = disc.sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() + shift]
    } else if p == 0.0 {
        vec![shift]
    } else {
        let r = (-p / 3.0).sqrt();
        let phi = ((-q / 2.0) / r.powi(3)).clamp(-1.0, 1.0).acos();
        (0..3)
            .map(|k| 2.0 * r * ((phi - 2.0 * PI * k as f64) / 3.0).cos() + shift)
            .collect()
    };
    let f = |u: f64| ((c3 * u + c2) * u + c1) * u + c0;
    let df = |u: f64| (3.0 * c3 * u + 2.0 * c2) * u + c1;
    for u in roots.iter_mut() {
        for _ in 0..50 {
            let d = df(*u);
            if d == 0.0 {
                break;
            }
            let step = f(*u) / d;
            *u -= step;
            if step.abs() <= 1e-16 * u.abs().max(1e-300) {
                break;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
    roots
}

/// Among the positive real roots `u = Ω²`, the one minimizing `trace(Ω)`;
/// ties go to the larger Ω.
pub(crate) fn best_positive_root(
    roots: &[f64],
    trace: impl Fn(f64) -> f64,
) -> Option<f64> {
    roots
        .iter()
        .copied()
        .filter(|u| *u > 0.0 && u.is_finite())
        .map(|u| (u.sqrt(), trace(u.sqrt())))
        .fold(None, |best: Option<(f64, f64)>, (om, tr)| match best {
            Some((bo, bt)) if bt < tr || (bt == tr && bo > om) => Some((bo, bt)),
            _ => Some((om, tr)),
        })
        .map(|(om, _)| om)
}
