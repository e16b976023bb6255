use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classical::Branch;
use crate::error::{Error, Result};
use crate::model::{Parity, Spectrum};

/// One finite-difference sample of the scaled density `2πħρ(Ē)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DosPoint {
    pub e_bar: f64,
    pub scaled_density: f64,
    pub branch: Branch,
}

/// Scaled density of states from level spacings.
///
/// Below `E_c` consecutive levels of the SAME parity are differenced and the
/// result doubled for the quasi-degenerate partner, `2πħ·2/(E_{k+1}−E_k)`.
/// Above `E_c` all consecutive levels are used, `2πħ/(E_{k+1}−E_k)`.
/// Spacings straddling `E_c` are dropped. For an EBK spectrum the even and
/// odd series coincide and appear once.
pub fn density_of_states(spec: &Spectrum) -> Result<Vec<DosPoint>> {
    if spec.len() < 4 {
        return Err(Error::Analysis(format!(
            "density of states needs at least 4 levels, got {}",
            spec.len()
        )));
    }
    let e_c = spec.params.e_critical();
    let two_pi_hbar = 2.0 * PI * spec.params.hbar;
    let below: Vec<_> = spec.below(e_c).collect();
    if below.iter().any(|l| l.parity == Parity::Unknown) {
        return Err(Error::Analysis(
            "levels below E_c lack parity labels; use a diagonalization method".into(),
        ));
    }
    let spacing = |lo: f64, hi: f64| -> Result<f64> {
        let d = hi - lo;
        if d > 0.0 {
            Ok(d)
        } else {
            Err(Error::DataIntegrity(format!(
                "non-positive spacing between levels at {lo} and {hi}"
            )))
        }
    };

    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let series: Vec<f64> = below
            .iter()
            .filter(|l| l.parity == parity)
            .map(|l| l.energy)
            .collect();
        for w in series.windows(2) {
            out.push(DosPoint {
                e_bar: 0.5 * (w[0] + w[1]),
                scaled_density: two_pi_hbar * 2.0 / spacing(w[0], w[1])?,
                branch: Branch::BelowCritical,
            });
        }
    }
    out.sort_by(|a, b| a.e_bar.total_cmp(&b.e_bar));
    out.dedup_by(|a, b| a.e_bar == b.e_bar && a.scaled_density == b.scaled_density);

    let above: Vec<f64> = spec
        .levels
        .iter()
        .filter(|l| l.energy > e_c)
        .map(|l| l.energy)
        .collect();
    for w in above.windows(2) {
        out.push(DosPoint {
            e_bar: 0.5 * (w[0] + w[1]),
            scaled_density: two_pi_hbar / spacing(w[0], w[1])?,
            branch: Branch::AboveCritical,
        });
    }
    Ok(out)
}
