use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use dwell_core::analysis::{
    convergence_study, density_of_states, lyapunov_fit, tunneling_rows, tunneling_scaling, BarrierExtent,
    WkbForm, WkbOptions,
};
use dwell_core::classical::{
    dos_asymptote_line, period_asymptotic, period_elliptic, period_quadrature, Branch,
};
use dwell_core::ebk::{count_states_below, ebk_spectrum};
use dwell_core::solvers::{solve_spectrum, SolverConfig};
use dwell_core::{Method, PotentialParams, Spectrum};

use crate::args::{BasisArgs, Command, MethodArg, WkbArg};
use crate::error::CliError;
use crate::hbar::Hbar;
use crate::output::{num, opt, write_atomic, Report};

fn params(a: f64, b: f64, hbar: Hbar) -> Result<PotentialParams, CliError> {
    Ok(PotentialParams::new(a, b, hbar.value())?)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn solver_config(method: Method, basis: &BasisArgs) -> SolverConfig {
    SolverConfig {
        method,
        basis_size: basis.basis_size,
        omega: basis.omega,
        eig_count: None,
    }
}

/// Spectrum for any method. `emax` keeps levels up to that energy (EBK
/// default: the barrier top); for a basis method it lifts the default
/// level count so nothing below `emax` is cut.
fn compute_spectrum(
    method: MethodArg,
    basis: &BasisArgs,
    eig_count: Option<usize>,
    emax: Option<f64>,
    p: &PotentialParams,
) -> Result<Spectrum, CliError> {
    let method = Method::from(method);
    if method == Method::Ebk {
        if basis.basis_size.is_some() || basis.omega.is_some() || eig_count.is_some() {
            return Err(usage("--basis-size, --omega and --eig-count do not apply to ebk"));
        }
        return Ok(ebk_spectrum(p, emax.unwrap_or(p.e_critical()))?);
    }
    let mut cfg = solver_config(method, basis);
    cfg.eig_count = eig_count.or(emax.map(|_| usize::MAX));
    let mut spec = solve_spectrum(&cfg, p)?;
    if let Some(e) = emax {
        spec.levels.retain(|l| l.energy <= e);
    }
    Ok(spec)
}

fn check_window(w: &[f64]) -> Result<(f64, f64), CliError> {
    match w {
        [lo, hi] if lo < hi => Ok((*lo, *hi)),
        _ => Err(usage(format!("--window needs two increasing values EMIN,EMAX, got {w:?}"))),
    }
}

pub fn run(command: &Command, a: f64, b: f64) -> Result<Report, CliError> {
    match command {
        Command::Spectrum {
            method,
            hbar,
            basis,
            eig_count,
            emax,
            json,
        } => spectrum(*method, *hbar, basis, *eig_count, *emax, json.as_deref(), a, b),
        Command::Count { hbar, method } => count(hbar, *method, a, b),
        Command::Period {
            emin,
            emax,
            samples,
            log,
        } => period(*emin, *emax, *samples, *log, a, b),
        Command::Dos {
            hbar,
            method,
            basis,
            window,
            emax,
        } => dos(*hbar, *method, basis, window.as_deref(), *emax, a, b),
        Command::Tunneling {
            hbar,
            method,
            basis,
            wkb,
            barrier_halfwidth,
        } => tunneling(hbar, *method, basis, *wkb, *barrier_halfwidth, a, b),
        Command::Lyapunov {
            hbar,
            method,
            basis,
            window,
        } => lyapunov(*hbar, *method, basis, window, a, b),
        Command::Converge {
            method,
            hbar,
            level,
            sizes,
            reference,
            omega,
        } => converge(*method, *hbar, *level, sizes, *reference, *omega, a, b),
        Command::Sweep { .. } => Err(usage("sweep cannot be run as a subcommand here")),
    }
}

#[allow(clippy::too_many_arguments)]
fn spectrum(
    method: MethodArg,
    hbar: Hbar,
    basis: &BasisArgs,
    eig_count: Option<usize>,
    emax: Option<f64>,
    json_path: Option<&Path>,
    a: f64,
    b: f64,
) -> Result<Report, CliError> {
    let p = params(a, b, hbar)?;
    let spec = compute_spectrum(method, basis, eig_count, emax, &p)?;
    if let Some(path) = json_path {
        let text = dwell_core::io::spectrum_to_json(&spec).expect("spectrum serializes");
        write_atomic(path, &(text + "\n"))?;
    }
    let mut r = Report::new(&["n", "energy", "parity", "method", "basis_size"]);
    for l in &spec.levels {
        r.rows.push(vec![
            l.n.to_string(),
            num(l.energy),
            l.parity.to_string(),
            l.method.to_string(),
            l.basis_size.map(|n| n.to_string()).unwrap_or_default(),
        ]);
    }
    r.note = Some(format!(
        "{} below E_c{}",
        spec.count_below(p.e_critical()),
        spec.metadata
            .scale
            .map(|s| format!(", scale {}", num(s)))
            .unwrap_or_default()
    ));
    r.json = serde_json::to_value(&spec).expect("spectrum serializes");
    Ok(r)
}

fn count(hbars: &[Hbar], method: MethodArg, a: f64, b: f64) -> Result<Report, CliError> {
    let counts: Vec<usize> = hbars
        .par_iter()
        .map(|&h| {
            let p = params(a, b, h)?;
            match Method::from(method) {
                Method::Ebk => Ok(count_states_below(&p, p.e_critical())?),
                m => Ok(solve_spectrum(&SolverConfig::new(m), &p)?.count_below(p.e_critical())),
            }
        })
        .collect::<Result<_, CliError>>()?;
    let mut columns = vec!["hbar".to_string()];
    columns.extend(hbars.iter().map(|h| h.to_string()));
    let mut row = vec!["states_below_ec".to_string()];
    row.extend(counts.iter().map(|c| c.to_string()));
    let json = hbars
        .iter()
        .zip(&counts)
        .map(|(h, c)| json!({"hbar": h.to_string(), "hbar_value": h.value(), "states": c}))
        .collect();
    Ok(Report {
        columns,
        rows: vec![row],
        json: json!({"method": Method::from(method).as_str(), "counts": Value::Array(json)}),
        note: None,
    })
}

fn energy_grid(emin: f64, emax: f64, samples: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(emin.is_finite() && emax.is_finite() && emin <= emax) {
        return Err(usage(format!("need finite emin <= emax, got {emin}, {emax}")));
    }
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    if samples == 1 || emin == emax {
        return Ok(vec![emin]);
    }
    let t = |i: usize| i as f64 / (samples - 1) as f64;
    if log {
        if !(emin * emax > 0.0) {
            return Err(usage("--log needs emin and emax nonzero and of one sign"));
        }
        let (l0, l1) = (emin.abs().ln(), emax.abs().ln());
        let sign = emin.signum();
        Ok((0..samples).map(|i| sign * (l0 + (l1 - l0) * t(i)).exp()).collect())
    } else {
        Ok((0..samples).map(|i| emin + (emax - emin) * t(i)).collect())
    }
}

fn period(emin: f64, emax: f64, samples: usize, log: bool, a: f64, b: f64) -> Result<Report, CliError> {
    let p = PotentialParams::new(a, b, 1.0)?;
    let grid = energy_grid(emin, emax, samples, log)?;
    if grid[0] <= p.v_min() {
        return Err(usage(format!(
            "emin must lie above the well bottom V_min = {}",
            num(p.v_min())
        )));
    }
    let mut r = Report::new(&["E", "T_quadrature", "T_elliptic", "T_asymptotic"]);
    let mut items = Vec::new();
    let mut skipped = 0;
    for e in grid {
        if e == p.e_critical() {
            skipped += 1;
            continue;
        }
        let branch = Branch::of(e);
        let tq = period_quadrature(e, &p)?;
        let (te, ta) = if branch == Branch::BelowCritical {
            (Some(period_elliptic(e, &p)?), Some(period_asymptotic(e, &p)?))
        } else {
            (None, None)
        };
        r.rows.push(vec![num(e), num(tq), opt(te), opt(ta)]);
        items.push(json!({
            "energy": e, "branch": branch, "t_quadrature": tq,
            "t_elliptic": te, "t_asymptotic": ta,
        }));
    }
    if skipped > 0 {
        r.note = Some(format!("{skipped} sample(s) on the separatrix skipped"));
    }
    r.json = Value::Array(items);
    Ok(r)
}

fn dos(
    hbar: Hbar,
    method: MethodArg,
    basis: &BasisArgs,
    window: Option<&[f64]>,
    emax: Option<f64>,
    a: f64,
    b: f64,
) -> Result<Report, CliError> {
    let window = window.map(check_window).transpose()?;
    let p = params(a, b, hbar)?;
    let spec = compute_spectrum(method, basis, None, emax, &p)?;
    let points = density_of_states(&spec)?;
    let mut r = Report::new(&["e_bar", "scaled_density", "branch", "T_classical"]);
    let mut items = Vec::new();
    for pt in points {
        if let Some((lo, hi)) = window {
            if !(pt.e_bar > lo && pt.e_bar < hi) {
                continue;
            }
        }
        // the density counts both wells below the barrier
        let t = period_quadrature(pt.e_bar, &p).ok().map(|t| match pt.branch {
            Branch::BelowCritical => 2.0 * t,
            Branch::AboveCritical => t,
        });
        r.rows.push(vec![num(pt.e_bar), num(pt.scaled_density), pt.branch.as_str().into(), opt(t)]);
        items.push(json!({
            "e_bar": pt.e_bar, "scaled_density": pt.scaled_density,
            "branch": pt.branch, "t_classical": t,
        }));
    }
    r.json = json!({"hbar": hbar.to_string(), "method": spec.method, "points": items});
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn tunneling(
    hbars: &[Hbar],
    method: MethodArg,
    basis: &BasisArgs,
    wkb: WkbArg,
    half: bool,
    a: f64,
    b: f64,
) -> Result<Report, CliError> {
    if method == MethodArg::Ebk {
        return Err(usage("tunneling needs a diagonalization method; ebk has no splittings"));
    }
    let opts = WkbOptions {
        form: match wkb {
            WkbArg::Printed => WkbForm::Printed,
            WkbArg::Textbook => WkbForm::Textbook,
        },
        extent: if half { BarrierExtent::Half } else { BarrierExtent::Full },
    };
    let spectra: Vec<Spectrum> = hbars
        .par_iter()
        .map(|&h| compute_spectrum(method, basis, None, None, &params(a, b, h)?))
        .collect::<Result<_, _>>()?;

    let mut r = Report::new(&["hbar", "e_bar", "gap", "transmission", "log_transmission"]);
    let mut items = Vec::new();
    for (h, spec) in hbars.iter().zip(&spectra) {
        for row in tunneling_rows(spec, opts)? {
            r.rows.push(vec![
                h.to_string(),
                num(row.e_bar),
                num(row.gap),
                num(row.transmission.value),
                num(row.transmission.log_value),
            ]);
            items.push(json!({"hbar": h.to_string(), "row": row}));
        }
    }
    let scaling = if spectra.len() >= 2 {
        Some(tunneling_scaling(&spectra, opts)?)
    } else {
        None
    };
    if let Some(s) = &scaling {
        let mut parts: Vec<String> = hbars
            .iter()
            .zip(&s.alpha_gap)
            .map(|(h, g)| format!("alpha_gap({h}) = {:.4}", g.fit.slope))
            .collect();
        if let Some(f) = &s.alpha_hbar {
            parts.push(format!("alpha_hbar = {:.4}", -f.slope));
        }
        r.note = Some(parts.join(", "));
    }
    r.json = json!({"wkb": opts, "rows": items, "scaling": scaling});
    Ok(r)
}

fn lyapunov(
    hbar: Hbar,
    method: MethodArg,
    basis: &BasisArgs,
    window: &[f64],
    a: f64,
    b: f64,
) -> Result<Report, CliError> {
    let (lo, hi) = check_window(window)?;
    if hi >= 0.0 {
        return Err(usage("the lyapunov window must lie below the barrier top (EMAX < 0)"));
    }
    let p = params(a, b, hbar)?;
    let spec = compute_spectrum(method, basis, None, None, &p)?;
    let fit = lyapunov_fit(&density_of_states(&spec)?, lo, hi)?;
    let (ts, ti) = dos_asymptote_line(&p)?;
    let mut r = Report::new(&["slope", "intercept", "r2", "n_points", "theory_slope", "theory_intercept"]);
    r.rows.push(vec![
        num(fit.slope),
        num(fit.intercept),
        num(fit.r_squared),
        fit.n_points.to_string(),
        num(ts),
        num(ti),
    ]);
    r.json = json!({
        "hbar": hbar.to_string(),
        "method": spec.method,
        "window": [lo, hi],
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r2": fit.r_squared,
        "slope_stderr": fit.slope_stderr,
        "n_points": fit.n_points,
        "theory_slope": ts,
        "theory_intercept": ti,
    });
    r.note = Some(format!("slope {:.5} vs {:.5}", fit.slope, ts));
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn converge(
    method: MethodArg,
    hbar: Hbar,
    level: usize,
    sizes: &[usize],
    reference: usize,
    omega: Option<f64>,
    a: f64,
    b: f64,
) -> Result<Report, CliError> {
    let method = Method::from(method);
    if method == Method::Ebk {
        return Err(usage("converge needs a diagonalization method"));
    }
    let p = params(a, b, hbar)?;
    let template = SolverConfig {
        method,
        basis_size: None,
        omega,
        eig_count: None,
    };
    let study = convergence_study(&template, level, &p, sizes, reference)?;
    let mut r = Report::new(&["N", "delta_e"]);
    for pt in &study.points {
        r.rows.push(vec![pt.basis_size.to_string(), opt(pt.delta_e)]);
    }
    r.note = Some(format!("E_{level}(N = {reference}) = {}", num(study.reference)));
    r.json = serde_json::to_value(&study).expect("study serializes");
    Ok(r)
}
