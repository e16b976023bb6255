//! Text serialization of spectra.

use std::fmt::Write as _;

use crate::model::Spectrum;

pub const SPECTRUM_CSV_HEADER: &str = "n,energy,parity,method,basis_size";

/// Formats `x` with `digits` significant digits, `%g` style.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Formats an energy with 15 significant digits.
pub fn fmt_energy(x: f64) -> String {
    format_sig(x, 15)
}

pub fn spectrum_to_csv(spec: &Spectrum) -> String {
    let mut out = String::with_capacity(64 * (spec.len() + 1));
    out.push_str(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for l in &spec.levels {
        let size = l.basis_size.map(|n| n.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            l.n,
            fmt_energy(l.energy),
            l.parity,
            l.method,
            size
        );
    }
    out
}

pub fn spectrum_to_json(spec: &Spectrum) -> serde_json::Result<String> {
    serde_json::to_string_pretty(spec)
}
