use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

/// ħ as typed on the command line, kept exact so table keys and file
/// names read `1/2000` rather than `0.0005`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hbar(Ratio<i64>);

impl Hbar {
    pub fn value(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for Hbar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = digits.parse().ok()?;
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    Some(Ratio::new(numer, denom))
}

impl FromStr for Hbar {
    type Err = String;

    /// Accepts `p/q`, integers and plain decimals such as `0.01`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
                let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
                if q == 0 {
                    return Err(format!("zero denominator in '{s}'"));
                }
                Ratio::new(p, q)
            }
            None => parse_decimal(s).ok_or_else(|| format!("'{s}' is not a rational number"))?,
        };
        if r <= Ratio::from_integer(0) {
            return Err(format!("hbar must be positive, got {s}"));
        }
        Ok(Hbar(r))
    }
}
