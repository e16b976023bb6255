//! Problem parameters, the quartic potential and the spectrum data model.
//!
//! The Hamiltonian is `H = p²/2 + a x² + b x⁴` with unit mass. For `a < 0`
//! and `b > 0` the potential is a symmetric double well with minima at
//! `±√(−a/2b)` and a barrier top at the origin, which sets the critical
//! energy `E_c = 0`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Physical constants of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Default for PotentialParams {
    /// The `a = −10`, `b = 1`, `ħ = 1` instance.
    fn default() -> Self {
        PotentialParams {
            a: -10.0,
            b: 1.0,
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, hbar: f64) -> Result<Self> {
        let p = PotentialParams {
            a,
            b,
            mass: 1.0,
            hbar,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_hbar(self, hbar: f64) -> Result<Self> {
        PotentialParams::new(self.a, self.b, hbar)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a < 0.0 && self.b > 0.0) || !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::NotDoubleWell {
                a: self.a,
                b: self.b,
            });
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::Argument(format!("hbar must be positive, got {}", self.hbar)));
        }
        if self.mass != 1.0 {
            return Err(Error::Argument(format!(
                "mass is fixed to 1, got {}",
                self.mass
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn potential(&self, x: f64) -> f64 {
        potential(x, self)
    }

    /// dV/dx.
    #[inline]
    pub fn potential_derivative(&self, x: f64) -> f64 {
        2.0 * self.a * x + 4.0 * self.b * x * x * x
    }

    pub fn x_min(&self) -> f64 {
        (-self.a / (2.0 * self.b)).sqrt()
    }

    /// Well-bottom energy `−a²/(4b)`.
    pub fn v_min(&self) -> f64 {
        -self.a * self.a / (4.0 * self.b)
    }

    pub fn e_critical(&self) -> f64 {
        0.0
    }

    pub fn lyapunov(&self) -> f64 {
        (-2.0 * self.a).sqrt()
    }
}

/// `a x² + b x⁴`.
#[inline]
pub fn potential(x: f64, params: &PotentialParams) -> f64 {
    let x2 = x * x;
    x2 * (params.a + params.b * x2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub x_min: f64,
    pub v_min: f64,
    pub e_c: f64,
    pub lambda: f64,
}

pub fn derived_constants(params: &PotentialParams) -> Result<DerivedConstants> {
    if !(params.a < 0.0 && params.b > 0.0) {
        return Err(Error::NotDoubleWell {
            a: params.a,
            b: params.b,
        });
    }
    Ok(DerivedConstants {
        x_min: params.x_min(),
        v_min: params.v_min(),
        e_c: params.e_critical(),
        lambda: params.lyapunov(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Unknown,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Unknown => "unknown",
        }
    }

    fn sort_rank(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
            Parity::Unknown => 2,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sinc,
    Hermite,
    Lmm,
    Ebk,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Sinc => "sinc",
            Method::Hermite => "hermite",
            Method::Lmm => "lmm",
            Method::Ebk => "ebk",
        }
    }

    pub fn is_variational(self) -> bool {
        !matches!(self, Method::Ebk)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sinc" => Ok(Method::Sinc),
            "hermite" => Ok(Method::Hermite),
            "lmm" => Ok(Method::Lmm),
            "ebk" => Ok(Method::Ebk),
            other => Err(Error::Argument(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub n: usize,
    pub energy: f64,
    pub parity: Parity,
    pub method: Method,
    /// `None` for EBK levels.
    pub basis_size: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMetadata {
    pub basis_size: Option<usize>,
    /// Ω for Sinc/Hermite, mesh scale h for LMM.
    pub scale: Option<f64>,
    /// Largest eigen residual ‖Hv − Ev‖₂ over the returned pairs.
    pub max_residual: Option<f64>,
    /// Energies closer than this are treated as degenerate when ordering.
    pub tie_tolerance: f64,
}

/// Ordered bound-state energies for one method and parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub params: PotentialParams,
    pub method: Method,
    pub levels: Vec<EnergyLevel>,
    pub metadata: SpectrumMetadata,
}

impl Spectrum {
    /// Builds a spectrum from unordered `(energy, parity)` pairs.
    ///
    /// Levels are sorted by energy. Adjacent levels within
    /// `metadata.tie_tolerance` are ordered even before odd, which keeps
    /// unresolved tunneling doublets in their physical order.
    pub fn from_unsorted(
        params: PotentialParams,
        method: Method,
        mut raw: Vec<(f64, Parity)>,
        metadata: SpectrumMetadata,
    ) -> Result<Self> {
        if let Some((e, _)) = raw.iter().find(|(e, _)| !e.is_finite()) {
            return Err(Error::numeric("spectrum", format!("non-finite energy {e}")));
        }
        raw.sort_by(|x, y| {
            x.0.total_cmp(&y.0)
                .then(x.1.sort_rank().cmp(&y.1.sort_rank()))
        });
        let tol = metadata.tie_tolerance;
        // a single bubble pass is enough: ties only occur within doublets
        let mut i = 0;
        while i + 1 < raw.len() {
            let (lo, hi) = (raw[i], raw[i + 1]);
            if hi.0 - lo.0 <= tol && lo.1.sort_rank() > hi.1.sort_rank() {
                raw.swap(i, i + 1);
                i += 2;
            } else {
                i += 1;
            }
        }
        let levels = raw
            .into_iter()
            .enumerate()
            .map(|(n, (energy, parity))| EnergyLevel {
                n,
                energy,
                parity,
                method,
                basis_size: metadata.basis_size,
            })
            .collect();
        Ok(Spectrum {
            params,
            method,
            levels,
            metadata,
        })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn count_below(&self, energy: f64) -> usize {
        self.levels.iter().filter(|l| l.energy < energy).count()
    }

    pub fn below(&self, energy: f64) -> impl Iterator<Item = &EnergyLevel> {
        self.levels.iter().filter(move |l| l.energy < energy)
    }

    /// Checks the ordering and parity-alternation invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let tol = self.metadata.tie_tolerance;
        for w in self.levels.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            if hi.energy < lo.energy - tol {
                return Err(Error::DataIntegrity(format!(
                    "levels {} and {} out of order",
                    lo.n, hi.n
                )));
            }
        }
        let v_min = self.params.v_min();
        if let Some(l) = self.levels.iter().find(|l| l.energy <= v_min) {
            return Err(Error::DataIntegrity(format!(
                "level {} at {} is below the well bottom",
                l.n, l.energy
            )));
        }
        let resolved: Vec<&EnergyLevel> = self
            .below(self.params.e_critical())
            .filter(|l| l.parity != Parity::Unknown)
            .collect();
        for (i, l) in resolved.iter().enumerate() {
            let expected = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
            if l.parity != expected {
                return Err(Error::DataIntegrity(format!(
                    "parity alternation broken at level {} ({} where {} expected)",
                    l.n, l.parity, expected
                )));
            }
        }
        Ok(())
    }
}
