//! Variational spectra in the Sinc, scaled-Hermite and Lagrange-mesh bases.
//!
//! Every basis is reflection symmetric, so each Hamiltonian is split into an
//! even and an odd block before diagonalization. Parities are therefore
//! exact, even when a tunneling doublet is degenerate to machine precision.

mod cubic;
pub mod eigen;
pub mod hermite;
pub mod lmm;
pub mod matrix;
pub mod parity;
pub mod sinc;

use serde::{Deserialize, Serialize};

pub use eigen::{eigen_spectrum, eigenvalues, EigenPairs};
pub use hermite::{build_hermite_blocks, build_hermite_matrix, optimize_omega_hermite, HermiteBlocks};
pub use lmm::{build_lmm_matrix, optimize_scale_lmm, ScaleOptimum, ScaleSearch};
pub use matrix::SymmetricMatrix;
pub use parity::{classify_parity, mirror_blocks, MirrorBlocks};
pub use sinc::{build_sinc_matrix, optimize_omega_sinc};

use crate::error::{Error, Result};
use crate::model::{Method, Parity, PotentialParams, Spectrum, SpectrumMetadata};

/// Basis sizes `N = ceil(C/ħ)` used when none is given, with a floor.
///
/// Converging the highest sub-critical level to 1e−8 took `N·ħ` ≈ 46, 24,
/// 19, 16 (Sinc) and 44, 26, 22, 20 (Hermite) at ħ = 1, 1/5, 1/10, 1/100.
/// The floor covers ħ ≳ 1/3, `C = 28` the rest.
pub const AUTO_SIZE_SINC: (f64, usize) = (28.0, 81);
pub const AUTO_SIZE_HERMITE: (f64, usize) = (28.0, 81);
pub const AUTO_SIZE_LMM: (f64, usize) = (28.0, 81);

/// Levels kept above `E_c` when `eig_count` is not set.
pub const DEFAULT_EXTRA_LEVELS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: Method,
    /// `None` picks [`auto_basis_size`].
    pub basis_size: Option<usize>,
    /// Ω (Sinc, Hermite) or h (LMM); `None` optimizes it.
    pub omega: Option<f64>,
    /// Number of lowest levels to return; `None` keeps every level below
    /// `E_c` plus [`DEFAULT_EXTRA_LEVELS`].
    pub eig_count: Option<usize>,
}

impl SolverConfig {
    pub fn new(method: Method) -> Self {
        SolverConfig {
            method,
            basis_size: None,
            omega: None,
            eig_count: None,
        }
    }

    pub fn with_basis_size(mut self, n: usize) -> Self {
        self.basis_size = Some(n);
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = Some(omega);
        self
    }

    pub fn with_eig_count(mut self, count: usize) -> Self {
        self.eig_count = Some(count);
        self
    }

    /// The basis size that will actually be used. Even Sinc sizes are
    /// rounded up to the next odd number.
    pub fn resolved_size(&self, hbar: f64) -> Result<usize> {
        let n = match self.basis_size {
            Some(n) => n,
            None => auto_basis_size(self.method, hbar)?,
        };
        match self.method {
            Method::Ebk => Err(Error::Argument("ebk is not a basis method".into())),
            _ if n < 3 => Err(Error::Argument(format!("basis size must be >= 3, got {n}"))),
            Method::Sinc if n % 2 == 0 => Ok(n + 1),
            _ => Ok(n),
        }
    }
}

pub fn auto_basis_size(method: Method, hbar: f64) -> Result<usize> {
    let (c, floor) = match method {
        Method::Sinc => AUTO_SIZE_SINC,
        Method::Hermite => AUTO_SIZE_HERMITE,
        Method::Lmm => AUTO_SIZE_LMM,
        Method::Ebk => return Err(Error::Argument("ebk is not a basis method".into())),
    };
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::Argument(format!("hbar must be positive, got {hbar}")));
    }
    let n = (c / hbar).ceil();
    if n > 1e6 {
        return Err(Error::Argument(format!(
            "automatic basis size {n} for hbar = {hbar} is too large for a dense solver"
        )));
    }
    let n = (n as usize).max(floor);
    Ok(if method == Method::Sinc && n % 2 == 0 { n + 1 } else { n })
}

struct Block {
    matrix: SymmetricMatrix,
    parity: Parity,
}

fn blocks_for(method: Method, n: usize, scale: f64, params: &PotentialParams) -> Result<Vec<Block>> {
    let split = |m: SymmetricMatrix| -> Result<Vec<Block>> {
        let b = mirror_blocks(&m)?;
        Ok(vec![
            Block {
                matrix: b.even,
                parity: Parity::Even,
            },
            Block {
                matrix: b.odd,
                parity: Parity::Odd,
            },
        ])
    };
    match method {
        Method::Sinc => split(build_sinc_matrix(n, scale, params)?),
        Method::Lmm => split(build_lmm_matrix(n, scale, params)?),
        Method::Hermite => {
            let b = build_hermite_blocks(n, scale, params)?;
            Ok(vec![
                Block {
                    matrix: b.even,
                    parity: Parity::Even,
                },
                Block {
                    matrix: b.odd,
                    parity: Parity::Odd,
                },
            ])
        }
        Method::Ebk => Err(Error::Argument("ebk is not a basis method".into())),
    }
}

/// The scale parameter `solve_spectrum` would use.
pub fn optimal_scale(method: Method, n: usize, params: &PotentialParams) -> Result<f64> {
    match method {
        Method::Sinc => optimize_omega_sinc(n, params),
        Method::Hermite => optimize_omega_hermite(n, params),
        Method::Lmm => optimize_scale_lmm(n, params).map(|o| o.scale),
        Method::Ebk => Err(Error::Argument("ebk is not a basis method".into())),
    }
}

/// Diagonalizes the Hamiltonian in the configured basis.
///
/// Both parity blocks are solved completely; the lowest `eig_count` levels
/// of the union are returned, with the largest eigen residual among them
/// and the basis scale recorded in the metadata.
pub fn solve_spectrum(config: &SolverConfig, params: &PotentialParams) -> Result<Spectrum> {
    params.validate()?;
    let n = config.resolved_size(params.hbar)?;
    let scale = match config.omega {
        Some(w) if w > 0.0 && w.is_finite() => w,
        Some(w) => return Err(Error::Argument(format!("omega must be positive, got {w}"))),
        None => optimal_scale(config.method, n, params)?,
    };
    let blocks = blocks_for(config.method, n, scale, params)?;
    let norm = blocks
        .iter()
        .map(|b| b.matrix.inf_norm())
        .fold(0.0, f64::max);

    let mut raw: Vec<(f64, Parity, f64)> = Vec::with_capacity(n);
    for b in &blocks {
        if b.matrix.dim() == 0 {
            continue;
        }
        let pairs = eigen_spectrum(&b.matrix, b.matrix.dim())?;
        raw.extend(
            pairs
                .values
                .iter()
                .zip(&pairs.residuals)
                .map(|(&e, &r)| (e, b.parity, r)),
        );
    }
    raw.sort_by(|x, y| x.0.total_cmp(&y.0));

    let count = match config.eig_count {
        Some(0) => return Err(Error::Argument("eig_count must be positive".into())),
        Some(c) => c.min(raw.len()),
        None => {
            let below = raw.iter().filter(|r| r.0 < params.e_critical()).count();
            (below + DEFAULT_EXTRA_LEVELS).min(raw.len())
        }
    };
    raw.truncate(count);
    let max_residual = raw.iter().map(|r| r.2).fold(0.0, f64::max);
    let metadata = SpectrumMetadata {
        basis_size: Some(n),
        scale: Some(scale),
        max_residual: Some(max_residual),
        tie_tolerance: 64.0 * f64::EPSILON * norm,
    };
    Spectrum::from_unsorted(
        *params,
        config.method,
        raw.into_iter().map(|(e, p, _)| (e, p)).collect(),
        metadata,
    )
}
