use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::hbar::Hbar;

#[derive(Debug, Parser)]
#[command(name = "dwell", version, about = "Spectra of the quartic double well")]
pub struct Cli {
    /// Quadratic coefficient (must be negative)
    #[arg(long, global = true, default_value_t = -10.0, allow_hyphen_values = true)]
    pub a: f64,

    /// Quartic coefficient (must be positive)
    #[arg(long, global = true, default_value_t = 1.0)]
    pub b: f64,

    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads; defaults to the number of logical cores
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,

    /// Stop a sweep at the first failed task
    #[arg(long, global = true)]
    pub fail_fast: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Sinc,
    Hermite,
    Lmm,
    Ebk,
}

impl From<MethodArg> for dwell_core::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sinc => dwell_core::Method::Sinc,
            MethodArg::Hermite => dwell_core::Method::Hermite,
            MethodArg::Lmm => dwell_core::Method::Lmm,
            MethodArg::Ebk => dwell_core::Method::Ebk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WkbArg {
    Printed,
    Textbook,
}

/// Basis options shared by the commands that diagonalize.
#[derive(Debug, Clone, Args)]
pub struct BasisArgs {
    /// Basis size N; chosen from ħ when absent
    #[arg(long)]
    pub basis_size: Option<usize>,

    /// Fixed scale Ω (Sinc, Hermite) or h (LMM) instead of the optimized one
    #[arg(long)]
    pub omega: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels in one basis or by EBK quantization
    Spectrum {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        hbar: Hbar,
        #[command(flatten)]
        basis: BasisArgs,
        /// Number of lowest levels (diagonalization)
        #[arg(long)]
        eig_count: Option<usize>,
        /// Keep levels up to this energy
        #[arg(long, allow_hyphen_values = true)]
        emax: Option<f64>,
        /// Also write the spectrum as JSON to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Number of states below the barrier top for several ħ
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        hbar: Vec<Hbar>,
        #[arg(long, value_enum, default_value_t = MethodArg::Ebk)]
        method: MethodArg,
    },
    /// Classical period on an energy grid
    Period {
        #[arg(long, allow_hyphen_values = true)]
        emin: f64,
        #[arg(long, allow_hyphen_values = true)]
        emax: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Space samples geometrically in |E| (emin and emax of one sign)
        #[arg(long)]
        log: bool,
    },
    /// Scaled density of states 2πħρ against the classical period
    Dos {
        #[arg(long)]
        hbar: Hbar,
        #[arg(long, value_enum, default_value_t = MethodArg::Sinc)]
        method: MethodArg,
        #[command(flatten)]
        basis: BasisArgs,
        /// Keep points with EMIN < Ē < EMAX
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        window: Option<Vec<f64>>,
        /// Highest level energy used
        #[arg(long, allow_hyphen_values = true)]
        emax: Option<f64>,
    },
    /// Parity-pair gaps and WKB transmission
    Tunneling {
        #[arg(long, value_delimiter = ',', required = true)]
        hbar: Vec<Hbar>,
        #[arg(long, value_enum, default_value_t = MethodArg::Sinc)]
        method: MethodArg,
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, value_enum, default_value_t = WkbArg::Printed)]
        wkb: WkbArg,
        /// Integrate the barrier over [0, x₁] instead of [−x₁, x₁]
        #[arg(long)]
        barrier_halfwidth: bool,
    },
    /// Log-linear fit of the density of states near the separatrix
    Lyapunov {
        #[arg(long)]
        hbar: Hbar,
        #[arg(long, value_enum, default_value_t = MethodArg::Ebk)]
        method: MethodArg,
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1,
            allow_hyphen_values = true,
            default_value = "-1e-2,-1e-5"
        )]
        window: Vec<f64>,
    },
    /// Convergence of one level with basis size
    Converge {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        hbar: Hbar,
        #[arg(long)]
        level: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long = "ref", default_value_t = 2000)]
        reference: usize,
        /// Fixed scale instead of the optimized one (e.g. 1 for the plain
        /// oscillator basis)
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Run a JSON plan of independent tasks
    Sweep {
        #[arg(long)]
        plan: PathBuf,
    },
}
