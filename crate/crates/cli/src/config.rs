//! Command-line and config-file parameters.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "deformd", version, about = "Bessel-deformed exterior derivative: checks, datasets and plots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Profile tables with ODE and recursion residuals.
    Bessel(Params),
    /// Spectra, Betti tables, symmetry commutators and discrete-wave orbits.
    Spectral(Params),
    /// Deformed wave solutions and PDE residual sweeps.
    Wave(Params),
    /// Exact ball and sphere averages against the truncated series.
    Pizzetti(Params),
    /// Expansion of a monomial into powers of linear forms.
    Polarize(Params),
    /// Interior leakage of the deformed and classical propagators.
    #[command(name = "huygens-probe")]
    HuygensProbe(Params),
    /// Curvature from wave-front lengths.
    Curvature(Params),
    /// Wave-front polylines and line integrals.
    Front(Params),
    /// The property suite as a pass/fail report.
    #[command(name = "verify-all")]
    VerifyAll(Params),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bessel(_) => "bessel",
            Command::Spectral(_) => "spectral",
            Command::Wave(_) => "wave",
            Command::Pizzetti(_) => "pizzetti",
            Command::Polarize(_) => "polarize",
            Command::HuygensProbe(_) => "huygens-probe",
            Command::Curvature(_) => "curvature",
            Command::Front(_) => "front",
            Command::VerifyAll(_) => "verify-all",
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            Command::Bessel(p)
            | Command::Spectral(p)
            | Command::Wave(p)
            | Command::Pizzetti(p)
            | Command::Polarize(p)
            | Command::HuygensProbe(p)
            | Command::Curvature(p)
            | Command::Front(p)
            | Command::VerifyAll(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every flag is optional; a `--config` file fills whatever the command line
/// leaves unset, using the flag names as keys.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// Dimension parameter: torus dimension for `spectral`, Bessel index for
    /// `wave`, space dimension for `pizzetti` and `huygens-probe`.
    #[arg(long)]
    pub q: Option<usize>,
    /// Bessel profile index.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    #[arg(long)]
    pub max_freq: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// flat | flat-torus | sphere | sphere-polar | hyperbolic | disc | <custom.json>
    #[arg(long)]
    pub chart: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub plot: bool,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub quick: bool,
    /// circle | torus | simplicial
    #[arg(long)]
    pub domain: Option<String>,
    /// Torus dimension for `wave`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Simplicial complex as JSON `{"simplices": [[0], [1], [0, 1], ...]}`.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Writes `[{"degree": k, "eigenvalues": [...]}, ...]`.
    #[arg(long)]
    pub spectra_out: Option<PathBuf>,
    /// betti | spectrum | symmetry | orbit
    #[arg(long)]
    pub report: Option<String>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub cases: Option<usize>,
    /// Comma-separated exponents, e.g. `1,2,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub exponents: Option<String>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub n_theta: Option<usize>,
    /// 1-form `P; Q` as two expressions in x and y.
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    #[arg(long)]
    pub centers: Option<usize>,
    /// Disc radius for the boundary curvature formula.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
}

macro_rules! fill {
    ($a:ident, $b:ident; $($f:ident),*) => {
        $( if $a.$f.is_none() { $a.$f = $b.$f.clone(); } )*
    };
}

impl Params {
    /// Fills unset fields from `other`.
    pub fn merged(mut self, other: &Params) -> Params {
        fill!(self, other; q, n, r, t, h, max_freq, tol, chart, seed, out, format, domain, dim, complex,
            spectra_out, report, steps, cases, exponents, sigma, width, grid, n_theta, form, centers,
            radius, points, r_max, t_max);
        self.plot |= other.plot;
        self.quick |= other.quick;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// `key=value` pairs of the parameters that are set, in key order,
    /// excluding output plumbing.
    pub fn describe(&self) -> Vec<(String, String)> {
        let value = serde_json::to_value(self).expect("params serialize");
        let mut out = Vec::new();
        if let serde_json::Value::Object(map) = value {
            let mut keys: Vec<_> = map.keys().cloned().collect();
            keys.sort();
            for k in keys {
                if matches!(k.as_str(), "out" | "format" | "plot" | "seed" | "spectra-out") {
                    continue;
                }
                match &map[&k] {
                    serde_json::Value::Null | serde_json::Value::Bool(false) => {}
                    serde_json::Value::String(s) => out.push((k, s.clone())),
                    v => out.push((k, v.to_string())),
                }
            }
        }
        out
    }
}

/// Subcommand plus fully merged parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub params: Params,
}

#[derive(Deserialize)]
struct ConfigFile {
    subcommand: Option<String>,
    #[serde(flatten)]
    params: serde_json::Map<String, serde_json::Value>,
}

pub fn load_config(path: &Path, subcommand: &str) -> Result<Params, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let file: ConfigFile =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if let Some(s) = &file.subcommand {
        if s != subcommand {
            return Err(CliError::Usage(format!("config is for `{s}`, not `{subcommand}`")));
        }
    }
    serde_json::from_value(serde_json::Value::Object(file.params))
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Result<Self, CliError> {
        let cli = command.params().clone();
        let params = match &cli.config {
            Some(path) => {
                let file = load_config(path, command.name())?;
                cli.merged(&file)
            }
            None => cli,
        };
        Ok(Self {
            subcommand: command.name(),
            params,
        })
    }
}
