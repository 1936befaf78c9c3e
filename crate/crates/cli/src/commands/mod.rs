//! Subcommand implementations.

mod algebra;
mod bessel;
mod geometry;
mod probe;
mod spectral;
mod wave;

pub(crate) use algebra::gap;

use deformd_core::specops::{build_circle_domain, build_simplicial_domain, build_torus_domain, SpectralDomain};

use crate::config::{Params, RunConfig};
use crate::formats::read_complex;
use crate::{suite, CliError, Run};

pub fn dispatch(config: &RunConfig) -> Result<Run, CliError> {
    let p = &config.params;
    match config.subcommand {
        "bessel" => bessel::run(p),
        "spectral" => spectral::run(p),
        "wave" => wave::run(p),
        "pizzetti" => algebra::pizzetti(p),
        "polarize" => algebra::polarize(p),
        "huygens-probe" => probe::run(p),
        "curvature" => geometry::curvature(p),
        "front" => geometry::front(p),
        "verify-all" => suite::verify_all(p).map(|r| Run::new(crate::output::Output::Report(r))),
        other => Err(CliError::usage(format!("unknown subcommand `{other}`"))),
    }
}

pub(crate) fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

pub(crate) fn at_least(name: &str, v: usize, min: usize) -> Result<usize, CliError> {
    if v >= min {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{name} must be at least {min}, got {v}")))
    }
}

/// Domain from `--domain`, with `dim` the torus dimension.
pub(crate) fn domain(p: &Params, dim: usize) -> Result<SpectralDomain, CliError> {
    let kind = p.domain.as_deref().unwrap_or(if dim > 1 { "torus" } else { "circle" });
    match kind {
        "circle" => Ok(build_circle_domain(at_least("max-freq", p.max_freq.unwrap_or(8), 1)?)?),
        "torus" => {
            let m = p.max_freq.unwrap_or(if dim == 3 { 1 } else { 2 });
            Ok(build_torus_domain(dim, at_least("max-freq", m, 1)?)?)
        }
        "simplicial" => {
            let path = p.complex.as_ref().ok_or_else(|| CliError::usage("--domain simplicial needs --complex <file.json>"))?;
            Ok(build_simplicial_domain(&read_complex(path)?)?)
        }
        other => Err(CliError::usage(format!("unknown domain `{other}`; expected circle, torus or simplicial"))),
    }
}
