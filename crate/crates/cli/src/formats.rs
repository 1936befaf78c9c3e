//! File formats: simplicial complexes, spectra export and custom charts.

use std::path::Path;

use deformd_core::geomfront::{Rect, SurfaceChart};
use deformd_core::specops::{SimplicialComplex, SpectralDomain};
use serde::{Deserialize, Serialize};

use crate::expr::Expr;
use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    simplices: Vec<Vec<usize>>,
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, CliError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| CliError::usage(format!("complex: {e}")))?;
    Ok(SimplicialComplex::new(file.simplices)?)
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    parse_complex(&read(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub degree: usize,
    pub eigenvalues: Vec<f64>,
}

/// Laplacian spectra per degree; deformed when `t` is given.
pub fn spectra(domain: &SpectralDomain, t: Option<f64>) -> Result<Vec<Spectrum>, CliError> {
    (0..=domain.top_degree())
        .map(|k| {
            Ok(Spectrum {
                degree: k,
                eigenvalues: domain.laplacian_spectrum(t, k)?,
            })
        })
        .collect()
}

pub fn spectra_json(spectra: &[Spectrum]) -> String {
    serde_json::to_string_pretty(spectra).expect("spectra serialize") + "\n"
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartFile {
    name: Option<String>,
    g11: String,
    #[serde(default = "zero")]
    g12: String,
    g22: String,
    /// `[x0, x1, y0, y1]`
    rect: [f64; 4],
    center: [f64; 2],
    curvature: Option<String>,
}

fn zero() -> String {
    "0".into()
}

fn parse(field: &str, src: &str) -> Result<Expr, CliError> {
    Expr::parse(src).map_err(|e| CliError::usage(format!("{field}: {e}")))
}

pub fn parse_chart(text: &str) -> Result<SurfaceChart, CliError> {
    let file: ChartFile = serde_json::from_str(text).map_err(|e| CliError::usage(format!("chart: {e}")))?;
    let (g11, g12, g22) = (parse("g11", &file.g11)?, parse("g12", &file.g12)?, parse("g22", &file.g22)?);
    let [x0, x1, y0, y1] = file.rect;
    let chart = SurfaceChart::new(
        file.name.unwrap_or_else(|| "custom".into()),
        Box::new(move |x, y| [g11.eval(x, y), g12.eval(x, y), g22.eval(x, y)]),
        Rect { x0, x1, y0, y1 },
        (file.center[0], file.center[1]),
    )?;
    Ok(match file.curvature {
        Some(src) => {
            let k = parse("curvature", &src)?;
            chart.with_curvature(Box::new(move |x, y| k.eval(x, y)))
        }
        None => chart,
    })
}

/// A named chart, or a custom chart file when the name ends in `.json`.
pub fn load_chart(name: &str) -> Result<SurfaceChart, CliError> {
    if name.ends_with(".json") {
        parse_chart(&read(Path::new(name))?)
    } else {
        SurfaceChart::by_name(name).map_err(|_| {
            CliError::usage(format!(
                "unknown chart `{name}`; expected flat, flat-torus, sphere, sphere-polar, hyperbolic, disc or a .json file"
            ))
        })
    }
}

/// A 1-form `P; Q`.
pub fn parse_form(src: &str) -> Result<(Expr, Expr), CliError> {
    let parts: Vec<&str> = src.split(';').collect();
    if parts.len() != 2 {
        return Err(CliError::usage("form must be `P; Q`"));
    }
    Ok((parse("form P", parts[0])?, parse("form Q", parts[1])?))
}
