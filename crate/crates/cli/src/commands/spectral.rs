use deformd_core::linalg::norm;
use deformd_core::specops::{DiscreteWaveMap, SpectralDomain};
use rand::Rng;

use super::{at_least, domain, positive};
use crate::config::Params;
use crate::formats::{spectra, spectra_json};
use crate::output::{Case, Output, Report, Table};
use crate::random::rng;
use crate::svg::{line_chart, Series};
use crate::{CliError, Run};

pub fn run(p: &Params) -> Result<Run, CliError> {
    let dim = p.q.unwrap_or(1);
    if !(1..=3).contains(&dim) {
        return Err(CliError::usage("--q must be 1, 2 or 3"));
    }
    if let Some(tol) = p.tol {
        positive("tol", tol)?;
    }
    let d = domain(p, dim)?;
    let mut run = match p.report.as_deref().unwrap_or("betti") {
        "betti" => betti(&d, p)?,
        "spectrum" => spectrum(&d, p)?,
        "symmetry" => symmetry(&d, p)?,
        "orbit" => orbit(&d, p)?,
        other => return Err(CliError::usage(format!("unknown report `{other}`; expected betti, spectrum, symmetry or orbit"))),
    };
    if let Some(path) = &p.spectra_out {
        run.files.push((path.clone(), spectra_json(&spectra(&d, p.t)?)));
    }
    Ok(run)
}

fn betti(d: &SpectralDomain, p: &Params) -> Result<Run, CliError> {
    let t = positive("t", p.t.unwrap_or(0.3))?;
    let classical = d.classical_betti_numbers()?;
    let deformed = d.betti_numbers(t, p.tol)?;
    let tol = p.tol.unwrap_or_else(|| d.default_kernel_tolerance(t));
    let mut table = Table::new(&["degree", "dimension", "classical", "deformed"]);
    for k in 0..=d.top_degree() {
        table.push(vec![k.into(), d.grading()[k].into(), classical[k].into(), deformed[k].into()]);
    }
    table.note("t", t);
    table.note("kernel tolerance", tol);
    Ok(Run::new(Output::Table(table)))
}

fn spectrum(d: &SpectralDomain, p: &Params) -> Result<Run, CliError> {
    if let Some(t) = p.t {
        positive("t", t)?;
    }
    let mut table = Table::new(&["degree", "index", "eigenvalue"]);
    let mut series = Vec::new();
    for s in spectra(d, p.t)? {
        let idx: Vec<f64> = (0..s.eigenvalues.len()).map(|i| i as f64).collect();
        series.push(Series::new(format!("degree {}", s.degree), &idx, &s.eigenvalues));
        for (i, &l) in s.eigenvalues.iter().enumerate() {
            table.push(vec![s.degree.into(), i.into(), l.into()]);
        }
    }
    table.note("operator", if p.t.is_some() { "deformed Laplacian" } else { "Hodge Laplacian" });
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(line_chart("Laplacian spectrum", "index", "eigenvalue", &series));
    Ok(run)
}

fn transforms(d: &SpectralDomain, seed: u64) -> Result<Vec<(String, deformd_core::linalg::Matrix)>, CliError> {
    let space = d
        .fourier_space()
        .ok_or_else(|| CliError::usage("symmetry reports need a circle or torus domain"))?;
    let q = space.q();
    let mut r = rng(seed);
    let shift: Vec<f64> = (0..q).map(|_| r.gen_range(0.0..1.0)).collect();
    let mut out = vec![(format!("translation {shift:?}"), space.translation(&shift)?)];
    let maps: Vec<(&str, Vec<Vec<i32>>)> = match q {
        1 => vec![("reflection", vec![vec![-1]])],
        2 => vec![
            ("quarter turn", vec![vec![0, 1], vec![-1, 0]]),
            ("reflection", vec![vec![0, 1], vec![1, 0]]),
        ],
        _ => vec![("cyclic permutation", vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])],
    };
    for (name, a) in maps {
        out.push((name.to_string(), space.pullback(&a)?));
    }
    Ok(out)
}

fn symmetry(d: &SpectralDomain, p: &Params) -> Result<Run, CliError> {
    let times = match p.t {
        Some(t) => vec![positive("t", t)?],
        None => vec![0.3, 1.7],
    };
    let bound = p.tol.unwrap_or(1e-8);
    let mut table = Table::new(&["transform", "t", "commutator"]);
    let mut report = Report::new("symmetry");
    for (name, u) in transforms(d, p.seed())? {
        for &t in &times {
            let c = d.symmetry_commutator(&u, t)?;
            table.push(vec![name.clone().into(), t.into(), c.into()]);
            report.cases.push(Case::at_most(format!("{name} t={t}"), c, bound));
        }
    }
    let mut run = Run::new(Output::Table(table));
    if !report.passed() {
        run.failure = Some(report.failures());
    }
    Ok(run)
}

fn orbit(d: &SpectralDomain, p: &Params) -> Result<Run, CliError> {
    let h = positive("h", p.h.unwrap_or(0.01))?;
    let steps = at_least("steps", p.steps.unwrap_or(10_000), 1)?;
    let map = DiscreteWaveMap::new(d, h)?;
    let mut r = rng(p.seed());
    let n = d.dim();
    let mut u: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect();
    let mut v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect();
    let bound = map.orbit_bound(&u, &v)?;
    let stride = (steps / 200).max(1);
    let mut table = Table::new(&["step", "norm", "bound"]);
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    for step in 0..=steps {
        let s = norm(&u).hypot(norm(&v));
        worst = worst.max(s);
        if s > bound * (1.0 + 1e-12) {
            violations += 1;
        }
        if step % stride == 0 || step == steps {
            table.push(vec![step.into(), s.into(), bound.into()]);
        }
        if step < steps {
            (u, v) = map.step(&u, &v)?;
        }
    }
    table.note("h", h);
    table.note("operator norm", map.operator_norm());
    table.note("violations", violations);
    let plot = line_chart(
        "Discrete wave orbit",
        "step",
        "state norm",
        &[
            Series::new("norm", &table.column("step"), &table.column("norm")),
            Series::new("ellipse bound", &table.column("step"), &table.column("bound")),
        ],
    );
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(plot);
    if violations > 0 {
        let mut report = Report::new("orbit");
        report.cases.push(Case::at_most("state norm below ellipse bound", worst, bound));
        run.failure = Some(report);
    }
    Ok(run)
}
