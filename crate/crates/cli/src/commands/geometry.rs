use deformd_core::geomfront::{
    global_cancellation, puiseux_curvature, r2d2_boundary, r2d2_curvature, richardson, CenterLayout, WaveFront,
};

use super::{at_least, positive};
use crate::config::Params;
use crate::formats::{load_chart, parse_form};
use crate::output::{Output, Table};
use crate::svg::{line_chart, Series};
use crate::{CliError, Run};

fn radii(p: &Params) -> Result<Vec<f64>, CliError> {
    match p.h {
        Some(h) => Ok(vec![positive("h", h)?]),
        None => Ok(vec![0.4, 0.2, 0.1, 0.05, 0.025]),
    }
}

pub fn curvature(p: &Params) -> Result<Run, CliError> {
    let chart_name = p.chart.as_deref().unwrap_or("sphere");
    let hs = radii(p)?;
    if chart_name == "disc" {
        let big_r = positive("radius", p.radius.unwrap_or(1.0))?;
        let mut table = Table::new(&["r", "r2d2_boundary"]);
        let mut values = Vec::new();
        for &r in &hs {
            let k = r2d2_boundary(big_r, r)?;
            values.push(k);
            table.push(vec![r.into(), k.into()]);
        }
        table.note("disc radius", big_r);
        if hs.len() > 1 && hs.windows(2).all(|w| (w[1] - w[0] / 2.0).abs() < 1e-15) {
            table.note("richardson limit", richardson(&values));
        }
        return Ok(Run::new(Output::Table(table)));
    }
    let chart = load_chart(chart_name)?;
    let n_theta = at_least("n-theta", p.n_theta.unwrap_or(64), 3)?;
    let center = chart.center();
    let mut table = Table::new(&["h", "r2d2", "puiseux"]);
    for &h in &hs {
        table.push(vec![
            h.into(),
            r2d2_curvature(&chart, center, h, n_theta)?.into(),
            puiseux_curvature(&chart, center, h, n_theta)?.into(),
        ]);
    }
    table.note("chart", chart.name());
    table.note("center", format!("{} {}", center.0, center.1));
    table.note("gauss curvature at center", chart.gaussian_curvature(center.0, center.1));
    let h = table.column("h");
    let plot = line_chart(
        &format!("Curvature from wave fronts ({})", chart.name()),
        "h",
        "curvature",
        &[
            Series::new("R2-D2", &h, &table.column("r2d2")),
            Series::new("Puiseux", &h, &table.column("puiseux")),
        ],
    );
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(plot);
    Ok(run)
}

pub fn front(p: &Params) -> Result<Run, CliError> {
    let chart = load_chart(p.chart.as_deref().unwrap_or("sphere"))?;
    let t = positive("t", p.t.unwrap_or(1.0))?;
    let n_theta = at_least("n-theta", p.n_theta.unwrap_or(64), 3)?;
    let center = chart.center();
    let front = WaveFront::compute(&chart, center, t, n_theta)?;
    let mut table = Table::new(&["theta", "x", "y", "jacobi"]);
    for s in &front.samples {
        table.push(vec![s.theta.into(), s.x.into(), s.y.into(), s.jacobi.into()]);
    }
    table.note("chart", chart.name());
    table.note("length", front.length());
    table.note("self intersecting", front.self_intersecting);
    if let Some(src) = &p.form {
        let (fp, fq) = parse_form(src)?;
        let form = |x: f64, y: f64| [fp.eval(x, y), fq.eval(x, y)];
        table.note("line integral", front.line_integral(form));
        if let Some(n) = p.centers {
            if chart.name() != "flat-torus" {
                return Err(CliError::usage("--centers averages over the flat torus; use --chart torus"));
            }
            let n = at_least("centers", n, 1)?;
            let root = (n as f64).sqrt().round() as usize;
            let layout = if root * root == n { CenterLayout::Grid } else { CenterLayout::Kronecker };
            table.note("centers", n);
            table.note("global average", global_cancellation(form, t, n, layout, n_theta)?);
        }
    }
    let mut closed = front.polyline();
    closed.push(closed[0]);
    let (xs, ys): (Vec<f64>, Vec<f64>) = closed.into_iter().unzip();
    let plot = line_chart(&format!("Wave front t = {t} ({})", chart.name()), "x", "y", &[Series::new("front", &xs, &ys)]);
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(plot);
    Ok(run)
}
