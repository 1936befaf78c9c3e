use deformd_core::waveforms::WaveSolution;

use super::{at_least, domain, positive};
use crate::config::Params;
use crate::output::{Output, Table};
use crate::random::{rng, unit_cochain};
use crate::svg::{line_chart, Series};
use crate::{CliError, Run};

pub fn run(p: &Params) -> Result<Run, CliError> {
    let dim = p.dim.unwrap_or(1);
    if !(1..=3).contains(&dim) {
        return Err(CliError::usage("--dim must be 1, 2 or 3"));
    }
    let d = domain(p, dim)?;
    let q = p.q.unwrap_or(d.q());
    if q == 0 {
        return Err(CliError::usage("--q must be at least 1"));
    }
    let dt = positive("h", p.h.unwrap_or(1e-3))?;
    let t_max = positive("t-max", p.t_max.unwrap_or(2.0))?;
    let points = at_least("points", p.points.unwrap_or(20), 1)?;
    let f = unit_cochain(&mut rng(p.seed()), &d, 0);
    let velocity = WaveSolution::deformed_velocity(&d, q as u32, &f)?;
    let position = WaveSolution::deformed_position(&d, q as u32, &f)?;
    let mut table = Table::new(&["t", "velocity_norm", "position_norm", "velocity_residual", "position_residual"]);
    for i in 1..=points {
        let t = t_max * i as f64 / points as f64;
        let (rv, rp) = if t >= 5.0 * dt {
            (velocity.residual(t, dt)?, position.residual(t, dt)?)
        } else {
            (f64::NAN, f64::NAN)
        };
        table.push(vec![
            t.into(),
            velocity.evaluate(t)?.norm().into(),
            position.evaluate(t)?.norm().into(),
            rv.into(),
            rp.into(),
        ]);
    }
    table.note("bessel index", q);
    table.note("dt", dt);
    let ts = table.column("t");
    let plot = line_chart(
        "Deformed wave solutions",
        "t",
        "norm",
        &[
            Series::new("t phi_(q+2)(tD) df", &ts, &table.column("velocity_norm")),
            Series::new("phi_q(tD) df", &ts, &table.column("position_norm")),
        ],
    );
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(plot);
    Ok(run)
}
