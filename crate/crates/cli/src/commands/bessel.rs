use deformd_core::besselfn::BesselProfile;

use super::{at_least, positive};
use crate::config::Params;
use crate::output::{Output, Table};
use crate::svg::{line_chart, Series};
use crate::{CliError, Run};

pub fn run(p: &Params) -> Result<Run, CliError> {
    let n = p.n.unwrap_or(3);
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let profile = BesselProfile::new(n)?;
    let lifted = BesselProfile::new(n + 2)?;
    let rs: Vec<f64> = match p.r {
        Some(r) if r.is_finite() => vec![r],
        Some(r) => return Err(CliError::usage(format!("--r must be finite, got {r}"))),
        None => {
            let r_max = positive("r-max", p.r_max.unwrap_or(30.0))?;
            let points = at_least("points", p.points.unwrap_or(200), 1)?;
            (1..=points).map(|i| r_max * i as f64 / points as f64).collect()
        }
    };
    let mut table = Table::new(&["n", "r", "phi", "psi", "dphi", "ode_residual", "recursion_residual"]);
    let nf = n as f64;
    for &r in &rs {
        let ode = if r == 0.0 { 0.0 } else { profile.ode_residual(r) };
        // (φ_{n+2} r^n)' = n φ_n r^{n−1}, divided by r^{n−1}
        let recursion = r * lifted.derivative(r) + nf * lifted.value(r) - nf * profile.value(r);
        table.push(vec![
            n.into(),
            r.into(),
            profile.value(r).into(),
            profile.scaled(r).into(),
            profile.derivative(r).into(),
            ode.abs().into(),
            recursion.abs().into(),
        ]);
    }
    let plot = line_chart(
        &format!("Bessel profile n = {n}"),
        "r",
        "value",
        &[
            Series::new("phi", &table.column("r"), &table.column("phi")),
            Series::new("psi", &table.column("r"), &table.column("psi")),
        ],
    );
    let mut run = Run::new(Output::Table(table));
    run.plot = Some(plot);
    Ok(run)
}
