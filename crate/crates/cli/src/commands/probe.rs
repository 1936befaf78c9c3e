use deformd_core::huygens::{locality_probe, ProbeConfig, ProbeOutcome};

use super::{at_least, positive};
use crate::config::Params;
use crate::output::{Output, Table};
use crate::svg::{line_chart, Series};
use crate::{CliError, Run};

pub fn run(p: &Params) -> Result<Run, CliError> {
    let q = p.q.unwrap_or(2);
    if !(2..=3).contains(&q) {
        return Err(CliError::usage("--q must be 2 or 3"));
    }
    let mut cfg = ProbeConfig::new(
        q,
        at_least("max-freq", p.max_freq.unwrap_or(64), 1)?,
        positive("sigma", p.sigma.unwrap_or(0.02))?,
        positive("t", p.t.unwrap_or(0.3))?,
        p.width.unwrap_or(0.05),
    );
    if let Some(g) = p.grid {
        cfg.grid = at_least("grid", g, 8)?;
    }
    let mut table = Table::new(&["radius", "deformed", "classical"]);
    let mut run_plot = None;
    match locality_probe(&cfg)? {
        ProbeOutcome::Unresolved { reason } => table.note("unresolved", reason),
        ProbeOutcome::Resolved(report) => {
            table.note("deformed leakage", report.deformed_leakage);
            table.note("classical leakage", report.classical_leakage);
            table.note("leakage ratio", report.classical_leakage / report.deformed_leakage);
            table.note("spectral tail", report.spectral_tail);
            table.note("interior radius", cfg.t - cfg.width);
            for b in &report.bins {
                table.push(vec![b.radius.into(), (b.deformed / report.deformed_mass).into(), (b.classical / report.classical_mass).into()]);
            }
            let r = table.column("radius");
            run_plot = Some(line_chart(
                "Radial mass distribution",
                "distance from source",
                "mass fraction",
                &[
                    Series::new("deformed", &r, &table.column("deformed")),
                    Series::new("classical", &r, &table.column("classical")),
                ],
            ));
        }
    }
    let mut run = Run::new(Output::Table(table));
    run.plot = run_plot;
    Ok(run)
}
