use deformd_core::huygens::{ball_average_exact, pizzetti_ball, pizzetti_sphere, polarization_expand, sphere_average_exact};
use deformd_core::poly::TPoly;
use num_traits::ToPrimitive;
use rand::Rng;

use super::at_least;
use crate::config::Params;
use crate::output::{Case, Output, Report, Table};
use crate::random::{polynomial, rng};
use crate::{CliError, Run};

/// Largest coefficient of `a − b`, as a float.
pub(crate) fn gap(a: &TPoly, b: &TPoly) -> f64 {
    (a - b).max_abs_coefficient().to_f64().unwrap_or(f64::INFINITY)
}

pub fn pizzetti(p: &Params) -> Result<Run, CliError> {
    let cases = at_least("cases", p.cases.unwrap_or(if p.quick { 20 } else { 200 }), 1)?;
    if let Some(q) = p.q {
        if !(1..=3).contains(&q) {
            return Err(CliError::usage("--q must be 1, 2 or 3"));
        }
    }
    let mut r = rng(p.seed());
    let mut report = Report::new("pizzetti");
    for i in 0..cases {
        let q = p.q.unwrap_or(1 + i % 3);
        let terms = r.gen_range(1..=6);
        let g = polynomial(&mut r, q, 8, terms);
        let ball = gap(&pizzetti_ball(&g, q)?, &ball_average_exact(&g, q)?);
        let sphere = gap(&pizzetti_sphere(&g, q)?, &sphere_average_exact(&g, q)?);
        let degree = g.total_degree().unwrap_or(0);
        report
            .cases
            .push(Case::at_most(format!("case {i:03} q={q} degree={degree}"), ball.max(sphere), 0.0));
    }
    Ok(Run::new(Output::Report(report)))
}

pub fn polarize(p: &Params) -> Result<Run, CliError> {
    let src = p.exponents.as_deref().unwrap_or("1,1");
    let exponents: Vec<u32> = src
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("--exponents `{src}`: {e}")))?;
    if exponents.is_empty() {
        return Err(CliError::usage("--exponents needs at least one entry"));
    }
    let pol = polarization_expand(&exponents)?;
    let mut table = Table::new(&["weight", "coefficients"]);
    for (c, w) in &pol.terms {
        let coeffs: Vec<String> = c.iter().map(i64::to_string).collect();
        table.push(vec![w.to_string().into(), coeffs.join(" ").into()]);
    }
    let verified = pol.verify();
    table.note("power", pol.power);
    table.note("scale", pol.scale.to_string());
    table.note("verified", verified);
    let mut run = Run::new(Output::Table(table));
    if !verified {
        let mut report = Report::new("polarize");
        report.cases.push(Case::with(format!("exponents {src}"), false, 1.0, 0.0));
        run.failure = Some(report);
    }
    Ok(run)
}
