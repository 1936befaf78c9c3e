//! The property suite behind `verify-all`.

use std::f64::consts::PI;

use deformd_core::besselfn::{bessel_j_integer, BesselProfile};
use deformd_core::geomfront::{global_cancellation, r2d2_curvature, wavefront_length, CenterLayout, SurfaceChart};
use deformd_core::huygens::{
    ball_average_exact, finite_difference_identity, flux_corollary_check, locality_probe, pizzetti_ball,
    polarization_expand, polarization_normalization, ProbeConfig, ProbeOutcome,
};
use deformd_core::linalg::{distance, norm};
use deformd_core::specops::{build_circle_domain, build_torus_domain, DiscreteWaveMap};
use deformd_core::waveforms::WaveSolution;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::commands::gap;
use crate::config::Params;
use crate::output::{Case, Report};
use crate::random::{form, polynomial, rng, unit_cochain};
use crate::CliError;

pub fn verify_all(p: &Params) -> Result<Report, CliError> {
    let quick = p.quick;
    let seed = p.seed();
    let mut report = Report::new("verify-all");
    let suites: [(&str, fn(bool, u64) -> Result<Vec<Case>, CliError>); 9] = [
        ("bessel", bessel),
        ("spectral", spectral),
        ("waves", waves),
        ("pizzetti", pizzetti),
        ("polarization", polarization),
        ("probe", probe),
        ("geometry", geometry),
        ("wave-map", wave_map),
        ("symmetry", symmetry),
    ];
    for (name, suite) in suites {
        for mut case in suite(quick, seed)? {
            case.name = format!("{name}: {}", case.name);
            report.cases.push(case);
        }
    }
    Ok(report)
}

fn bessel(quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let points = if quick { 50 } else { 200 };
    let rs: Vec<f64> = (1..=points).map(|i| 30.0 * i as f64 / points as f64).collect();
    let (mut ode, mut rec, mut closed) = (0.0f64, 0.0f64, 0.0f64);
    for q in 1..=8u32 {
        let (phi, lifted) = (BesselProfile::new(q)?, BesselProfile::new(q + 2)?);
        for &r in &rs {
            ode = ode.max(phi.ode_residual(r).abs());
            let qf = q as f64;
            rec = rec.max((r * lifted.derivative(r) + qf * lifted.value(r) - qf * phi.value(r)).abs());
        }
    }
    let forms: [(u32, fn(f64) -> f64); 5] = [
        (1, f64::cos),
        (2, |r| bessel_j_integer(0, r)),
        (3, |r| r.sin() / r),
        (4, |r| 2.0 * bessel_j_integer(1, r) / r),
        (5, |r| 3.0 * (r.sin() - r * r.cos()) / (r * r * r)),
    ];
    for (n, f) in forms {
        let phi = BesselProfile::new(n)?;
        for &r in &rs {
            closed = closed.max((phi.value(r) - f(r)).abs());
        }
    }
    Ok(vec![
        Case::at_most("ode residual", ode, 1e-9),
        Case::at_most("recursion lemma", rec, 1e-8),
        Case::at_most("closed forms", closed, 1e-10),
    ])
}

fn spectral(_quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let c = build_circle_domain(8)?;
    let count = |b: Vec<usize>, want: &[usize]| b.iter().zip(want).map(|(a, b)| a.abs_diff(*b)).sum::<usize>() as f64;
    let mut cases = vec![
        Case::at_most("circle t=1/sqrt5", count(c.betti_numbers(1.0 / 5f64.sqrt(), None)?, &[1, 1]), 0.0),
        Case::at_most("circle t=1/2", count(c.betti_numbers(0.5, None)?, &[17, 17]), 0.0),
        Case::at_most("circle t=1/4", count(c.betti_numbers(0.25, None)?, &[9, 9]), 0.0),
    ];
    let t2 = build_torus_domain(2, 2)?;
    cases.push(Case::at_most("torus classical", count(t2.classical_betti_numbers()?, &[1, 2, 1]), 0.0));
    let dt = t2.deformed_d_matrix(0.37)?;
    cases.push(Case::at_most("d_t squared", dt.matmul(&dt).max_abs(), 1e-10));
    Ok(cases)
}

fn waves(quick: bool, seed: u64) -> Result<Vec<Case>, CliError> {
    let c = build_circle_domain(2)?;
    let f = unit_cochain(&mut rng(seed), &c, 0);
    let mut worst: f64 = 0.0;
    let qs = if quick { 1..=3u32 } else { 1..=6u32 };
    for q in qs {
        let vel = WaveSolution::deformed_velocity(&c, q, &f)?;
        let pos = WaveSolution::deformed_position(&c, q, &f)?;
        for t in [0.5, 1.0, 2.0] {
            worst = worst.max(vel.residual(t, 1e-3)?).max(pos.residual(t, 1e-3)?);
        }
    }
    // q = 1 is d'Alembert: d_t f = (f(x + t) − f(x − t)) / 2
    let c8 = build_circle_domain(8)?;
    let space = c8.fourier_space().expect("fourier domain");
    let g = unit_cochain(&mut rng(seed ^ 1), &c8, 0);
    let mut dalembert: f64 = 0.0;
    for t in [0.1, 1.0 / 3.0, 0.9] {
        let dtf = c8.deformed_d(t, &g)?;
        let plus = space.translation(&[t])?;
        let minus = space.translation(&[-t])?;
        let x = c8.embed(&g);
        let (a, b) = (plus.matvec(&x), minus.matvec(&x));
        let s = c8.grading()[0];
        let mid: Vec<f64> = (0..s).map(|i| (a[i] - b[i]) / 2.0).collect();
        dalembert = dalembert.max(distance(dtf.coefficients(), &mid));
    }
    Ok(vec![
        Case::at_most("deformed residuals", worst, 1e-6),
        Case::at_most("d'Alembert", dalembert, 1e-12),
    ])
}

fn pizzetti(quick: bool, seed: u64) -> Result<Vec<Case>, CliError> {
    let mut r = rng(seed);
    let n = if quick { 15 } else { 200 };
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let q = 1 + i % 3;
        let terms = r.gen_range(1..=6);
        let g = polynomial(&mut r, q, 8, terms);
        worst = worst.max(gap(&pizzetti_ball(&g, q)?, &ball_average_exact(&g, q)?));
    }
    let mut flux: f64 = 0.0;
    for i in 0..if quick { 6 } else { 50 } {
        let f = form(&mut r, 2 + i % 2, 5);
        let check = flux_corollary_check(&f)?;
        flux = flux.max(check.difference().max_abs_coefficient().to_f64().unwrap_or(f64::INFINITY));
    }
    Ok(vec![
        Case::at_most("series equals exact average", worst, 0.0),
        Case::at_most("flux corollary", flux, 0.0),
    ])
}

fn polarization(quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let (max_deg, max_vars) = if quick { (4, 3) } else { (6, 4) };
    let mut failures = 0usize;
    for vars in 1..=max_vars {
        let mut e = vec![0u32; vars];
        loop {
            let total: u32 = e.iter().sum();
            if total >= 1 && total <= max_deg && !polarization_expand(&e)?.verify() {
                failures += 1;
            }
            // odometer over exponent vectors with entries ≤ max_deg
            let mut i = 0;
            while i < vars {
                e[i] += 1;
                if e[i] <= max_deg {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == vars {
                break;
            }
        }
    }
    let mut table = 0usize;
    for n in 1..=10u32 {
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        for j in 0..=n {
            let want = if j == n {
                if n % 2 == 0 { fact.clone() } else { -fact.clone() }
            } else {
                BigInt::from(0)
            };
            if finite_difference_identity(n, j) != want {
                table += 1;
            }
        }
        if polarization_normalization(n) != BigRational::from_integer(BigInt::from(1u64 << n)) {
            table += 1;
        }
    }
    Ok(vec![
        Case::at_most("monomials reproduced", failures as f64, 0.0),
        Case::at_most("difference table and normalization", table as f64, 0.0),
    ])
}

fn probe(quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let cfg = if quick {
        ProbeConfig::new(2, 32, 0.04, 0.3, 0.1)
    } else {
        ProbeConfig::new(2, 64, 0.02, 0.3, 0.05)
    };
    match locality_probe(&cfg)? {
        ProbeOutcome::Resolved(r) => Ok(vec![Case::with(
            "classical / deformed leakage",
            r.classical_leakage >= 10.0 * r.deformed_leakage,
            r.classical_leakage / r.deformed_leakage,
            10.0,
        )]),
        ProbeOutcome::Unresolved { .. } => Ok(vec![Case::with("classical / deformed leakage", false, f64::NAN, 10.0)]),
    }
}

fn geometry(quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let sphere = SurfaceChart::sphere();
    let mut length: f64 = 0.0;
    for t in [0.25, 0.5, 1.0] {
        length = length.max((wavefront_length(&sphere, (0.0, 0.0), t, 64)? - 2.0 * PI * t.sin()).abs());
    }
    let h = 0.1;
    let ks = r2d2_curvature(&sphere, (0.0, 0.0), h, 64)?;
    let kh = r2d2_curvature(&SurfaceChart::hyperbolic(), (0.0, 1.0), h, 64)?;
    let centers = if quick { 64 } else { 256 };
    let avg = global_cancellation(|x, _| [0.0, (2.0 * PI * x).sin()], 0.2, centers, CenterLayout::Grid, 64)?;
    Ok(vec![
        Case::at_most("sphere front length", length, 1e-6),
        Case::at_most("R2-D2 sphere", (ks - (1.0 - h * h / 4.0)).abs(), 3e-3),
        Case::at_most("R2-D2 hyperbolic", (kh + 1.0 + h * h / 4.0).abs(), 3e-3),
        Case::at_most("flat torus cancellation", avg.abs(), 1e-6),
    ])
}

fn wave_map(quick: bool, seed: u64) -> Result<Vec<Case>, CliError> {
    let c = build_circle_domain(8)?;
    let h = 0.9f64.asin() / (2.0 * PI * 8.0);
    let map = DiscreteWaveMap::new(&c, h)?;
    let mut r = rng(seed);
    let n = c.dim();
    let mut u: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect();
    let mut v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect();
    let bound = map.orbit_bound(&u, &v)?;
    let mut violations = 0usize;
    for _ in 0..if quick { 1000 } else { 10_000 } {
        (u, v) = map.step(&u, &v)?;
        if norm(&u).hypot(norm(&v)) > bound * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    Ok(vec![
        Case::at_most("operator norm", (map.operator_norm() - 0.9).abs(), 1e-12),
        Case::at_most("ellipse violations", violations as f64, 0.0),
    ])
}

fn symmetry(_quick: bool, _seed: u64) -> Result<Vec<Case>, CliError> {
    let mut worst: f64 = 0.0;
    let c = build_circle_domain(6)?;
    let t2 = build_torus_domain(2, 2)?;
    let cs = c.fourier_space().expect("fourier domain");
    let ts = t2.fourier_space().expect("fourier domain");
    let unitaries = [
        (&c, cs.translation(&[0.31])?),
        (&c, cs.pullback(&[vec![-1]])?),
        (&t2, ts.translation(&[0.2, 0.7])?),
        (&t2, ts.pullback(&[vec![0, 1], vec![-1, 0]])?),
    ];
    for (d, u) in &unitaries {
        for t in [0.3, 1.7] {
            worst = worst.max(d.symmetry_commutator(u, t)?);
        }
    }
    Ok(vec![Case::at_most("commutators", worst, 1e-8)])
}
