//! Numerical check of sharp wave fronts on the flat torus.
//!
//! A Gaussian bump `f` sits at the origin. The deformed solution
//! `t φ_{q+2}(tD) df` and the classical one `t sinc(tD) df` are evaluated on a
//! uniform grid, and the share of their `L²` mass closer than `t − w` to the
//! source is reported.

use alloc::vec;
use alloc::vec::Vec;

use libm::{floor, sin, sqrt};

use crate::besselfn::BesselProfile;
use crate::error::{Error, Result};
use crate::specops::FourierFormSpace;

/// Largest admissible relative Gaussian spectrum at the band edge.
pub const SPECTRAL_TAIL_BOUND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub q: usize,
    pub max_freq: usize,
    pub sigma: f64,
    pub t: f64,
    pub width: f64,
    /// Grid points per axis.
    pub grid: usize,
    /// Number of radial histogram bins.
    pub bins: usize,
}

impl ProbeConfig {
    pub fn new(q: usize, max_freq: usize, sigma: f64, t: f64, width: f64) -> Self {
        Self {
            q,
            max_freq,
            sigma,
            t,
            width,
            grid: if q == 2 { 256 } else { 64 },
            bins: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialBin {
    pub radius: f64,
    pub deformed: f64,
    pub classical: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub deformed_leakage: f64,
    pub classical_leakage: f64,
    pub deformed_mass: f64,
    pub classical_mass: f64,
    pub spectral_tail: f64,
    pub bins: Vec<RadialBin>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    Resolved(ProbeReport),
    /// The front is not separated from the source at this `t`.
    Unresolved { reason: &'static str },
}

pub fn locality_probe(config: &ProbeConfig) -> Result<ProbeOutcome> {
    let ProbeConfig {
        q,
        max_freq,
        sigma,
        t,
        width,
        grid,
        bins,
    } = *config;
    if !(2..=3).contains(&q) {
        return Err(Error::invalid("q", "the probe runs on T^2 or T^3"));
    }
    for (name, v) in [("sigma", sigma), ("t", t)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(name, "must be positive and finite"));
        }
    }
    if !(width.is_finite() && width >= 0.0) {
        return Err(Error::invalid("width", "must be non-negative and finite"));
    }
    if grid < 8 || bins == 0 {
        return Err(Error::invalid("grid", "need at least 8 points per axis and one bin"));
    }
    if t + width >= 0.5 {
        return Err(Error::invalid("t", "t + w must stay below half the torus period"));
    }
    if t < 5.0 * sigma {
        return Ok(ProbeOutcome::Unresolved {
            reason: "t is within 5σ of the source",
        });
    }
    if t - width <= sigma {
        return Ok(ProbeOutcome::Unresolved {
            reason: "interior radius t − w is not larger than σ",
        });
    }
    let space = FourierFormSpace::new(q, max_freq)?;
    let tail = space.gaussian_tail(sigma);
    if tail >= SPECTRAL_TAIL_BOUND {
        return Err(Error::Precondition {
            what: "bump spectral tail",
            measured: tail,
            bound: SPECTRAL_TAIL_BOUND,
        });
    }
    let f = space.gaussian_bump(sigma, &vec![0.0; q]);
    let df = space.exterior(0, &f);
    let profile = BesselProfile::new(q as u32 + 2)?;
    let deformed = space.apply_radial(|l| t * profile.value(t * l), &df);
    let classical = space.apply_radial(|l| if l == 0.0 { t } else { sin(t * l) / l }, &df);

    let s = space.scalar_dim();
    let points = grid.pow(q as u32);
    let mut def_sq = vec![0.0; points];
    let mut cl_sq = vec![0.0; points];
    for c in 0..q {
        let a = space.evaluate_grid(&deformed[c * s..(c + 1) * s], grid);
        let b = space.evaluate_grid(&classical[c * s..(c + 1) * s], grid);
        for i in 0..points {
            def_sq[i] += a[i] * a[i];
            cl_sq[i] += b[i] * b[i];
        }
    }

    let cell = 1.0 / points as f64;
    let r_max = 0.5 * sqrt(q as f64);
    let bin_width = r_max / bins as f64;
    let mut histogram: Vec<RadialBin> = (0..bins)
        .map(|i| RadialBin {
            radius: (i as f64 + 0.5) * bin_width,
            deformed: 0.0,
            classical: 0.0,
        })
        .collect();
    let interior = t - width;
    let (mut def_total, mut cl_total, mut def_in, mut cl_in) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..points {
        let mut rem = i;
        let mut r2 = 0.0;
        for _ in 0..q {
            let k = rem % grid;
            rem /= grid;
            let x = k as f64 / grid as f64;
            let d = x.min(1.0 - x);
            r2 += d * d;
        }
        let r = sqrt(r2);
        let (dm, cm) = (def_sq[i] * cell, cl_sq[i] * cell);
        def_total += dm;
        cl_total += cm;
        if r < interior {
            def_in += dm;
            cl_in += cm;
        }
        let b = (floor(r / bin_width) as usize).min(bins - 1);
        histogram[b].deformed += dm;
        histogram[b].classical += cm;
    }
    Ok(ProbeOutcome::Resolved(ProbeReport {
        deformed_leakage: def_in / def_total,
        classical_leakage: cl_in / cl_total,
        deformed_mass: def_total,
        classical_mass: cl_total,
        spectral_tail: tail,
        bins: histogram,
    }))
}
