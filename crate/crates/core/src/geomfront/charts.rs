//! Named charts and the round-sphere cancellation average.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, sin, sqrt};

use super::{Rect, SurfaceChart, WaveFront};
use crate::error::{Error, Result};

const FAR: f64 = 1e3;

impl SurfaceChart {
    pub fn flat() -> Self {
        Self::new("flat", Box::new(|_, _| [1.0, 0.0, 1.0]), Rect { x0: -FAR, x1: FAR, y0: -FAR, y1: FAR }, (0.0, 0.0))
            .expect("valid chart")
            .with_partials(Box::new(|_, _| [[0.0; 3]; 2]))
            .with_curvature(Box::new(|_, _| 0.0))
    }

    /// Unit flat torus `R²/Z²`, unrolled; forms are supplied periodic.
    pub fn flat_torus() -> Self {
        let mut chart = Self::flat();
        chart.name = "flat-torus".into();
        chart.center = (0.5, 0.5);
        chart
    }

    /// Inverse stereographic chart, `g = 4/s² I` with `s = 1 + x² + y²`.
    pub fn sphere() -> Self {
        let r = 10.0;
        Self::new(
            "sphere",
            Box::new(|x, y| {
                let s = 1.0 + x * x + y * y;
                let c = 4.0 / (s * s);
                [c, 0.0, c]
            }),
            Rect { x0: -r, x1: r, y0: -r, y1: r },
            (0.0, 0.0),
        )
        .expect("valid chart")
        .with_partials(Box::new(|x, y| {
            let s = 1.0 + x * x + y * y;
            let c = -16.0 / (s * s * s);
            [[c * x, 0.0, c * x], [c * y, 0.0, c * y]]
        }))
        .with_curvature(Box::new(|_, _| 1.0))
    }

    /// Colatitude and longitude, `g = diag(1, sin² x)`.
    pub fn sphere_polar() -> Self {
        let eps = 1e-3;
        Self::new(
            "sphere-polar",
            Box::new(|x, _| [1.0, 0.0, sin(x) * sin(x)]),
            Rect { x0: eps, x1: PI - eps, y0: -FAR, y1: FAR },
            (PI / 2.0, 0.0),
        )
        .expect("valid chart")
        .with_partials(Box::new(|x, _| [[0.0, 0.0, 2.0 * sin(x) * cos(x)], [0.0; 3]]))
        .with_curvature(Box::new(|_, _| 1.0))
    }

    /// Upper half-plane, `g = diag(1/y², 1/y²)`.
    pub fn hyperbolic() -> Self {
        Self::new(
            "hyperbolic",
            Box::new(|_, y| [1.0 / (y * y), 0.0, 1.0 / (y * y)]),
            Rect { x0: -FAR, x1: FAR, y0: 1e-6, y1: FAR },
            (0.0, 1.0),
        )
        .expect("valid chart")
        .with_partials(Box::new(|_, y| {
            let c = -2.0 / (y * y * y);
            [[0.0; 3], [c, 0.0, c]]
        }))
        .with_curvature(Box::new(|_, _| -1.0))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "flat" => Ok(Self::flat()),
            "flat-torus" | "torus" => Ok(Self::flat_torus()),
            "sphere" => Ok(Self::sphere()),
            "sphere-polar" => Ok(Self::sphere_polar()),
            "hyperbolic" => Ok(Self::hyperbolic()),
            _ => Err(Error::invalid("chart", "expected flat, flat-torus, sphere, sphere-polar or hyperbolic")),
        }
    }
}

fn embed(u: f64, v: f64) -> ([f64; 3], [[f64; 2]; 3]) {
    let s = 1.0 + u * u + v * v;
    let s2 = s * s;
    let point = [2.0 * u / s, 2.0 * v / s, (1.0 - u * u - v * v) / s];
    let jac = [
        [2.0 / s - 4.0 * u * u / s2, -4.0 * u * v / s2],
        [-4.0 * u * v / s2, 2.0 / s - 4.0 * v * v / s2],
        [-4.0 * u / s2, -4.0 * v / s2],
    ];
    (point, jac)
}

/// Rotation taking the north pole to the unit vector `c`.
fn rotation_to(c: [f64; 3]) -> [[f64; 3]; 3] {
    let [x, y, z] = c;
    if z < -1.0 + 1e-12 {
        return [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
    }
    // Rodrigues about e3 × c
    let k = 1.0 / (1.0 + z);
    [
        [1.0 - k * x * x, -k * x * y, x],
        [-k * x * y, 1.0 - k * y * y, y],
        [-x, -y, z],
    ]
}

/// Fibonacci points on the unit sphere.
pub fn sphere_centers(n: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - sqrt(5.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = sqrt(1.0 - z * z);
            let a = golden * i as f64;
            [r * cos(a), r * sin(a), z]
        })
        .collect()
}

/// Mean over quasi-uniform centres `c` of `∫_{W_t(c)} A`, where `A` is an
/// ambient 1-form restricted to the unit sphere. Each front is traced in a
/// stereographic chart rotated to put `c` at its origin.
pub fn sphere_cancellation(form: impl Fn([f64; 3]) -> [f64; 3], t: f64, n_centers: usize, n_theta: usize) -> Result<f64> {
    if n_centers == 0 {
        return Err(Error::invalid("n_centers", "must be positive"));
    }
    let front = WaveFront::compute(&SurfaceChart::sphere(), (0.0, 0.0), t, n_theta)?;
    let lifted: Vec<([f64; 3], [f64; 3])> = front
        .samples
        .iter()
        .map(|s| {
            let (p, j) = embed(s.x, s.y);
            let tan = core::array::from_fn(|i| j[i][0] * s.tangent[0] + j[i][1] * s.tangent[1]);
            (p, tan)
        })
        .collect();
    let weight = 2.0 * PI / n_theta as f64;
    let mut total = 0.0;
    for c in sphere_centers(n_centers) {
        let rot = rotation_to(c);
        let apply = |v: [f64; 3]| -> [f64; 3] { core::array::from_fn(|i| (0..3).map(|j| rot[i][j] * v[j]).sum()) };
        for (p, tan) in &lifted {
            let a = form(apply(*p));
            let w = apply(*tan);
            total += weight * (a[0] * w[0] + a[1] * w[1] + a[2] * w[2]);
        }
    }
    Ok(total / n_centers as f64)
}
