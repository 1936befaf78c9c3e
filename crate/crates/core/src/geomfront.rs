//! Geodesics, Jacobi fields and wave fronts on surface charts.
//!
//! The wave front `W_t(p)` is swept by unit-speed geodesics from `p`. Along
//! each ray the Jacobi equation `J'' + K J = 0`, `J(0) = 0`, `J'(0) = 1` is
//! integrated together with the geodesic, so `|W_t| = ∫ |J(t, θ)| dθ` and the
//! front tangent is `J` times the metric unit normal of the ray.

mod charts;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use libm::{ceil, cos, fabs, sin, sqrt};

use crate::error::{check_finite, Error, Result};

pub use charts::{sphere_cancellation, sphere_centers};

/// Step of the central differences for metric partials.
pub const PARTIAL_STEP: f64 = 1e-5;
/// Step of the central differences in the Brioschi formula.
pub const BRIOSCHI_STEP: f64 = 1e-4;
/// Default integrator step length.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Metric `(g11, g12, g22)` at a point.
pub type MetricFn = Box<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>;
/// `[∂_x, ∂_y]` of `(g11, g12, g22)`.
pub type PartialsFn = Box<dyn Fn(f64, f64) -> [[f64; 3]; 2] + Send + Sync>;
pub type ScalarFn = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }
}

pub struct SurfaceChart {
    name: String,
    metric: MetricFn,
    partials: Option<PartialsFn>,
    curvature: Option<ScalarFn>,
    rect: Rect,
    center: (f64, f64),
}

impl fmt::Debug for SurfaceChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceChart")
            .field("name", &self.name)
            .field("rect", &self.rect)
            .field("analytic_partials", &self.partials.is_some())
            .field("analytic_curvature", &self.curvature.is_some())
            .finish()
    }
}

/// `Γ^k_{ij}`, indexed `[k][i][j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel(pub [[[f64; 2]; 2]; 2]);

impl SurfaceChart {
    /// A chart from metric coefficients, checked positive definite on a
    /// sample grid of the rectangle.
    pub fn new(name: impl Into<String>, metric: MetricFn, rect: Rect, center: (f64, f64)) -> Result<Self> {
        if !(rect.x0 < rect.x1 && rect.y0 < rect.y1) {
            return Err(Error::invalid("rect", "empty parameter rectangle"));
        }
        let n = 16;
        for i in 0..=n {
            for j in 0..=n {
                let x = rect.x0 + (rect.x1 - rect.x0) * i as f64 / n as f64;
                let y = rect.y0 + (rect.y1 - rect.y0) * j as f64 / n as f64;
                let [e, f, g] = metric(x, y);
                if !(e > 0.0 && e * g - f * f > 0.0) {
                    return Err(Error::invalid("metric", alloc::format!("not positive definite at ({x}, {y})")));
                }
            }
        }
        if !rect.contains(center.0, center.1) {
            return Err(Error::OutsideChart {
                x: center.0,
                y: center.1,
            });
        }
        Ok(Self {
            name: name.into(),
            metric,
            partials: None,
            curvature: None,
            rect,
            center,
        })
    }

    pub fn with_partials(mut self, partials: PartialsFn) -> Self {
        self.partials = Some(partials);
        self
    }

    pub fn with_curvature(mut self, curvature: ScalarFn) -> Self {
        self.curvature = Some(curvature);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    /// Default base point for fronts.
    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.rect.contains(x, y)
    }

    fn check(&self, x: f64, y: f64) -> Result<()> {
        if self.contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutsideChart { x, y })
        }
    }

    pub fn metric(&self, x: f64, y: f64) -> [f64; 3] {
        (self.metric)(x, y)
    }

    pub fn metric_partials(&self, x: f64, y: f64) -> [[f64; 3]; 2] {
        if let Some(p) = &self.partials {
            return p(x, y);
        }
        let h = PARTIAL_STEP;
        let diff = |a: [f64; 3], b: [f64; 3]| [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h), (a[2] - b[2]) / (2.0 * h)];
        [
            diff(self.metric(x + h, y), self.metric(x - h, y)),
            diff(self.metric(x, y + h), self.metric(x, y - h)),
        ]
    }

    pub fn christoffel(&self, x: f64, y: f64) -> Result<Christoffel> {
        self.check(x, y)?;
        Ok(self.christoffel_unchecked(x, y))
    }

    fn christoffel_unchecked(&self, x: f64, y: f64) -> Christoffel {
        let [e, f, g] = self.metric(x, y);
        let det = e * g - f * f;
        let inv = [[g / det, -f / det], [-f / det, e / det]];
        let d = self.metric_partials(x, y);
        // ∂_l g_ij
        let dg = |l: usize, i: usize, j: usize| -> f64 {
            match (i, j) {
                (0, 0) => d[l][0],
                (1, 1) => d[l][2],
                _ => d[l][1],
            }
        };
        let mut gamma = [[[0.0; 2]; 2]; 2];
        for (k, gk) in gamma.iter_mut().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    gk[i][j] = (0..2)
                        .map(|l| 0.5 * inv[k][l] * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j)))
                        .sum();
                }
            }
        }
        Christoffel(gamma)
    }

    /// Gauss curvature by the Brioschi formula with central differences.
    pub fn brioschi_curvature(&self, x: f64, y: f64) -> f64 {
        let h = BRIOSCHI_STEP;
        let m = |dx: f64, dy: f64| self.metric(x + dx * h, y + dy * h);
        let c = m(0.0, 0.0);
        let (xp, xm, yp, ym) = (m(1.0, 0.0), m(-1.0, 0.0), m(0.0, 1.0), m(0.0, -1.0));
        let (pp, pm, mp, mm) = (m(1.0, 1.0), m(1.0, -1.0), m(-1.0, 1.0), m(-1.0, -1.0));
        let du = |i: usize| (xp[i] - xm[i]) / (2.0 * h);
        let dv = |i: usize| (yp[i] - ym[i]) / (2.0 * h);
        let duu = |i: usize| (xp[i] - 2.0 * c[i] + xm[i]) / (h * h);
        let dvv = |i: usize| (yp[i] - 2.0 * c[i] + ym[i]) / (h * h);
        let duv = |i: usize| (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h * h);
        let (e, f, g) = (c[0], c[1], c[2]);
        let det3 = |a: [[f64; 3]; 3]| {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        };
        let m1 = [
            [-0.5 * dvv(0) + duv(1) - 0.5 * duu(2), 0.5 * du(0), du(1) - 0.5 * dv(0)],
            [dv(1) - 0.5 * du(2), e, f],
            [0.5 * dv(2), f, g],
        ];
        let m2 = [[0.0, 0.5 * dv(0), 0.5 * du(2)], [0.5 * dv(0), e, f], [0.5 * du(2), f, g]];
        let w = e * g - f * f;
        (det3(m1) - det3(m2)) / (w * w)
    }

    pub fn gaussian_curvature(&self, x: f64, y: f64) -> f64 {
        match &self.curvature {
            Some(k) => k(x, y),
            None => self.brioschi_curvature(x, y),
        }
    }

    /// Metric-orthonormal, positively oriented frame at a point.
    fn frame(&self, x: f64, y: f64) -> ([f64; 2], [f64; 2]) {
        let [e, f, g] = self.metric(x, y);
        let det = e * g - f * f;
        let e1 = [1.0 / sqrt(e), 0.0];
        let e2 = [-f / sqrt(e * det), e / sqrt(e * det)];
        (e1, e2)
    }

    /// Unit vector at `(x, y)` obtained by turning `v` a quarter turn.
    fn quarter_turn(&self, x: f64, y: f64, v: [f64; 2]) -> [f64; 2] {
        let [e, f, g] = self.metric(x, y);
        let s = sqrt(e * g - f * f);
        [-(f * v[0] + g * v[1]) / s, (e * v[0] + f * v[1]) / s]
    }

    /// `g(v, v)`.
    pub fn speed_squared(&self, x: f64, y: f64, v: [f64; 2]) -> f64 {
        let [e, f, g] = self.metric(x, y);
        e * v[0] * v[0] + 2.0 * f * v[0] * v[1] + g * v[1] * v[1]
    }
}

/// Position, velocity and Jacobi data at the end of a ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayEnd {
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
    pub j: f64,
    pub dj: f64,
}

fn default_steps(t: f64) -> usize {
    (ceil(fabs(t) / DEFAULT_STEP) as usize).max(1)
}

fn ray(chart: &SurfaceChart, p: (f64, f64), theta: f64, t: f64, steps: Option<usize>) -> Result<RayEnd> {
    check_finite(theta)?;
    check_finite(t)?;
    if t < 0.0 {
        return Err(Error::invalid("t", "must be non-negative"));
    }
    chart.check(p.0, p.1)?;
    let steps = steps.unwrap_or_else(|| default_steps(t));
    if steps == 0 {
        return Err(Error::invalid("steps", "must be positive"));
    }
    let (e1, e2) = chart.frame(p.0, p.1);
    let (c, s) = (cos(theta), sin(theta));
    let mut state = [p.0, p.1, c * e1[0] + s * e2[0], c * e1[1] + s * e2[1], 0.0, 1.0];
    let h = t / steps as f64;
    let rhs = |s: &[f64; 6], time: f64| -> Result<[f64; 6]> {
        if !chart.contains(s[0], s[1]) || !s.iter().all(|v| v.is_finite()) {
            return Err(Error::LeftChart { time, x: s[0], y: s[1] });
        }
        let Christoffel(g) = chart.christoffel_unchecked(s[0], s[1]);
        let v = [s[2], s[3]];
        let acc = |k: usize| -(0..2).map(|i| (0..2).map(|j| g[k][i][j] * v[i] * v[j]).sum::<f64>()).sum::<f64>();
        let k = chart.gaussian_curvature(s[0], s[1]);
        Ok([v[0], v[1], acc(0), acc(1), s[5], -k * s[4]])
    };
    let axpy = |a: &[f64; 6], k: &[f64; 6], f: f64| -> [f64; 6] { core::array::from_fn(|i| a[i] + f * k[i]) };
    for n in 0..steps {
        let time = n as f64 * h;
        let k1 = rhs(&state, time)?;
        let k2 = rhs(&axpy(&state, &k1, h / 2.0), time + h / 2.0)?;
        let k3 = rhs(&axpy(&state, &k2, h / 2.0), time + h / 2.0)?;
        let k4 = rhs(&axpy(&state, &k3, h), time + h)?;
        state = core::array::from_fn(|i| state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    if !chart.contains(state[0], state[1]) {
        return Err(Error::LeftChart {
            time: t,
            x: state[0],
            y: state[1],
        });
    }
    Ok(RayEnd {
        x: state[0],
        y: state[1],
        dx: state[2],
        dy: state[3],
        j: state[4],
        dj: state[5],
    })
}

/// Unit-speed geodesic from `p` at angle `θ` (measured in an orthonormal
/// frame whose first vector is along `∂_x`), integrated to time `t`.
pub fn geodesic(chart: &SurfaceChart, p: (f64, f64), theta: f64, t: f64, steps: Option<usize>) -> Result<RayEnd> {
    ray(chart, p, theta, t, steps)
}

/// `J(t)` along the same ray.
pub fn jacobi_field(chart: &SurfaceChart, p: (f64, f64), theta: f64, t: f64) -> Result<f64> {
    Ok(ray(chart, p, theta, t, None)?.j)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSample {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    /// `∂_θ` of the endpoint.
    pub tangent: [f64; 2],
    pub jacobi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFront {
    pub center: (f64, f64),
    pub radius: f64,
    pub samples: Vec<FrontSample>,
    /// Set when some `J ≤ 0` or the sampled polyline crosses itself.
    pub self_intersecting: bool,
}

impl WaveFront {
    pub fn compute(chart: &SurfaceChart, p: (f64, f64), t: f64, n_theta: usize) -> Result<Self> {
        if n_theta < 3 {
            return Err(Error::invalid("n_theta", "need at least 3 angles"));
        }
        let mut samples = Vec::with_capacity(n_theta);
        for i in 0..n_theta {
            let theta = 2.0 * PI * i as f64 / n_theta as f64;
            let end = ray(chart, p, theta, t, None)?;
            let normal = chart.quarter_turn(end.x, end.y, [end.dx, end.dy]);
            samples.push(FrontSample {
                theta,
                x: end.x,
                y: end.y,
                tangent: [end.j * normal[0], end.j * normal[1]],
                jacobi: end.j,
            });
        }
        let folded = t > 0.0 && samples.iter().any(|s| s.jacobi <= 0.0);
        let self_intersecting = folded || polyline_crosses(&samples);
        Ok(Self {
            center: p,
            radius: t,
            samples,
            self_intersecting,
        })
    }

    /// Periodic trapezoid rule for `∫ |J| dθ`.
    pub fn length(&self) -> f64 {
        let n = self.samples.len() as f64;
        2.0 * PI / n * self.samples.iter().map(|s| fabs(s.jacobi)).sum::<f64>()
    }

    /// `∫_{W_t} P dx + Q dy`, parametrised by launch angle.
    pub fn line_integral(&self, form: impl Fn(f64, f64) -> [f64; 2]) -> f64 {
        let n = self.samples.len() as f64;
        2.0 * PI / n
            * self
                .samples
                .iter()
                .map(|s| {
                    let [p, q] = form(s.x, s.y);
                    p * s.tangent[0] + q * s.tangent[1]
                })
                .sum::<f64>()
    }

    pub fn polyline(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.x, s.y)).collect()
    }
}

fn polyline_crosses(samples: &[FrontSample]) -> bool {
    let n = samples.len();
    let seg = |i: usize| ((samples[i].x, samples[i].y), (samples[(i + 1) % n].x, samples[(i + 1) % n].y));
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                return true;
            }
        }
    }
    false
}

pub fn wavefront_length(chart: &SurfaceChart, p: (f64, f64), t: f64, n_theta: usize) -> Result<f64> {
    Ok(WaveFront::compute(chart, p, t, n_theta)?.length())
}

/// `(2|W_h| − |W_{2h}|) / (2π h³)`.
pub fn r2d2_curvature(chart: &SurfaceChart, p: (f64, f64), h: f64, n_theta: usize) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::invalid("h", "must be positive"));
    }
    let a = wavefront_length(chart, p, h, n_theta)?;
    let b = wavefront_length(chart, p, 2.0 * h, n_theta)?;
    Ok((2.0 * a - b) / (2.0 * PI * h * h * h))
}

/// `3 (2π r − |W_r|) / (π r³)`.
pub fn puiseux_curvature(chart: &SurfaceChart, p: (f64, f64), r: f64, n_theta: usize) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid("r", "must be positive"));
    }
    let w = wavefront_length(chart, p, r, n_theta)?;
    Ok(3.0 * (2.0 * PI * r - w) / (PI * r * r * r))
}

/// Boundary version `(2|W_r| − |W_{2r}|)/(2π r²)` for a point on the
/// boundary circle of a disc of radius `R`, with `|W_r| = 2π r arccos(r/2R)`.
pub fn r2d2_boundary(big_r: f64, r: f64) -> Result<f64> {
    check_finite(big_r)?;
    check_finite(r)?;
    if !(big_r > 0.0 && r > 0.0) {
        return Err(Error::invalid("r", "radii must be positive"));
    }
    if r >= big_r {
        return Err(Error::invalid("r", "need 2r < 2R so that both fronts stay inside the model"));
    }
    let w = |s: f64| 2.0 * PI * s * libm::acos(s / (2.0 * big_r));
    Ok((2.0 * w(r) - w(2.0 * r)) / (2.0 * PI * r * r))
}

/// Repeated Richardson extrapolation of values `f(h_i)` with `h_{i+1} = h_i / 2`
/// and an error expansion in even powers of `h`.
pub fn richardson(values: &[f64]) -> f64 {
    let mut row = values.to_vec();
    let mut factor = 4.0;
    while row.len() > 1 {
        row = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        factor *= 4.0;
    }
    row.first().copied().unwrap_or(f64::NAN)
}

/// Result of a front line integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegral {
    pub value: f64,
    pub self_intersecting: bool,
}

pub fn wavefront_line_integral(
    chart: &SurfaceChart,
    form: impl Fn(f64, f64) -> [f64; 2],
    p: (f64, f64),
    t: f64,
    n_theta: usize,
) -> Result<LineIntegral> {
    let front = WaveFront::compute(chart, p, t, n_theta)?;
    Ok(LineIntegral {
        value: front.line_integral(form),
        self_intersecting: front.self_intersecting,
    })
}

/// How centres are placed on the unit flat torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterLayout {
    /// `k × k` grid; `n` must be a perfect square.
    Grid,
    /// Additive recurrence with the plastic-number increments.
    Kronecker,
}

pub fn torus_centers(n: usize, layout: CenterLayout) -> Result<Vec<(f64, f64)>> {
    match layout {
        CenterLayout::Grid => {
            let k = libm::round(sqrt(n as f64)) as usize;
            if k * k != n || k == 0 {
                return Err(Error::invalid("n_centers", "grid layout needs a positive perfect square"));
            }
            Ok((0..n)
                .map(|i| ((i / k) as f64 / k as f64, (i % k) as f64 / k as f64))
                .collect())
        }
        CenterLayout::Kronecker => {
            // 1/ρ and 1/ρ² for the plastic number ρ
            let a1 = 0.754_877_666_246_692_7;
            let a2 = 0.569_840_290_998_053_3;
            Ok((1..=n)
                .map(|i| {
                    let f = i as f64;
                    ((0.5 + a1 * f) % 1.0, (0.5 + a2 * f) % 1.0)
                })
                .collect())
        }
    }
}

/// Mean of `∫_{W_t(p)} f` over centres `p` on the flat torus.
pub fn global_cancellation(
    form: impl Fn(f64, f64) -> [f64; 2],
    t: f64,
    n_centers: usize,
    layout: CenterLayout,
    n_theta: usize,
) -> Result<f64> {
    let chart = SurfaceChart::flat_torus();
    let centers = torus_centers(n_centers, layout)?;
    let mut total = 0.0;
    for c in &centers {
        total += wavefront_line_integral(&chart, &form, *c, t, n_theta)?.value;
    }
    Ok(total / centers.len() as f64)
}
