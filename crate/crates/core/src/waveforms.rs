//! Closed-form spectral solutions of the classical and deformed wave
//! equations, with a finite-difference residual harness.
//!
//! With `D_tt u = u_tt + (q−1)(u_t/t − u/t²)` and `d_tt u = u_tt + (q−1)u_t/t`:
//!
//! * `u(t) = d_t f = t φ_{q+2}(tD) d f` solves `D_tt u + L u = 0`, `u(0) = 0`;
//! * `u(t) = φ_q(tD) d f` solves `d_tt u + L u = 0`, `u(0) = d f`.
//!
//! The Bessel index `q` is a free parameter here; it need not equal the
//! dimension of the domain.

use alloc::vec::Vec;

use libm::{cos, sin};
use num_rational::BigRational;
use num_traits::Zero;

use crate::besselfn::BesselProfile;
use crate::error::{check_finite, Error, Result};
use crate::poly::{integer, TPoly};
use crate::specops::{Cochain, SpectralDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    Classical,
    DeformedVelocity,
    DeformedPosition,
}

#[derive(Debug, Clone)]
pub struct WaveSolution<'a> {
    domain: &'a SpectralDomain,
    kind: WaveKind,
    q: u32,
    degree: usize,
    profile: Option<BesselProfile>,
    /// Graded initial data: `u0` for the classical case, `d f` otherwise.
    first: Vec<f64>,
    /// Graded `v0`, classical case only.
    second: Vec<f64>,
}

/// `cos(tD) u0 + t sinc(tD) v0`.
pub fn classical_solution(domain: &SpectralDomain, u0: &Cochain, v0: &Cochain, t: f64) -> Result<Cochain> {
    WaveSolution::classical(domain, u0, v0)?.evaluate(t)
}

/// `t φ_{q+2}(tD) d f`.
pub fn deformed_solution_velocity(domain: &SpectralDomain, q: u32, f: &Cochain, t: f64) -> Result<Cochain> {
    WaveSolution::deformed_velocity(domain, q, f)?.evaluate(t)
}

/// `φ_q(tD) d f`.
pub fn deformed_solution_position(domain: &SpectralDomain, q: u32, f: &Cochain, t: f64) -> Result<Cochain> {
    WaveSolution::deformed_position(domain, q, f)?.evaluate(t)
}

pub fn residual_deformed(solution: &WaveSolution<'_>, t: f64, dt: f64) -> Result<f64> {
    solution.residual(t, dt)
}

impl<'a> WaveSolution<'a> {
    pub fn classical(domain: &'a SpectralDomain, u0: &Cochain, v0: &Cochain) -> Result<Self> {
        if u0.degree() != v0.degree() {
            return Err(Error::DimensionMismatch {
                expected: u0.degree(),
                found: v0.degree(),
            });
        }
        domain.cochain(u0.degree(), u0.coefficients().to_vec())?;
        domain.cochain(v0.degree(), v0.coefficients().to_vec())?;
        Ok(Self {
            domain,
            kind: WaveKind::Classical,
            q: 1,
            degree: u0.degree(),
            profile: None,
            first: domain.embed(u0),
            second: domain.embed(v0),
        })
    }

    pub fn deformed_velocity(domain: &'a SpectralDomain, q: u32, f: &Cochain) -> Result<Self> {
        Self::deformed(domain, q, f, WaveKind::DeformedVelocity, q + 2)
    }

    pub fn deformed_position(domain: &'a SpectralDomain, q: u32, f: &Cochain) -> Result<Self> {
        Self::deformed(domain, q, f, WaveKind::DeformedPosition, q)
    }

    fn deformed(domain: &'a SpectralDomain, q: u32, f: &Cochain, kind: WaveKind, index: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("q", "must be at least 1"));
        }
        let df = domain.exterior(f)?;
        Ok(Self {
            domain,
            kind,
            q,
            degree: df.degree(),
            profile: Some(BesselProfile::new(index)?),
            first: domain.embed(&df),
            second: Vec::new(),
        })
    }

    pub fn kind(&self) -> WaveKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> &SpectralDomain {
        self.domain
    }

    /// Multiplier of the solution on a `D`-eigenvector with eigenvalue `λ`.
    fn multiplier(&self, t: f64, lambda: f64) -> (f64, f64) {
        match (self.kind, &self.profile) {
            (WaveKind::Classical, _) => {
                let s = if lambda == 0.0 { t } else { sin(lambda * t) / lambda };
                (cos(lambda * t), s)
            }
            (WaveKind::DeformedVelocity, Some(p)) => (t * p.value(t * lambda), 0.0),
            (WaveKind::DeformedPosition, Some(p)) => (p.value(t * lambda), 0.0),
            _ => unreachable!("deformed solutions carry a profile"),
        }
    }

    /// Time derivative of the multiplier.
    fn multiplier_rate(&self, t: f64, lambda: f64) -> (f64, f64) {
        match (self.kind, &self.profile) {
            (WaveKind::Classical, _) => (-lambda * sin(lambda * t), cos(lambda * t)),
            (WaveKind::DeformedVelocity, Some(p)) => {
                (p.value(t * lambda) + t * lambda * p.derivative(t * lambda), 0.0)
            }
            (WaveKind::DeformedPosition, Some(p)) => (lambda * p.derivative(t * lambda), 0.0),
            _ => unreachable!("deformed solutions carry a profile"),
        }
    }

    fn combine(&self, m: impl Fn(f64) -> (f64, f64)) -> Vec<f64> {
        let mut out = self.domain.eigen().apply(|l| m(l).0, &self.first);
        if self.kind == WaveKind::Classical {
            let b = self.domain.eigen().apply(|l| m(l).1, &self.second);
            for (o, x) in out.iter_mut().zip(b) {
                *o += x;
            }
        }
        out
    }

    /// Solution at time `t`. Negative `t` is allowed; deformed profiles
    /// extend by parity.
    pub fn evaluate(&self, t: f64) -> Result<Cochain> {
        check_finite(t)?;
        let graded = self.combine(|l| self.multiplier(t, l));
        Ok(self.domain.restrict(self.degree, &graded))
    }

    /// Exact `u_t(t)`.
    pub fn time_derivative(&self, t: f64) -> Result<Cochain> {
        check_finite(t)?;
        let graded = self.combine(|l| self.multiplier_rate(t, l));
        Ok(self.domain.restrict(self.degree, &graded))
    }

    /// `‖u_t‖² + ‖D u‖²`.
    pub fn energy(&self, t: f64) -> Result<f64> {
        let ut = self.time_derivative(t)?;
        let u = self.domain.embed(&self.evaluate(t)?);
        let du = self.domain.dirac_apply(&u);
        Ok(ut.inner(&ut) + crate::linalg::dot(&du, &du))
    }

    /// Norm of the matching PDE residual at `t`, with `u_tt` from the
    /// five-point stencil and `u_t` from the fourth-order central difference.
    /// The classical kind is checked against `u_tt + L u`.
    pub fn residual(&self, t: f64, dt: f64) -> Result<f64> {
        check_finite(t)?;
        check_finite(dt)?;
        if dt <= 0.0 {
            return Err(Error::invalid("dt", "must be positive"));
        }
        if t < 5.0 * dt {
            return Err(Error::Singular {
                what: "time acceleration needs t ≥ 5 dt",
                at: t,
            });
        }
        let at = |s: f64| self.evaluate(s).map(Cochain::into_coefficients);
        let (u_m2, u_m1, u_0, u_p1, u_p2) = (at(t - 2.0 * dt)?, at(t - dt)?, at(t)?, at(t + dt)?, at(t + 2.0 * dt)?);
        let lu = self
            .domain
            .apply_even(|l| l * l, &self.domain.cochain(self.degree, u_0.clone())?)?
            .into_coefficients();
        let qm1 = self.q as f64 - 1.0;
        let mut sq = 0.0;
        for i in 0..u_0.len() {
            let utt = (-u_p2[i] + 16.0 * u_p1[i] - 30.0 * u_0[i] + 16.0 * u_m1[i] - u_m2[i]) / (12.0 * dt * dt);
            let ut = (-u_p2[i] + 8.0 * u_p1[i] - 8.0 * u_m1[i] + u_m2[i]) / (12.0 * dt);
            let acceleration = match self.kind {
                WaveKind::Classical => utt,
                WaveKind::DeformedVelocity => utt + qm1 * (ut / t - u_0[i] / (t * t)),
                WaveKind::DeformedPosition => utt + qm1 * ut / t,
            };
            let r = acceleration + lu[i];
            sq += r * r;
        }
        Ok(libm::sqrt(sq))
    }
}

/// `D_tt h = h'' + (q−1)(h'/t − h/t²)`, exactly.
pub fn bessel_acceleration(q: u32, h: &TPoly) -> TPoly {
    let qm1 = integer(q as i64 - 1);
    let h1 = h.derivative();
    let inner = &h1.shift(-1) - &h.shift(-2);
    &h1.derivative() + &inner.scale(&qm1)
}

/// `d_tt h = h'' + (q−1)h'/t`, exactly.
pub fn bessel_velocity_acceleration(q: u32, h: &TPoly) -> TPoly {
    let h1 = h.derivative();
    &h1.derivative() + &h1.shift(-1).scale(&integer(q as i64 - 1))
}

/// `(∂_t + q/t)(∂_t − 1/t) h − D_tt h` as an exact Laurent polynomial.
/// It vanishes identically.
pub fn factorization_check(q: u32, h: &TPoly) -> TPoly {
    let inner = &h.derivative() - &h.shift(-1);
    let outer = &inner.derivative() + &inner.shift(-1).scale(&integer(q as i64));
    &outer - &bessel_acceleration(q, h)
}

/// Solution of `D_tt f = t^{n−1}` with `f(0) = 0`, and its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSource {
    pub q: u32,
    pub n: u32,
    /// `f(t) = (t^{n+1} − t)/(n(q+n))`.
    pub solution: TPoly,
    /// `D_tt f − t^{n−1}`, identically zero.
    pub residual: TPoly,
    pub value_at_zero: BigRational,
    pub slope_at_zero: BigRational,
}

pub fn monomial_source_solution(q: u32, n: u32) -> Result<MonomialSource> {
    if q == 0 || n == 0 {
        return Err(Error::invalid("q, n", "both must be at least 1"));
    }
    let denom = integer(n as i64 * (q as i64 + n as i64));
    let solution = (&TPoly::power(n as i32 + 1) - &TPoly::power(1)).scale(&denom.recip());
    let residual = &bessel_acceleration(q, &solution) - &TPoly::power(n as i32 - 1);
    let value_at_zero = if solution.terms().any(|(k, _)| k < 0) {
        return Err(Error::invalid("solution", "unexpected negative powers"));
    } else {
        solution.coefficient(0)
    };
    let slope_at_zero = solution.coefficient(1);
    Ok(MonomialSource {
        q,
        n,
        solution,
        residual,
        value_at_zero,
        slope_at_zero,
    })
}

/// `a t²/(q+1) + c t`, which solves `D_tt u = a`.
pub fn homogeneous_solution(q: u32, a: &BigRational, c: &BigRational) -> TPoly {
    let mut p = TPoly::monomial(a / integer(q as i64 + 1), 2);
    p.add_term(1, c.clone());
    p
}

/// `true` if `D_tt p = a` exactly.
pub fn solves_constant_source(q: u32, p: &TPoly, a: &BigRational) -> bool {
    let mut rhs = TPoly::zero();
    if !a.is_zero() {
        rhs.add_term(0, a.clone());
    }
    (&bessel_acceleration(q, p) - &rhs).is_zero()
}
