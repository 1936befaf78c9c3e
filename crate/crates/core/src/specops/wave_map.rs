//! The discrete-time wave evolution `T(u, v) = (D_h u − v, u)`.

use alloc::vec::Vec;

use super::SpectralDomain;
use crate::error::{Error, Result};
use crate::linalg::norm;

#[derive(Debug, Clone, Copy)]
pub struct DiscreteWaveMap<'a> {
    domain: &'a SpectralDomain,
    h: f64,
    norm: f64,
}

impl<'a> DiscreteWaveMap<'a> {
    /// Requires `‖D_h‖ < 1`.
    pub fn new(domain: &'a SpectralDomain, h: f64) -> Result<Self> {
        let norm = domain.deformed_dirac_norm(h)?;
        if norm >= 1.0 {
            return Err(Error::Precondition {
                what: "‖D_h‖ < 1",
                measured: norm,
                bound: 1.0,
            });
        }
        Ok(Self { domain, h, norm })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn operator_norm(&self) -> f64 {
        self.norm
    }

    /// `D_h` eigenvalue attached to a `D` eigenvalue.
    pub fn multiplier(&self, lambda: f64) -> f64 {
        self.domain.psi(self.h * lambda)
    }

    pub fn step(&self, u: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.domain.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if u.len() != n { u.len() } else { v.len() },
            });
        }
        let du = self.domain.eigen().apply(|l| self.multiplier(l), u);
        let next = du.iter().zip(v).map(|(a, b)| a - b).collect();
        Ok((next, u.to_vec()))
    }

    /// Largest state norm any orbit from `(u, v)` can reach: each eigenmode of
    /// `D` with multiplier `a` stays on `α² − aαβ + β² = const`, whose widest
    /// point has `α² + β² = const / (1 − |a|/2)`.
    pub fn orbit_bound(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let n = self.domain.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if u.len() != n { u.len() } else { v.len() },
            });
        }
        let mut total = 0.0;
        for pair in self.domain.eigen().pairs() {
            let a = self.multiplier(pair.value);
            let (x, y) = (pair.dot(u), pair.dot(v));
            total += (x * x - a * x * y + y * y) / (1.0 - libm::fabs(a) / 2.0);
        }
        Ok(libm::sqrt(total))
    }

    /// Runs `steps` iterations and returns the final state together with the
    /// largest state norm `sqrt(‖u‖² + ‖v‖²)` seen along the way.
    pub fn orbit(&self, u: &[f64], v: &[f64], steps: usize) -> Result<((Vec<f64>, Vec<f64>), f64)> {
        let mut state = (u.to_vec(), v.to_vec());
        let state_norm = |s: &(Vec<f64>, Vec<f64>)| libm::hypot(norm(&s.0), norm(&s.1));
        let mut worst = state_norm(&state);
        for _ in 0..steps {
            state = self.step(&state.0, &state.1)?;
            worst = worst.max(state_norm(&state));
        }
        Ok((state, worst))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specops::build_circle_domain;
    use core::f64::consts::PI;

    #[test]
    fn zero_state_is_fixed() {
        let c = build_circle_domain(3).unwrap();
        let map = DiscreteWaveMap::new(&c, 0.01).unwrap();
        let z = alloc::vec![0.0; c.dim()];
        assert_eq!(map.step(&z, &z).unwrap(), (z.clone(), z));
    }

    #[test]
    fn norm_precondition() {
        let c = build_circle_domain(3).unwrap();
        // ψ_3(hλ) = sin(2πkh); h = 1/12 reaches sin(π/2) = 1 at k = 3
        assert!(matches!(
            DiscreteWaveMap::new(&c, 1.0 / 12.0),
            Err(Error::Precondition { .. })
        ));
        let h = libm::asin(0.9) / (2.0 * PI * 3.0);
        let map = DiscreteWaveMap::new(&c, h).unwrap();
        assert!((map.operator_norm() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn eigenmode_stays_on_companion_ellipse() {
        let c = build_circle_domain(2).unwrap();
        let h = libm::asin(0.9) / (2.0 * PI * 2.0);
        let map = DiscreteWaveMap::new(&c, h).unwrap();
        let pair = c.eigen().pairs().find(|p| p.value > 1.0).unwrap();
        let e = pair.to_dense(c.dim());
        let a = map.multiplier(pair.value);
        let (mut x, mut y) = (0.6, -0.3);
        let q0 = x * x - a * x * y + y * y;
        let mut u: Vec<f64> = e.iter().map(|c| c * x).collect();
        let mut v: Vec<f64> = e.iter().map(|c| c * y).collect();
        for _ in 0..500 {
            (u, v) = map.step(&u, &v).unwrap();
            (x, y) = (a * x - y, x);
            let cu = crate::linalg::dot(&u, &e);
            let cv = crate::linalg::dot(&v, &e);
            assert!((cu - x).abs() < 1e-9 && (cv - y).abs() < 1e-9);
            assert!((cu * cu - a * cu * cv + cv * cv - q0).abs() < 1e-9);
        }
    }

    #[test]
    fn orbit_stays_below_bound() {
        let c = build_circle_domain(4).unwrap();
        let h = libm::asin(0.9) / (2.0 * PI * 4.0);
        let map = DiscreteWaveMap::new(&c, h).unwrap();
        let u: Vec<f64> = (0..c.dim()).map(|i| libm::sin(1.3 * i as f64)).collect();
        let v: Vec<f64> = (0..c.dim()).map(|i| libm::cos(0.7 * i as f64)).collect();
        let bound = map.orbit_bound(&u, &v).unwrap();
        let (_, worst) = map.orbit(&u, &v, 2000).unwrap();
        assert!(worst <= bound * (1.0 + 1e-12));
        assert!(worst > 0.5 * bound);
    }
}
