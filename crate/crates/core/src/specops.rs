//! Spectral domains, the Dirac operator `D = d + d*` and its bounded
//! functional calculus.
//!
//! A [`SpectralDomain`] is a finite graded cochain complex with an orthonormal
//! basis. It stores the differentials, the symmetric Dirac matrix and a block
//! eigendecomposition of it. Everything deformed (`d_t`, `D_t`, `L_t`) is an
//! even or odd function of `D` applied through that eigendecomposition.

mod fourier;
mod simplicial;
mod wave_map;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::besselfn::BesselProfile;
use crate::error::{check_finite, Error, Result};
use crate::linalg::{jacobi_eigen, norm, BlockEigen, Matrix};

pub use fourier::{subsets, wedge_sign, FourierFormSpace, Trig};
pub use simplicial::{integer_product, SimplicialComplex};
pub use wave_map::DiscreteWaveMap;

/// Default cap on the total dimension of a dense domain.
pub const DEFAULT_DIMENSION_CAP: usize = 2048;

/// Relative kernel tolerance used by [`SpectralDomain::betti`] when none is given.
pub const DEFAULT_KERNEL_TOLERANCE: f64 = 1e-8;

const EIGEN_RESIDUAL_BOUND: f64 = 1e-10;

/// A cochain of fixed degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    degree: usize,
    coefficients: Vec<f64>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<f64> {
        self.coefficients
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coefficients)
    }

    pub fn inner(&self, other: &Cochain) -> f64 {
        debug_assert_eq!(self.degree, other.degree);
        crate::linalg::dot(&self.coefficients, &other.coefficients)
    }

    pub fn scaled(&self, s: f64) -> Cochain {
        Cochain {
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|x| x * s).collect(),
        }
    }

    pub fn distance(&self, other: &Cochain) -> f64 {
        crate::linalg::distance(&self.coefficients, &other.coefficients)
    }
}

#[derive(Debug, Clone)]
enum Origin {
    Fourier(FourierFormSpace),
    Simplicial(SimplicialComplex),
    Custom,
}

#[derive(Debug, Clone)]
pub struct SpectralDomain {
    q: usize,
    grading: Vec<usize>,
    offsets: Vec<usize>,
    differentials: Vec<Matrix>,
    dirac: Matrix,
    eigen: BlockEigen,
    profile: BesselProfile,
    origin: Origin,
}

/// Unit circle, forms spanned by `{1, cos 2πkx, sin 2πkx}_{k ≤ M}`.
pub fn build_circle_domain(max_freq: usize) -> Result<SpectralDomain> {
    SpectralDomain::fourier(FourierFormSpace::new(1, max_freq)?, DEFAULT_DIMENSION_CAP)
}

/// Unit flat torus `T^q`, `q ∈ {2, 3}`.
pub fn build_torus_domain(q: usize, max_freq: usize) -> Result<SpectralDomain> {
    build_torus_domain_capped(q, max_freq, DEFAULT_DIMENSION_CAP)
}

pub fn build_torus_domain_capped(q: usize, max_freq: usize, cap: usize) -> Result<SpectralDomain> {
    if !(2..=3).contains(&q) {
        return Err(Error::invalid("q", "torus domains need q ∈ {2, 3}"));
    }
    SpectralDomain::fourier(FourierFormSpace::new(q, max_freq)?, cap)
}

pub fn build_simplicial_domain(complex: &SimplicialComplex) -> Result<SpectralDomain> {
    let top = complex.dimension();
    let differentials = (0..top)
        .map(|k| {
            let rows = complex.coboundary(k);
            let cols = complex.simplices(k).len();
            Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j] as f64)
        })
        .collect();
    let mut domain = SpectralDomain::from_differentials(top.max(1), complex.counts(), differentials)?;
    domain.origin = Origin::Simplicial(complex.clone());
    Ok(domain)
}

impl SpectralDomain {
    fn fourier(space: FourierFormSpace, cap: usize) -> Result<Self> {
        let total = space.total_dim();
        if total > cap {
            return Err(Error::SizeLimit {
                what: format!("form space on T^{} with M = {}", space.q(), space.max_freq()),
                dimension: total,
                cap,
            });
        }
        let differentials = (0..space.q()).map(|k| space.exterior_matrix(k)).collect();
        let mut domain = Self::from_differentials(space.q(), space.grading(), differentials)?;
        domain.origin = Origin::Fourier(space);
        Ok(domain)
    }

    /// Assemble a domain from differentials `d_k : C^k → C^{k+1}` in an
    /// orthonormal basis. `q` sets the Bessel index `q + 2`.
    pub fn from_differentials(q: usize, grading: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("q", "must be at least 1"));
        }
        if differentials.len() + 1 != grading.len() {
            return Err(Error::DimensionMismatch {
                expected: grading.len().saturating_sub(1),
                found: differentials.len(),
            });
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != grading[k + 1] || d.cols() != grading[k] {
                return Err(Error::DimensionMismatch {
                    expected: grading[k + 1],
                    found: d.rows(),
                });
            }
        }
        for k in 1..differentials.len() {
            let dd = differentials[k].matmul(&differentials[k - 1]);
            let scale = 1.0 + differentials[k].max_abs() * differentials[k - 1].max_abs();
            if dd.max_abs() > 1e-12 * scale {
                return Err(Error::Precondition {
                    what: "d∘d = 0",
                    measured: dd.max_abs(),
                    bound: 1e-12 * scale,
                });
            }
        }
        let mut offsets = Vec::with_capacity(grading.len() + 1);
        let mut acc = 0;
        for &g in &grading {
            offsets.push(acc);
            acc += g;
        }
        offsets.push(acc);
        let mut dirac = Matrix::zeros(acc, acc);
        for (k, d) in differentials.iter().enumerate() {
            dirac.set_block(offsets[k + 1], offsets[k], d);
            dirac.set_block(offsets[k], offsets[k + 1], &d.transpose());
        }
        let eigen = BlockEigen::decompose(&dirac)?;
        let residual = eigen.max_residual(&dirac);
        let scale = 1.0 + dirac.max_abs();
        if residual > EIGEN_RESIDUAL_BOUND * scale {
            return Err(Error::Precondition {
                what: "eigenpair residual",
                measured: residual,
                bound: EIGEN_RESIDUAL_BOUND * scale,
            });
        }
        let profile = BesselProfile::new(q as u32 + 2)?;
        Ok(Self {
            q,
            grading,
            offsets,
            differentials,
            dirac,
            eigen,
            profile,
            origin: Origin::Custom,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn top_degree(&self) -> usize {
        self.grading.len() - 1
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn dirac(&self) -> &Matrix {
        &self.dirac
    }

    pub fn eigen(&self) -> &BlockEigen {
        &self.eigen
    }

    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        self.differentials.get(k)
    }

    pub fn profile(&self) -> &BesselProfile {
        &self.profile
    }

    pub fn fourier_space(&self) -> Option<&FourierFormSpace> {
        match &self.origin {
            Origin::Fourier(space) => Some(space),
            _ => None,
        }
    }

    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match &self.origin {
            Origin::Simplicial(c) => Some(c),
            _ => None,
        }
    }

    /// `ψ_{q+2}(r) = r φ_{q+2}(r)`, the spectral profile of `D_t`.
    pub fn psi(&self, r: f64) -> f64 {
        self.profile.scaled(r)
    }

    pub fn cochain(&self, degree: usize, coefficients: Vec<f64>) -> Result<Cochain> {
        let len = *self.grading.get(degree).ok_or(Error::DimensionMismatch {
            expected: self.top_degree(),
            found: degree,
        })?;
        if coefficients.len() != len {
            return Err(Error::CochainShape {
                expected: degree,
                len,
                found: degree,
                found_len: coefficients.len(),
            });
        }
        Ok(Cochain { degree, coefficients })
    }

    pub fn zero(&self, degree: usize) -> Cochain {
        Cochain {
            degree,
            coefficients: vec![0.0; self.grading[degree]],
        }
    }

    fn check(&self, u: &Cochain) -> Result<()> {
        match self.grading.get(u.degree) {
            Some(&len) if len == u.coefficients.len() => Ok(()),
            Some(&len) => Err(Error::CochainShape {
                expected: u.degree,
                len,
                found: u.degree,
                found_len: u.coefficients.len(),
            }),
            None => Err(Error::DimensionMismatch {
                expected: self.top_degree(),
                found: u.degree,
            }),
        }
    }

    /// Graded vector with `u` in its degree slot.
    pub fn embed(&self, u: &Cochain) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        x[self.offsets[u.degree]..self.offsets[u.degree + 1]].copy_from_slice(&u.coefficients);
        x
    }

    /// Degree-`k` part of a graded vector.
    pub fn restrict(&self, k: usize, x: &[f64]) -> Cochain {
        Cochain {
            degree: k,
            coefficients: x[self.offsets[k]..self.offsets[k + 1]].to_vec(),
        }
    }

    pub fn exterior(&self, u: &Cochain) -> Result<Cochain> {
        self.check(u)?;
        let d = self
            .differentials
            .get(u.degree)
            .ok_or(Error::TopDegree { degree: u.degree })?;
        Ok(Cochain {
            degree: u.degree + 1,
            coefficients: d.matvec(&u.coefficients),
        })
    }

    pub fn coexterior(&self, w: &Cochain) -> Result<Cochain> {
        self.check(w)?;
        if w.degree == 0 {
            return Err(Error::invalid("degree", "d* is not defined on 0-forms"));
        }
        Ok(Cochain {
            degree: w.degree - 1,
            coefficients: self.differentials[w.degree - 1].matvec_transpose(&w.coefficients),
        })
    }

    /// `f(D) x` on the full graded space.
    pub fn functional_calculus(&self, f: impl Fn(f64) -> f64, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        for pair in self.eigen.pairs() {
            check_finite(f(pair.value))?;
        }
        Ok(self.eigen.apply(f, x))
    }

    /// `f(D) u` for even `f`, which preserves degree.
    pub fn apply_even(&self, f: impl Fn(f64) -> f64, u: &Cochain) -> Result<Cochain> {
        self.check(u)?;
        let y = self.functional_calculus(f, &self.embed(u))?;
        Ok(self.restrict(u.degree, &y))
    }

    /// `D x` directly from the matrix.
    pub fn dirac_apply(&self, x: &[f64]) -> Vec<f64> {
        self.dirac.matvec(x)
    }

    fn deformation(&self, t: f64) -> Result<impl Fn(f64) -> f64 + '_> {
        check_time(t)?;
        Ok(move |lambda: f64| t * self.profile.value(t * lambda))
    }

    /// `d_t u = t φ_{q+2}(tD) d u`.
    pub fn deformed_d(&self, t: f64, u: &Cochain) -> Result<Cochain> {
        let g = self.deformation(t)?;
        let du = self.exterior(u)?;
        if t == 0.0 {
            return Ok(self.zero(du.degree));
        }
        self.apply_even(g, &du)
    }

    /// `d_t* w = t φ_{q+2}(tD) d* w`.
    pub fn deformed_codifferential(&self, t: f64, w: &Cochain) -> Result<Cochain> {
        let g = self.deformation(t)?;
        let dw = self.coexterior(w)?;
        if t == 0.0 {
            return Ok(self.zero(dw.degree));
        }
        self.apply_even(g, &dw)
    }

    /// Full graded `d` as a square matrix.
    pub fn exterior_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (k, d) in self.differentials.iter().enumerate() {
            m.set_block(self.offsets[k + 1], self.offsets[k], d);
        }
        m
    }

    /// Full graded `d_t` as a square matrix.
    pub fn deformed_d_matrix(&self, t: f64) -> Result<Matrix> {
        let g = self.deformation(t)?;
        Ok(self.eigen.left_multiply(g, &self.exterior_matrix()))
    }

    /// `D_t = ψ_{q+2}(tD)`.
    pub fn deformed_dirac(&self, t: f64) -> Result<Matrix> {
        check_time(t)?;
        Ok(self.eigen.assemble(|l| self.psi(t * l)))
    }

    /// `L_t = D_t²`.
    pub fn deformed_laplacian(&self, t: f64) -> Result<Matrix> {
        check_time(t)?;
        Ok(self.eigen.assemble(|l| {
            let p = self.psi(t * l);
            p * p
        }))
    }

    /// `max_j |ψ_{q+2}(tλ_j)|`.
    pub fn deformed_dirac_norm(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.eigen.pairs().map(|p| libm::fabs(self.psi(t * p.value))).fold(0.0, f64::max))
    }

    /// Eigenvalues of an even function `g(D)` restricted to degree `k`, ascending.
    pub fn even_spectrum(&self, k: usize, g: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
        if k > self.top_degree() {
            return Err(Error::DimensionMismatch {
                expected: self.top_degree(),
                found: k,
            });
        }
        let (lo, hi) = (self.offsets[k], self.offsets[k + 1]);
        let mut values = Vec::with_capacity(hi - lo);
        for block in self.eigen.blocks() {
            let local: Vec<usize> = (0..block.indices.len())
                .filter(|&i| (lo..hi).contains(&block.indices[i]))
                .collect();
            if local.is_empty() {
                continue;
            }
            let weights: Vec<f64> = block.values.iter().map(|&l| g(l)).collect();
            let cols = weights.len();
            let sub = Matrix::from_fn(local.len(), local.len(), |i, j| {
                (0..cols)
                    .map(|c| block.vectors[(local[i], c)] * weights[c] * block.vectors[(local[j], c)])
                    .sum()
            });
            values.extend(jacobi_eigen(&sub)?.values);
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    /// Spectrum of `L` (when `t` is `None`) or `L_t` on degree `k`.
    pub fn laplacian_spectrum(&self, t: Option<f64>, k: usize) -> Result<Vec<f64>> {
        match t {
            None => self.even_spectrum(k, |l| l * l),
            Some(t) => {
                check_time(t)?;
                self.even_spectrum(k, |l| {
                    let p = self.psi(t * l);
                    p * p
                })
            }
        }
    }

    /// Default kernel tolerance for `L_t`: relative to the larger of the top
    /// of its spectrum and of `t² L`, so that `L_t ≡ 0` still has a scale.
    pub fn default_kernel_tolerance(&self, t: f64) -> f64 {
        let mut scale: f64 = 0.0;
        for pair in self.eigen.pairs() {
            let p = self.psi(t * pair.value);
            scale = scale.max(p * p).max(t * t * pair.value * pair.value);
        }
        DEFAULT_KERNEL_TOLERANCE * scale.max(f64::MIN_POSITIVE)
    }

    /// Dimension of the `t`-harmonic forms of degree `k`.
    pub fn betti(&self, t: f64, k: usize, tol: Option<f64>) -> Result<usize> {
        let tol = match tol {
            Some(tol) if tol > 0.0 && tol.is_finite() => tol,
            Some(_) => return Err(Error::invalid("tol", "must be positive and finite")),
            None => self.default_kernel_tolerance(t),
        };
        let spectrum = self.laplacian_spectrum(Some(t), k)?;
        count_kernel(&spectrum, tol)
    }

    pub fn betti_numbers(&self, t: f64, tol: Option<f64>) -> Result<Vec<usize>> {
        (0..=self.top_degree()).map(|k| self.betti(t, k, tol)).collect()
    }

    /// Classical Betti numbers from the kernel of `L`.
    pub fn classical_betti_numbers(&self) -> Result<Vec<usize>> {
        let scale = self.eigen.pairs().map(|p| p.value * p.value).fold(0.0, f64::max);
        let tol = DEFAULT_KERNEL_TOLERANCE * scale.max(1.0);
        (0..=self.top_degree())
            .map(|k| count_kernel(&self.laplacian_spectrum(None, k)?, tol))
            .collect()
    }

    /// `‖U d_t − d_t U‖_F` for an orthogonal `U` that commutes with `d`.
    pub fn symmetry_commutator(&self, u: &Matrix, t: f64) -> Result<f64> {
        let n = self.dim();
        if u.rows() != n || u.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.rows(),
            });
        }
        let d = self.exterior_matrix();
        let defect = u.matmul(&d).sub(&d.matmul(u)).frobenius_norm();
        if defect >= 1e-10 {
            return Err(Error::Precondition {
                what: "‖Ud − dU‖",
                measured: defect,
                bound: 1e-10,
            });
        }
        let dt = self.deformed_d_matrix(t)?;
        Ok(u.matmul(&dt).sub(&dt.matmul(u)).frobenius_norm())
    }
}

fn check_time(t: f64) -> Result<()> {
    check_finite(t)?;
    if t < 0.0 {
        return Err(Error::invalid("t", "must be non-negative"));
    }
    Ok(())
}

fn count_kernel(spectrum: &[f64], tol: f64) -> Result<usize> {
    let mut count = 0;
    for &lambda in spectrum {
        let a = libm::fabs(lambda);
        if a >= tol / 10.0 && a <= 10.0 * tol {
            return Err(Error::SpectralGap { eigenvalue: lambda, tol });
        }
        if a < tol {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::distance;
    use core::f64::consts::PI;
    use libm::{cos, sin, sqrt};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    fn domains() -> Vec<SpectralDomain> {
        vec![
            build_circle_domain(3).unwrap(),
            build_torus_domain(2, 2).unwrap(),
            build_torus_domain(3, 1).unwrap(),
            build_simplicial_domain(&SimplicialComplex::octahedron()).unwrap(),
            build_simplicial_domain(&SimplicialComplex::full_triangle()).unwrap(),
        ]
    }

    #[test]
    fn circle_m1_spectrum() {
        let c = build_circle_domain(1).unwrap();
        assert_eq!(c.grading(), &[3, 3]);
        let ev = c.eigen().eigenvalues();
        // oracle: diagonalize D by hand; ±2π twice each, 0 twice
        let expected = [-2.0 * PI, -2.0 * PI, 0.0, 0.0, 2.0 * PI, 2.0 * PI];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn circle_kernel_is_two_dimensional() {
        for m in 1..=5 {
            let c = build_circle_domain(m).unwrap();
            let zeros = c.eigen().eigenvalues().iter().filter(|l| l.abs() < 1e-9).count();
            assert_eq!(zeros, 2);
        }
    }

    #[test]
    fn dirac_squared_is_laplacian() {
        let c = build_circle_domain(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random(c.dim(), &mut rng);
        let d2u = c.dirac_apply(&c.dirac_apply(&u));
        let lu = c.functional_calculus(|l| l * l, &u).unwrap();
        assert!(distance(&d2u, &lu) < 1e-10);
        let du = c.functional_calculus(|l| l, &u).unwrap();
        assert!(distance(&du, &c.dirac_apply(&u)) < 1e-10);
    }

    #[test]
    fn torus_properties() {
        let t2 = build_torus_domain(2, 1).unwrap();
        let d0 = t2.differential(0).unwrap();
        let d1 = t2.differential(1).unwrap();
        assert!(d1.matmul(d0).max_abs() < 1e-13);
        for m in 1..=3 {
            assert_eq!(build_torus_domain(2, m).unwrap().classical_betti_numbers().unwrap(), vec![1, 2, 1]);
        }
        let t3 = build_torus_domain(3, 1).unwrap();
        let space = t3.fourier_space().unwrap();
        let (mode, _) = space.canonical(&[1, 0, 0]).unwrap();
        let c = FourierFormSpace::cos_index(mode);
        let mut e = vec![0.0; t3.grading()[0]];
        e[c] = 1.0;
        let u = t3.cochain(0, e.clone()).unwrap();
        let lu = t3.apply_even(|l| l * l, &u).unwrap();
        for (a, b) in lu.coefficients().iter().zip(&e) {
            assert!((a - 4.0 * PI * PI * b).abs() < 1e-10);
        }
        assert_eq!(t3.classical_betti_numbers().unwrap(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn torus_size_cap() {
        match build_torus_domain_capped(3, 4, 2048) {
            Err(Error::SizeLimit { dimension, cap, .. }) => {
                assert_eq!(dimension, 8 * 729);
                assert_eq!(cap, 2048);
            }
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn simplicial_betti() {
        let tri = build_simplicial_domain(&SimplicialComplex::triangle_boundary()).unwrap();
        assert_eq!(tri.classical_betti_numbers().unwrap(), vec![1, 1]);
        let full = build_simplicial_domain(&SimplicialComplex::full_triangle()).unwrap();
        assert_eq!(full.classical_betti_numbers().unwrap(), vec![1, 0, 0]);
        let oct = build_simplicial_domain(&SimplicialComplex::octahedron()).unwrap();
        assert_eq!(oct.classical_betti_numbers().unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn cos_propagator_on_sine_mode() {
        let c = build_circle_domain(3).unwrap();
        let t = 0.37;
        for k in 1..=3usize {
            let mut e = vec![0.0; 7];
            e[FourierFormSpace::sin_index(k)] = 1.0;
            let u = c.cochain(0, e.clone()).unwrap();
            let out = c.apply_even(|l| cos(l * t), &u).unwrap();
            let expected = cos(2.0 * PI * k as f64 * t);
            for (a, b) in out.coefficients().iter().zip(&e) {
                assert!((a - expected * b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deformed_d_on_circle_sine() {
        let c = build_circle_domain(2).unwrap();
        let mut e = vec![0.0; 5];
        e[FourierFormSpace::sin_index(1)] = 1.0;
        let u = c.cochain(0, e).unwrap();
        for &t in &[0.1, 0.25, 0.8] {
            let out = c.deformed_d(t, &u).unwrap();
            assert_eq!(out.degree(), 1);
            // [sin 2π(x+t) − sin 2π(x−t)]/2 = sin(2πt) cos(2πx)
            let mut expected = vec![0.0; 5];
            expected[FourierFormSpace::cos_index(1)] = sin(2.0 * PI * t);
            assert!(distance(out.coefficients(), &expected) < 1e-12);
        }
    }

    #[test]
    fn zero_time_and_harmonic_inputs() {
        for dom in domains() {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let u = dom.cochain(0, random(dom.grading()[0], &mut rng)).unwrap();
            assert_eq!(dom.deformed_d(0.0, &u).unwrap().norm(), 0.0);
            let harmonic = dom.cochain(0, vec![1.0 / sqrt(dom.grading()[0] as f64); dom.grading()[0]]);
            if dom.fourier_space().is_none() {
                for &t in &[0.3, 1.0, 4.0] {
                    assert!(dom.deformed_d(t, &harmonic.clone().unwrap()).unwrap().norm() < 1e-12);
                }
            }
            assert!(dom.deformed_dirac(0.0).unwrap().max_abs() == 0.0);
        }
    }

    #[test]
    fn top_degree_rejected() {
        let c = build_circle_domain(1).unwrap();
        let w = c.zero(1);
        assert!(matches!(c.deformed_d(0.5, &w), Err(Error::TopDegree { degree: 1 })));
    }

    #[test]
    fn circle_half_time_is_zero_operator() {
        let c = build_circle_domain(8).unwrap();
        assert!(c.deformed_dirac(0.5).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn dirac_norm_matches_spectrum() {
        let c = build_torus_domain(2, 2).unwrap();
        let t = 0.21;
        let dt = c.deformed_dirac(t).unwrap();
        let spectral = c.deformed_dirac_norm(t).unwrap();
        let dense = jacobi_eigen(&dt).unwrap().values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        assert!((spectral - dense).abs() < 1e-10);
    }

    #[test]
    fn betti_persistence_on_circle() {
        let c = build_circle_domain(8).unwrap();
        assert_eq!(c.betti_numbers(1.0 / sqrt(5.0), None).unwrap(), vec![1, 1]);
        assert_eq!(c.betti_numbers(0.5, None).unwrap(), vec![17, 17]);
        // even k ≤ 8 contribute a (cos, sin) pair each, plus the constant
        assert_eq!(c.betti_numbers(0.25, None).unwrap(), vec![9, 9]);
        let t2 = build_torus_domain(2, 3).unwrap();
        assert_eq!(t2.betti_numbers(1.0 / sqrt(7.0), None).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn spectral_gap_is_reported() {
        let c = build_circle_domain(2).unwrap();
        let t = 0.3;
        let smallest = c
            .laplacian_spectrum(Some(t), 0)
            .unwrap()
            .into_iter()
            .filter(|&v| v > 1e-6)
            .fold(f64::INFINITY, f64::min);
        assert!(matches!(c.betti(t, 0, Some(smallest)), Err(Error::SpectralGap { .. })));
    }

    #[test]
    fn symmetry_commutators() {
        let c = build_circle_domain(4).unwrap();
        let shift = c.fourier_space().unwrap().translation(&[1.0 / 3.0]).unwrap();
        for &t in &[0.3, 1.7] {
            assert!(c.symmetry_commutator(&shift, t).unwrap() < 1e-10);
            assert_eq!(c.symmetry_commutator(&Matrix::identity(c.dim()), t).unwrap(), 0.0);
        }
        let t2 = build_torus_domain(2, 2).unwrap();
        let quarter = t2.fourier_space().unwrap().pullback(&[vec![0, 1], vec![-1, 0]]).unwrap();
        for &t in &[0.3, 1.7] {
            assert!(t2.symmetry_commutator(&quarter, t).unwrap() < 1e-9);
        }
        let mut bad = Matrix::identity(c.dim());
        bad[(1, 1)] = -1.0;
        assert!(matches!(c.symmetry_commutator(&bad, 0.3), Err(Error::Precondition { .. })));
    }

    #[test]
    fn adjoint_and_small_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dom in domains() {
            let u = dom.cochain(0, random(dom.grading()[0], &mut rng)).unwrap();
            let w = dom.cochain(1, random(dom.grading()[1], &mut rng)).unwrap();
            let t = 0.7;
            let lhs = dom.deformed_d(t, &u).unwrap().inner(&w);
            let rhs = u.inner(&dom.deformed_codifferential(t, &w).unwrap());
            assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");

            let du = dom.exterior(&u).unwrap();
            let consts: Vec<f64> = [1e-1, 1e-2, 1e-3]
                .iter()
                .map(|&t| dom.deformed_d(t, &u).unwrap().scaled(1.0 / t).distance(&du) / (t * t))
                .collect();
            assert!((consts[2] - consts[1]).abs() <= 0.01 * consts[1], "{consts:?}");
            assert!(consts[0] > 0.5 * consts[2] && consts[0] < 2.0 * consts[2], "{consts:?}");
        }
    }

    #[test]
    fn eigenvectors_are_preserved() {
        for dom in domains() {
            let t = 0.9;
            let dt = dom.deformed_dirac(t).unwrap();
            for pair in dom.eigen().pairs() {
                let v = pair.to_dense(dom.dim());
                let lhs = dt.matvec(&v);
                let mu = dom.psi(t * pair.value);
                let rhs: Vec<f64> = v.iter().map(|x| mu * x).collect();
                assert!(distance(&lhs, &rhs) < 1e-9);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn deformed_d_squares_to_zero(seed in 0u64..10_000, ti in 0usize..3) {
            let t = [0.1, 0.7, 2.5][ti];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for dom in domains() {
                if dom.top_degree() < 2 { continue; }
                let u = dom.cochain(0, random(dom.grading()[0], &mut rng)).unwrap();
                let once = dom.deformed_d(t, &u).unwrap();
                let twice = dom.deformed_d(t, &once).unwrap();
                prop_assert!(twice.norm() < 1e-10);
            }
        }
    }
}
