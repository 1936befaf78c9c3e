//! Band-limited differential forms on the unit flat torus `T^q`.
//!
//! Scalar coefficients live in the orthonormal real basis
//! `{1, √2 cos 2πm·x, √2 sin 2πm·x}` over canonical modes `m` (first nonzero
//! entry positive) with `|m|_∞ ≤ M`. A `k`-form stores one scalar block per
//! increasing `k`-subset of axes, blocks in lexicographic subset order.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use libm::{cos, exp, pow, sin, sqrt};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Kind of a scalar basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Constant,
    Cos(usize),
    Sin(usize),
}

#[derive(Debug, Clone)]
pub struct FourierFormSpace {
    q: usize,
    max_freq: usize,
    /// Canonical modes; index 0 is the zero mode.
    modes: Vec<Vec<i32>>,
    /// Full-grid index of `m ∈ [-M, M]^q` to (canonical mode index, negated?).
    lookup: Vec<(usize, bool)>,
    components: Vec<Vec<Vec<usize>>>,
}

/// Increasing `k`-subsets of `0..q` in lexicographic order.
pub fn subsets(q: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..q {
            current.push(i);
            rec(i + 1, q, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, q, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of `dx_i ∧ dx_I` relative to `dx_{I ∪ {i}}`, or `None` if `i ∈ I`.
pub fn wedge_sign(i: usize, subset: &[usize]) -> Option<f64> {
    if subset.contains(&i) {
        return None;
    }
    let before = subset.iter().filter(|&&j| j < i).count();
    Some(if before % 2 == 0 { 1.0 } else { -1.0 })
}

fn insert_sorted(subset: &[usize], i: usize) -> Vec<usize> {
    let mut out = subset.to_vec();
    let pos = out.iter().position(|&j| j > i).unwrap_or(out.len());
    out.insert(pos, i);
    out
}

fn is_canonical(m: &[i32]) -> bool {
    m.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0.0;
    for j in 0..n {
        let minor: Vec<Vec<f64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * m[0][j] * determinant(&minor);
    }
    total
}

impl FourierFormSpace {
    pub fn new(q: usize, max_freq: usize) -> Result<Self> {
        if !(1..=3).contains(&q) {
            return Err(Error::invalid("q", "Fourier form spaces support q ∈ {1, 2, 3}"));
        }
        if max_freq == 0 {
            return Err(Error::invalid("max_freq", "must be at least 1"));
        }
        let side = 2 * max_freq + 1;
        let total = side.pow(q as u32);
        let mut modes = vec![vec![0; q]];
        let mut canonical_slot = vec![usize::MAX; total];
        let all: Vec<Vec<i32>> = (0..total)
            .map(|mut idx| {
                let mut m = vec![0i32; q];
                for axis in (0..q).rev() {
                    m[axis] = (idx % side) as i32 - max_freq as i32;
                    idx /= side;
                }
                m
            })
            .collect();
        let zero_index = (total - 1) / 2;
        canonical_slot[zero_index] = 0;
        for (idx, m) in all.iter().enumerate() {
            if is_canonical(m) {
                canonical_slot[idx] = modes.len();
                modes.push(m.clone());
            }
        }
        let lookup = (0..total)
            .map(|idx| {
                if canonical_slot[idx] != usize::MAX {
                    (canonical_slot[idx], false)
                } else {
                    // -m has mirrored grid index
                    (canonical_slot[total - 1 - idx], true)
                }
            })
            .collect();
        let components = (0..=q).map(|k| subsets(q, k)).collect();
        Ok(Self {
            q,
            max_freq,
            modes,
            lookup,
            components,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_freq(&self) -> usize {
        self.max_freq
    }

    pub fn modes(&self) -> &[Vec<i32>] {
        &self.modes
    }

    /// Number of scalar basis functions, `(2M+1)^q`.
    pub fn scalar_dim(&self) -> usize {
        2 * self.modes.len() - 1
    }

    pub fn components(&self, k: usize) -> &[Vec<usize>] {
        &self.components[k]
    }

    pub fn degree_dim(&self, k: usize) -> usize {
        self.components[k].len() * self.scalar_dim()
    }

    pub fn grading(&self) -> Vec<usize> {
        (0..=self.q).map(|k| self.degree_dim(k)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.grading().iter().sum()
    }

    pub fn basis(&self, scalar_index: usize) -> Trig {
        match scalar_index {
            0 => Trig::Constant,
            i if i % 2 == 1 => Trig::Cos(i.div_ceil(2)),
            i => Trig::Sin(i / 2),
        }
    }

    pub fn cos_index(mode: usize) -> usize {
        2 * mode - 1
    }

    pub fn sin_index(mode: usize) -> usize {
        2 * mode
    }

    pub fn mode_of(&self, scalar_index: usize) -> usize {
        scalar_index.div_ceil(2)
    }

    /// Angular frequency `2π|m|` of a canonical mode.
    pub fn frequency(&self, mode: usize) -> f64 {
        let m2: i64 = self.modes[mode].iter().map(|&c| (c as i64) * (c as i64)).sum();
        2.0 * PI * sqrt(m2 as f64)
    }

    /// Canonical index of an arbitrary integer mode, and whether it was
    /// negated to reach the canonical half-space.
    pub fn canonical(&self, m: &[i32]) -> Option<(usize, bool)> {
        let side = 2 * self.max_freq as i32 + 1;
        let mut idx = 0usize;
        for &c in m {
            if c.unsigned_abs() as usize > self.max_freq {
                return None;
            }
            idx = idx * side as usize + (c + self.max_freq as i32) as usize;
        }
        Some(self.lookup[idx])
    }

    /// Value of scalar basis function `scalar_index` at `x`.
    pub fn basis_value(&self, scalar_index: usize, x: &[f64]) -> f64 {
        let phase = |mode: usize| -> f64 {
            2.0 * PI * self.modes[mode].iter().zip(x).map(|(&m, &xi)| m as f64 * xi).sum::<f64>()
        };
        match self.basis(scalar_index) {
            Trig::Constant => 1.0,
            Trig::Cos(mode) => SQRT_2 * cos(phase(mode)),
            Trig::Sin(mode) => SQRT_2 * sin(phase(mode)),
        }
    }

    /// Point value of a scalar coefficient block.
    pub fn evaluate_scalar(&self, coefficients: &[f64], x: &[f64]) -> f64 {
        coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(i, &c)| c * self.basis_value(i, x))
            .sum()
    }

    /// Matrix of `d` from degree `k` to `k + 1`.
    pub fn exterior_matrix(&self, k: usize) -> Matrix {
        let s = self.scalar_dim();
        let mut d = Matrix::zeros(self.degree_dim(k + 1), self.degree_dim(k));
        let targets = &self.components[k + 1];
        for (ci, subset) in self.components[k].iter().enumerate() {
            for axis in 0..self.q {
                let Some(sign) = wedge_sign(axis, subset) else {
                    continue;
                };
                let target = insert_sorted(subset, axis);
                let ti = targets.iter().position(|t| *t == target).expect("subset present");
                for mode in 1..self.modes.len() {
                    let w = 2.0 * PI * self.modes[mode][axis] as f64;
                    if w == 0.0 {
                        continue;
                    }
                    let (c, sn) = (Self::cos_index(mode), Self::sin_index(mode));
                    // ∂ cos = -w sin, ∂ sin = w cos
                    d[(ti * s + sn, ci * s + c)] += -sign * w;
                    d[(ti * s + c, ci * s + sn)] += sign * w;
                }
            }
        }
        d
    }

    /// `d` applied to a degree-`k` coefficient vector, mode by mode.
    pub fn exterior(&self, k: usize, coefficients: &[f64]) -> Vec<f64> {
        let s = self.scalar_dim();
        let mut out = vec![0.0; self.degree_dim(k + 1)];
        let targets = &self.components[k + 1];
        for (ci, subset) in self.components[k].iter().enumerate() {
            for axis in 0..self.q {
                let Some(sign) = wedge_sign(axis, subset) else {
                    continue;
                };
                let target = insert_sorted(subset, axis);
                let ti = targets.iter().position(|t| *t == target).expect("subset present");
                for mode in 1..self.modes.len() {
                    let w = 2.0 * PI * self.modes[mode][axis] as f64;
                    let (c, sn) = (Self::cos_index(mode), Self::sin_index(mode));
                    out[ti * s + sn] += -sign * w * coefficients[ci * s + c];
                    out[ti * s + c] += sign * w * coefficients[ci * s + sn];
                }
            }
        }
        out
    }

    /// Even functional calculus `g(D)` on a degree-`k` vector, where
    /// `g(D)` acts on each mode as `radial(2π|m|)`.
    pub fn apply_radial(&self, radial: impl Fn(f64) -> f64, coefficients: &[f64]) -> Vec<f64> {
        let s = self.scalar_dim();
        let weights: Vec<f64> = (0..self.modes.len()).map(|m| radial(self.frequency(m))).collect();
        coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * weights[self.mode_of(i % s)])
            .collect()
    }

    /// Coefficients of the periodized Gaussian `Σ_n exp(-|x - c - n|²/2σ²)`
    /// centred at `center`, truncated to the band.
    pub fn gaussian_bump(&self, sigma: f64, center: &[f64]) -> Vec<f64> {
        let s = self.scalar_dim();
        let mut out = vec![0.0; s];
        let norm = pow(2.0 * PI * sigma * sigma, self.q as f64 / 2.0);
        out[0] = norm;
        for mode in 1..self.modes.len() {
            let m = &self.modes[mode];
            let m2: f64 = m.iter().map(|&c| (c * c) as f64).sum();
            let amplitude = SQRT_2 * norm * exp(-2.0 * PI * PI * sigma * sigma * m2);
            let phase = 2.0 * PI * m.iter().zip(center).map(|(&a, &b)| a as f64 * b).sum::<f64>();
            // cos(θ - φ) = cos φ cos θ + sin φ sin θ
            out[Self::cos_index(mode)] = amplitude * cos(phase);
            out[Self::sin_index(mode)] = amplitude * sin(phase);
        }
        out
    }

    /// Relative size of the Gaussian spectrum at the band edge.
    pub fn gaussian_tail(&self, sigma: f64) -> f64 {
        let m = self.max_freq as f64;
        exp(-2.0 * PI * PI * sigma * sigma * m * m)
    }

    /// Values of a scalar coefficient block on the uniform grid
    /// `{0, 1/n, …}^q`, row-major with axis 0 slowest.
    pub fn evaluate_grid(&self, coefficients: &[f64], n: usize) -> Vec<f64> {
        let big_m = self.max_freq as i32;
        let side = 2 * self.max_freq + 1;
        let total = side.pow(self.q as u32);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); total];
        spectrum[(total - 1) / 2] = Complex64::new(coefficients[0], 0.0);
        for mode in 1..self.modes.len() {
            let a = coefficients[Self::cos_index(mode)];
            let b = coefficients[Self::sin_index(mode)];
            let mut idx = 0usize;
            for &c in &self.modes[mode] {
                idx = idx * side + (c + big_m) as usize;
            }
            spectrum[idx] = Complex64::new(SQRT_2 * a, -SQRT_2 * b);
        }
        // phases[f][x] = exp(2πi f x / n) for f ∈ [-M, M]
        let phases: Vec<Complex64> = (0..side)
            .flat_map(|f| {
                let freq = f as f64 - big_m as f64;
                (0..n).map(move |x| {
                    let theta = 2.0 * PI * freq * x as f64 / n as f64;
                    Complex64::new(cos(theta), sin(theta))
                })
            })
            .collect();
        // contract the last spectral axis first
        let mut data = spectrum;
        let mut dims = vec![side; self.q];
        for axis in (0..self.q).rev() {
            let outer: usize = dims[..axis].iter().product();
            let inner: usize = dims[axis + 1..].iter().product();
            let mut next = vec![Complex64::new(0.0, 0.0); outer * n * inner];
            for o in 0..outer {
                for f in 0..side {
                    let src = &data[(o * side + f) * inner..(o * side + f + 1) * inner];
                    if src.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                        continue;
                    }
                    for x in 0..n {
                        let e = phases[f * n + x];
                        let dst = &mut next[(o * n + x) * inner..(o * n + x + 1) * inner];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += e * s;
                        }
                    }
                }
            }
            data = next;
            dims[axis] = n;
        }
        data.into_iter().map(|z| z.re).collect()
    }

    /// Orthogonal operator of the translation pullback `f ↦ f(· + shift)` on
    /// the full graded space.
    pub fn translation(&self, shift: &[f64]) -> Result<Matrix> {
        if shift.len() != self.q {
            return Err(Error::DimensionMismatch {
                expected: self.q,
                found: shift.len(),
            });
        }
        let s = self.scalar_dim();
        let n = self.total_dim();
        let mut u = Matrix::zeros(n, n);
        let mut offset = 0;
        for k in 0..=self.q {
            for comp in 0..self.components[k].len() {
                let base = offset + comp * s;
                u[(base, base)] = 1.0;
                for mode in 1..self.modes.len() {
                    let phi = 2.0
                        * PI
                        * self.modes[mode].iter().zip(shift).map(|(&m, &x)| m as f64 * x).sum::<f64>();
                    let (c, sn) = (base + Self::cos_index(mode), base + Self::sin_index(mode));
                    u[(c, c)] = cos(phi);
                    u[(c, sn)] = sin(phi);
                    u[(sn, c)] = -sin(phi);
                    u[(sn, sn)] = cos(phi);
                }
            }
            offset += self.degree_dim(k);
        }
        Ok(u)
    }

    /// Pullback `f ↦ A* f` by the torus automorphism `x ↦ A x` for an
    /// integer matrix `A` with `|det A| = 1` that keeps the band invariant.
    pub fn pullback(&self, a: &[Vec<i32>]) -> Result<Matrix> {
        let q = self.q;
        if a.len() != q || a.iter().any(|row| row.len() != q) {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: a.len(),
            });
        }
        let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
        if determinant(&af).abs() != 1.0 {
            return Err(Error::invalid("a", "torus automorphisms need |det A| = 1"));
        }
        let s = self.scalar_dim();
        // scalar part: basis index -> (target index, sign)
        let mut scalar_map = vec![(0usize, 1.0f64); s];
        for mode in 1..self.modes.len() {
            let m = &self.modes[mode];
            let image: Vec<i32> = (0..q).map(|j| (0..q).map(|i| a[i][j] * m[i]).sum()).collect();
            let (target, negated) = self
                .canonical(&image)
                .ok_or_else(|| Error::invalid("a", "pullback leaves the frequency band"))?;
            scalar_map[Self::cos_index(mode)] = (Self::cos_index(target), 1.0);
            scalar_map[Self::sin_index(mode)] = (Self::sin_index(target), if negated { -1.0 } else { 1.0 });
        }
        let n = self.total_dim();
        let mut u = Matrix::zeros(n, n);
        let mut offset = 0;
        for k in 0..=q {
            let comps = &self.components[k];
            for (ci, subset_i) in comps.iter().enumerate() {
                for (cj, subset_j) in comps.iter().enumerate() {
                    // A*(dx_I) = Σ_J det(A[I, J]) dx_J
                    let minor: Vec<Vec<f64>> =
                        subset_i.iter().map(|&r| subset_j.iter().map(|&c| af[r][c]).collect()).collect();
                    let det = determinant(&minor);
                    if det == 0.0 {
                        continue;
                    }
                    for (b, &(target, sign)) in scalar_map.iter().enumerate() {
                        u[(offset + cj * s + target, offset + ci * s + b)] = det * sign;
                    }
                }
            }
            offset += self.degree_dim(k);
        }
        Ok(u)
    }
}
