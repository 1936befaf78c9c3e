//! Exact averaging oracles and the locality probe.
//!
//! Sphere and ball means of polynomials are computed exactly from sphere
//! moments and compared with the Pizzetti series
//! `Σ_k t^{2k} Δ^k g(0) / C(n, k)`, `C(n, k) = Π_{j≤k} 2j(n − 2 + 2j)`,
//! where `n = q + 2` for the ball and `n = q` for the sphere.

mod forms;
mod probe;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{integer, MultiPoly, TPoly};

pub use forms::PolyKForm;
pub use probe::{locality_probe, ProbeConfig, ProbeOutcome, ProbeReport, RadialBin};

/// Largest total degree accepted by [`polarization_expand`].
pub const POLARIZATION_DEGREE_CAP: u32 = 12;

/// `coefficient · π^pi_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: BigRational,
    pub pi_power: u32,
}

impl PiMultiple {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * libm::pow(core::f64::consts::PI, self.pi_power as f64)
    }
}

fn double_factorial(n: i64) -> BigInt {
    let mut out = BigInt::one();
    let mut k = n;
    while k > 1 {
        out *= k;
        k -= 2;
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// `E[ω^α]` for `ω` uniform on the unit sphere `S^{q−1}`.
pub fn sphere_moment(q: usize, alpha: &[u32]) -> Result<BigRational> {
    if q == 0 || alpha.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: alpha.len(),
        });
    }
    if alpha.iter().any(|a| a % 2 == 1) {
        return Ok(BigRational::zero());
    }
    let num = alpha
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * double_factorial(a as i64 - 1));
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let den = (0..half).fold(BigInt::one(), |acc, j| acc * (q as i64 + 2 * j as i64));
    Ok(BigRational::new(num, den))
}

/// Area of the unit sphere `S^{q−1}`.
pub fn sphere_area(q: usize) -> PiMultiple {
    let half = (q / 2) as u32;
    let coefficient = if q % 2 == 0 {
        // 2 π^{q/2} / (q/2 − 1)!
        BigRational::new(BigInt::from(2), factorial(half - 1))
    } else {
        // 2 (2π)^{(q−1)/2} / (q − 2)!!
        BigRational::new(BigInt::from(2) * num_traits::pow(BigInt::from(2), half as usize), double_factorial(q as i64 - 2))
    };
    PiMultiple {
        coefficient,
        pi_power: half,
    }
}

/// `∫_{S^{q−1}} x^α dS`.
pub fn sphere_monomial_integral(q: usize, alpha: &[u32]) -> Result<PiMultiple> {
    let moment = sphere_moment(q, alpha)?;
    let area = sphere_area(q);
    Ok(PiMultiple {
        coefficient: moment * area.coefficient,
        pi_power: area.pi_power,
    })
}

fn check_vars(g: &MultiPoly, q: usize) -> Result<()> {
    if g.nvars() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: g.nvars(),
        });
    }
    Ok(())
}

/// Mean of `g` over the sphere of radius `t` about the origin, as a polynomial in `t`.
pub fn sphere_average_exact(g: &MultiPoly, q: usize) -> Result<TPoly> {
    check_vars(g, q)?;
    let mut out = TPoly::zero();
    for (alpha, c) in g.terms() {
        let m = sphere_moment(q, alpha)?;
        out.add_term(alpha.iter().sum::<u32>() as i32, c * m);
    }
    Ok(out)
}

/// Mean of `g` over the ball of radius `t` about the origin.
pub fn ball_average_exact(g: &MultiPoly, q: usize) -> Result<TPoly> {
    check_vars(g, q)?;
    let mut out = TPoly::zero();
    for (alpha, c) in g.terms() {
        let deg: u32 = alpha.iter().sum();
        let radial = BigRational::new(BigInt::from(q), BigInt::from(deg as usize + q));
        out.add_term(deg as i32, c * sphere_moment(q, alpha)? * radial);
    }
    Ok(out)
}

/// `C(n, k) = Π_{j=1..k} 2j (n − 2 + 2j)`.
pub fn pizzetti_constant(n: usize, k: u32) -> BigInt {
    (1..=k as i64).fold(BigInt::one(), |acc, j| acc * (2 * j) * (n as i64 - 2 + 2 * j))
}

fn pizzetti(g: &MultiPoly, q: usize, n: usize) -> Result<TPoly> {
    check_vars(g, q)?;
    let mut out = TPoly::zero();
    let mut power = g.clone();
    let mut k = 0u32;
    while !power.is_zero() {
        let c = power.constant_term();
        if !c.is_zero() {
            out.add_term(2 * k as i32, c / BigRational::from_integer(pizzetti_constant(n, k)));
        }
        power = power.laplacian();
        k += 1;
    }
    Ok(out)
}

pub fn pizzetti_ball(g: &MultiPoly, q: usize) -> Result<TPoly> {
    pizzetti(g, q, q + 2)
}

pub fn pizzetti_sphere(g: &MultiPoly, q: usize) -> Result<TPoly> {
    pizzetti(g, q, q)
}

/// Both sides of `t · E_{B_t}[df] = q · (flux of f through W_t) / |W_t|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluxCheck {
    pub ball_side: TPoly,
    pub flux_side: TPoly,
}

impl FluxCheck {
    pub fn difference(&self) -> TPoly {
        &self.ball_side - &self.flux_side
    }

    pub fn holds(&self) -> bool {
        self.difference().is_zero()
    }
}

/// Flux corollary for a polynomial `(q−1)`-form. The flux side is computed
/// from the vector field `F` with `f = Σ_i (−1)^i F_i dx_{î}` by integrating
/// `F(tω)·ω` over the unit sphere.
pub fn flux_corollary_check(f: &PolyKForm) -> Result<FluxCheck> {
    let q = f.q();
    if q < 1 || f.degree() + 1 != q {
        return Err(Error::invalid("f", "flux corollary needs a (q−1)-form"));
    }
    let all: Vec<usize> = (0..q).collect();
    let div = f.exterior_derivative().component(&all);
    let ball_side = pizzetti_ball(&div, q)?.shift(1);
    let mut flux_side = TPoly::zero();
    for i in 0..q {
        let missing: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        let mut component = f.component(&missing);
        if i % 2 == 1 {
            component = -&component;
        }
        for (alpha, c) in component.terms() {
            let mut beta = alpha.clone();
            beta[i] += 1;
            let deg: u32 = alpha.iter().sum();
            flux_side.add_term(deg as i32, c * sphere_moment(q, &beta)? * integer(q as i64));
        }
    }
    Ok(FluxCheck { ball_side, flux_side })
}

/// Signed sum of `n`-th powers of linear forms reproducing a monomial:
/// `x^m = scale · Σ weight · (Σ_i c_i x_i)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub exponents: Vec<u32>,
    pub power: u32,
    pub scale: BigRational,
    /// Linear-form coefficients mapped to their integer weight.
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Polarization {
    pub fn expand(&self) -> MultiPoly {
        let nvars = self.exponents.len();
        let mut out = MultiPoly::zero(nvars);
        for (coefficients, weight) in &self.terms {
            let linear: Vec<BigRational> = coefficients.iter().map(|&c| integer(c)).collect();
            let w = BigRational::from_integer(weight.clone()) * &self.scale;
            out = &out + &MultiPoly::linear(&linear).pow(self.power).scale(&w);
        }
        out
    }

    /// `true` if the expansion equals `x^m` exactly.
    pub fn verify(&self) -> bool {
        self.expand() == MultiPoly::monomial(self.exponents.clone(), BigRational::one())
    }
}

/// Polarization of `Π x_i^{m_i}`: each variable fills `m_i` slots of
/// `n! Π_slots y_j = 2^{−n} Σ_s (Π s_j)(Σ s_j y_j)^n` and the slots are then
/// identified with their variables.
pub fn polarization_expand(exponents: &[u32]) -> Result<Polarization> {
    let n: u32 = exponents.iter().sum();
    if n > POLARIZATION_DEGREE_CAP {
        return Err(Error::SizeLimit {
            what: alloc::format!("polarization of total degree {n}"),
            dimension: n as usize,
            cap: POLARIZATION_DEGREE_CAP as usize,
        });
    }
    let slots: Vec<usize> = exponents
        .iter()
        .enumerate()
        .flat_map(|(v, &m)| core::iter::repeat(v).take(m as usize))
        .collect();
    let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut coefficients = vec![0i64; exponents.len()];
        let mut sign = 1i64;
        for (j, &v) in slots.iter().enumerate() {
            let s = if mask & (1 << j) != 0 { -1 } else { 1 };
            sign *= s;
            coefficients[v] += s;
        }
        *terms.entry(coefficients).or_insert_with(BigInt::zero) += sign;
    }
    terms.retain(|_, w| !w.is_zero());
    let scale = BigRational::new(BigInt::one(), factorial(n) * num_traits::pow(BigInt::from(2), n as usize));
    Ok(Polarization {
        exponents: exponents.to_vec(),
        power: n,
        scale,
        terms,
    })
}

/// `Σ_{k=0..n} (−1)^k C(n, k) k^j`.
pub fn finite_difference_identity(n: u32, j: u32) -> BigInt {
    let mut binom = BigInt::one();
    let mut total = BigInt::zero();
    for k in 0..=n {
        let term = &binom * num_traits::pow(BigInt::from(k), j as usize);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * (n - k) / (k + 1);
    }
    total
}

/// `R = (1/n!) Σ_k C(n, k) (−1)^k (n − 2k)^n`, which equals `2^n`.
pub fn polarization_normalization(n: u32) -> BigRational {
    let mut binom = BigInt::one();
    let mut total = BigInt::zero();
    for k in 0..=n {
        let base = BigInt::from(n as i64 - 2 * k as i64);
        let term = &binom * num_traits::pow(base, n as usize);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * (n - k) / (k + 1);
    }
    BigRational::new(total, factorial(n))
}

/// `1 / C(n, k)` matches `|b_k|` of the Bessel series of `φ_n`.
pub fn pizzetti_matches_bessel(n: u32, k: u32) -> Result<bool> {
    let b = crate::besselfn::series_coefficient(n, k)?;
    let expected = BigRational::new(BigInt::one(), pizzetti_constant(n as usize, k));
    let sign_ok = if k % 2 == 0 { !b.is_negative() } else { b.is_negative() };
    Ok(sign_ok && b.abs() == expected)
}
