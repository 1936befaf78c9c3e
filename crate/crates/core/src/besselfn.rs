//! The Bessel profile family `φ_n`.
//!
//! `φ_n` is the solution of `f'' + (n-1) f'/r + f = 0` with `f(0) = 1`,
//! `f'(0) = 0`. It has the Taylor series `Σ b_k r^{2k}` with
//! `1/b_k = ∏_{j=1..k} (-2j)(n-2+2j)`, and the closed form
//! `φ_n(r) = Γ(n/2) (2/r)^{n/2-1} J_{n/2-1}(r)`. Familiar members are
//! `φ_1 = cos`, `φ_2 = J_0`, `φ_3 = sinc` and `φ_4 = 2 J_1(r)/r`.
//!
//! Near the origin the series is summed with exactly computed coefficients.
//! Past [`SERIES_RADIUS`] the alternating series loses digits, so the closed
//! form is used instead, with `J_ν` obtained from Miller's backward
//! recurrence (integer orders for even `n`, spherical Bessel functions for
//! odd `n`).

use alloc::vec::Vec;

use libm::{cos, sin, sqrt};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{check_finite, Error, Result};

/// Relative size of the next series term at which summation stops.
pub const DEFAULT_TOLERANCE: f64 = 1e-15;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 400;

/// Radius above which the closed form replaces the Taylor series.
pub const SERIES_RADIUS: f64 = 4.0;

/// Exact Taylor coefficient `b_k` of `φ_n`.
pub fn series_coefficient(n: u32, k: u32) -> Result<BigRational> {
    if k == 0 {
        return Ok(BigRational::one());
    }
    let product = coefficient_denominator(n as i64, k)?;
    Ok(BigRational::new(BigInt::one(), product))
}

fn coefficient_denominator(n: i64, k: u32) -> Result<BigInt> {
    let mut product = BigInt::one();
    for j in 1..=k as i64 {
        let factor = (-2 * j) * (n - 2 + 2 * j);
        if factor == 0 {
            return Err(Error::invalid("n", "series coefficient has a zero factor"));
        }
        product *= factor;
    }
    Ok(product)
}

/// `φ_n(r)`; rejects `n = 0` and non-finite `r`.
pub fn phi(n: u32, r: f64) -> Result<f64> {
    check_finite(r)?;
    Ok(BesselProfile::new(n)?.value(r))
}

/// `ψ_n(r) = r·φ_n(r)`.
pub fn psi(n: u32, r: f64) -> Result<f64> {
    check_finite(r)?;
    Ok(BesselProfile::new(n)?.scaled(r))
}

/// `φ_n'(r)`.
pub fn phi_derivative(n: u32, r: f64) -> Result<f64> {
    check_finite(r)?;
    Ok(BesselProfile::new(n)?.derivative(r))
}

/// `φ'' + (n-1) φ'/r + φ`, which vanishes for the exact profile.
pub fn ode_residual(n: u32, r: f64) -> Result<f64> {
    check_finite(r)?;
    if r == 0.0 {
        return Err(Error::Singular {
            what: "Bessel equation coefficient (n-1)/r",
            at: 0.0,
        });
    }
    Ok(BesselProfile::new(n)?.ode_residual(r))
}

/// Cached evaluator for one member `φ_n` of the family.
///
/// Coefficients are computed once, in exact arithmetic, and rounded to `f64`
/// a single time. A built profile is immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct BesselProfile {
    n: u32,
    tolerance: f64,
    coefficients: Vec<f64>,
}

impl BesselProfile {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_tolerance(n, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(n: u32, tolerance: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "the dimension parameter must be at least 1"));
        }
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(Error::invalid("tolerance", "must lie in (0, 1)"));
        }
        let mut coefficients = Vec::with_capacity(64);
        coefficients.push(1.0);
        let mut denominator = BigInt::one();
        for j in 1..MAX_TERMS as i64 {
            denominator *= (-2 * j) * (n as i64 - 2 + 2 * j);
            let b = match denominator.to_f64() {
                Some(d) if d.is_finite() => 1.0 / d,
                _ => 0.0,
            };
            if b == 0.0 {
                break;
            }
            coefficients.push(b);
        }
        Ok(Self {
            n,
            tolerance,
            coefficients,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    /// Taylor coefficients `b_0, b_1, …` as rounded floats, truncated where
    /// they underflow.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `φ_n(r)`. Even in `r`; NaN propagates.
    pub fn value(&self, r: f64) -> f64 {
        let r = r.abs();
        if r <= SERIES_RADIUS {
            self.series(r, 0)
        } else {
            closed_form(self.n, r)
        }
    }

    /// `ψ_n(r) = r·φ_n(r)`, odd in `r`.
    pub fn scaled(&self, r: f64) -> f64 {
        r * self.value(r)
    }

    /// `φ_n'(r)`, odd in `r`.
    pub fn derivative(&self, r: f64) -> f64 {
        let a = r.abs();
        let d = if a <= SERIES_RADIUS {
            self.series(a, 1)
        } else {
            -a * closed_form(self.n + 2, a) / self.n as f64
        };
        if r < 0.0 {
            -d
        } else {
            d
        }
    }

    /// `φ_n''(r)`, even in `r`.
    pub fn second_derivative(&self, r: f64) -> f64 {
        let r = r.abs();
        if r <= SERIES_RADIUS {
            self.series(r, 2)
        } else {
            let n = self.n as f64;
            -closed_form(self.n + 2, r) / n + r * r * closed_form(self.n + 4, r) / (n * (n + 2.0))
        }
    }

    /// Residual of the Bessel equation at `r > 0`.
    pub fn ode_residual(&self, r: f64) -> f64 {
        let n = self.n as f64;
        self.second_derivative(r) + (n - 1.0) * self.derivative(r) / r + self.value(r)
    }

    // Term-wise differentiated series in r^2, `order` ∈ {0, 1, 2}.
    fn series(&self, r: f64, order: u32) -> f64 {
        let x = r * r;
        let mut sum = 0.0;
        let mut power = 1.0; // r^{2k - order}, built incrementally
        let start = match order {
            0 => 0,
            _ => 1,
        };
        if order == 1 {
            power = r;
        }
        for (k, &b) in self.coefficients.iter().enumerate().skip(start) {
            let kf = k as f64;
            let factor = match order {
                0 => 1.0,
                1 => 2.0 * kf,
                _ => 2.0 * kf * (2.0 * kf - 1.0),
            };
            let term = factor * b * power;
            sum += term;
            if term.abs() <= self.tolerance * sum.abs() && 2.0 * kf > r {
                break;
            }
            power *= x;
        }
        sum
    }
}

/// Closed form of `φ_n` at `r > 0` via Bessel functions of the first kind.
fn closed_form(n: u32, r: f64) -> f64 {
    match n {
        1 => cos(r),
        3 => sin(r) / r,
        _ if n % 2 == 1 => {
            // φ_{2l+1}(r) = (2l-1)!! j_{l-1}(r) / r^{l-1}
            let l = (n - 1) / 2;
            let mut scale = 1.0;
            for i in 0..l {
                scale *= (2 * i + 1) as f64;
            }
            for _ in 0..l - 1 {
                scale /= r;
            }
            scale * spherical_bessel_j(l - 1, r)
        }
        _ => {
            // φ_{2m+2}(r) = m! (2/r)^m J_m(r)
            let m = n / 2 - 1;
            let mut scale = 1.0;
            for i in 1..=m {
                scale *= 2.0 * i as f64 / r;
            }
            scale * bessel_j_integer(m, r)
        }
    }
}

const RESCALE_ABOVE: f64 = 1e200;
const RESCALE_BY: f64 = 1e-200;

fn miller_start(order: u32, x: f64) -> u32 {
    let m = if (order as f64) > x { order as f64 } else { x };
    let start = m + 30.0 + sqrt(40.0 * m);
    let start = start as u32 + 2;
    start + (start % 2)
}

/// `J_m(x)` for integer `m ≥ 0` by Miller's backward recurrence, normalized
/// with `1 = J_0 + 2 Σ J_{2k}`.
pub fn bessel_j_integer(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    let x = x.abs();
    let top = miller_start(m, x);
    let mut next = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut norm = 0.0;
    let mut result = 0.0;
    let mut k = top;
    while k > 0 {
        let previous = 2.0 * k as f64 / x * current - next;
        next = current;
        current = previous;
        k -= 1;
        // current now holds J_k
        if k == m {
            result = current;
        }
        if k == 0 {
            norm += current;
        } else if k % 2 == 0 {
            norm += 2.0 * current;
        }
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            next *= RESCALE_BY;
            norm *= RESCALE_BY;
            result *= RESCALE_BY;
        }
    }
    sign * result / norm
}

/// Spherical Bessel function `j_l(x)` for `x > 0`, by backward recurrence
/// normalized against the closed forms of `j_0` or `j_1`.
pub fn spherical_bessel_j(l: u32, x: f64) -> f64 {
    let j0 = sin(x) / x;
    if l == 0 {
        return j0;
    }
    let j1 = sin(x) / (x * x) - cos(x) / x;
    let top = miller_start(l, x);
    let mut next = 0.0;
    let mut current = 1e-30;
    let mut result = 0.0;
    let mut f1 = 0.0;
    let mut k = top;
    while k > 0 {
        let previous = (2 * k + 1) as f64 / x * current - next;
        next = current;
        current = previous;
        k -= 1;
        if k == l {
            result = current;
        }
        if k == 1 {
            f1 = current;
        }
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            next *= RESCALE_BY;
            result *= RESCALE_BY;
            f1 *= RESCALE_BY;
        }
    }
    let f0 = current;
    if j0.abs() >= j1.abs() {
        result * j0 / f0
    } else {
        result * j1 / f1
    }
}
