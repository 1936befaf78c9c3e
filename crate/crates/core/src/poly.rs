//! Exact polynomials over the rationals.
//!
//! [`MultiPoly`] is a sparse multivariate polynomial keyed by exponent
//! vectors; [`TPoly`] is a Laurent polynomial in one variable `t`, used for
//! time profiles and for averages that come out as polynomials in a radius.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The coordinate `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: BigRational) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { nvars, terms }
    }

    /// `Σ c_i x_i`.
    pub fn linear(coefficients: &[BigRational]) -> Self {
        let n = coefficients.len();
        let mut p = Self::zero(n);
        for (i, c) in coefficients.iter().enumerate() {
            p.add_term(
                {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    e
                },
                c.clone(),
            );
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: BigRational) {
        debug_assert_eq!(exponents.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * integer(e[i] as i64));
        }
        out
    }

    /// `Δ = Σ ∂_i²`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for i in 0..self.nvars {
            out = &out + &self.partial(i).partial(i);
        }
        out
    }

    /// Part of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                term *= num_traits::pow(xi.clone(), k as usize);
            }
            total += term;
        }
        total
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = c.to_f64().unwrap_or(f64::NAN);
                for (&xi, &k) in x.iter().zip(e) {
                    term *= libm::pow(xi, k as f64);
                }
                term
            })
            .sum()
    }

    /// `p(x + shift)`, the polynomial re-centred at `shift`.
    pub fn translate(&self, shift: &[BigRational]) -> Self {
        let n = self.nvars;
        let shifted: Vec<MultiPoly> = (0..n)
            .map(|i| &Self::var(n, i) + &Self::constant(n, shift[i].clone()))
            .collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &shifted[i].pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&integer(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars.max(rhs.nvars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Laurent polynomial `Σ c_k t^k` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    terms: BTreeMap<i32, BigRational>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// `t^k`.
    pub fn power(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn add_term(&mut self, k: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(k) + c;
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn coefficient(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(k - 1, c * integer(k as i64));
        }
        out
    }

    /// Value at a nonzero rational (or at zero when no negative powers occur).
    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                num_traits::pow(t.clone(), k as usize)
            } else {
                num_traits::pow(t.recip(), (-k) as usize)
            };
            total += c * p;
        }
        total
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_f64().unwrap_or(f64::NAN) * libm::pow(t, k as f64))
            .sum()
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn binomial_square() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let s = (&x + &y).pow(2);
        assert_eq!(s.coefficient(&[1, 1]), integer(2));
        assert_eq!(s.len(), 3);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn laplacian_of_radial_quadratic() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let r2 = &(&x.pow(2) + &y.pow(2)) + &z.pow(2);
        assert_eq!(r2.laplacian(), MultiPoly::constant(3, integer(6)));
        assert!((&x.pow(2) - &y.pow(2)).laplacian().is_zero());
    }

    #[test]
    fn translate_matches_evaluation() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x.pow(3) * &y) + &MultiPoly::constant(2, rational(1, 3));
        let shift = [rational(1, 2), integer(-2)];
        let moved = p.translate(&shift);
        let at = [rational(3, 7), rational(-5, 4)];
        let direct = p.eval(&[&at[0] + &shift[0], &at[1] + &shift[1]]);
        assert_eq!(moved.eval(&at), direct);
    }

    #[test]
    fn laurent_derivative_and_eval() {
        let p = &TPoly::power(3) + &TPoly::monomial(integer(2), -1);
        assert_eq!(p.derivative(), &TPoly::monomial(integer(3), 2) + &TPoly::monomial(integer(-2), -2));
        assert_eq!(p.eval(&integer(2)), integer(9));
        assert_eq!(p.to_string(), "2*t^-1 + 1*t^3");
    }
}
