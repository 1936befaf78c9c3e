//! Differential forms with polynomial coefficients on `R^q`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// `Σ_I f_I dx_I` over increasing index sets `I` of fixed size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyKForm {
    q: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, MultiPoly>,
}

impl PolyKForm {
    pub fn zero(q: usize, degree: usize) -> Self {
        Self {
            q,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(p: MultiPoly) -> Self {
        let mut f = Self::zero(p.nvars(), 0);
        f.add_component(Vec::new(), p).expect("valid key");
        f
    }

    /// `p dx_I`. The index list need not be sorted; it is sorted with the
    /// matching sign, and a repeated index gives the zero form.
    pub fn monomial(p: MultiPoly, indices: &[usize]) -> Result<Self> {
        let q = p.nvars();
        let mut f = Self::zero(q, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            if sorted.iter().any(|&i| i >= q) {
                return Err(Error::DimensionMismatch {
                    expected: q,
                    found: sorted.last().copied().unwrap_or(0) + 1,
                });
            }
            let p = if sign < 0 { -&p } else { p };
            f.add_component(sorted, p)?;
        }
        Ok(f)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.components.iter()
    }

    pub fn component(&self, indices: &[usize]) -> MultiPoly {
        self.components.get(indices).cloned().unwrap_or_else(|| MultiPoly::zero(self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_component(&mut self, indices: Vec<usize>, p: MultiPoly) -> Result<()> {
        if indices.len() != self.degree || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("indices", "component keys must be strictly increasing of the form degree"));
        }
        if p.nvars() != self.q {
            return Err(Error::DimensionMismatch {
                expected: self.q,
                found: p.nvars(),
            });
        }
        let sum = &self.component(&indices) + &p;
        if sum.is_zero() {
            self.components.remove(&indices);
        } else {
            self.components.insert(indices, sum);
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.q != other.q || self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.add_component(k.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.q, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, p) in &self.components {
            out.components.insert(k.clone(), p.scale(c));
        }
        out
    }

    pub fn exterior_derivative(&self) -> Self {
        let mut out = Self::zero(self.q, self.degree + 1);
        if self.degree >= self.q {
            return out;
        }
        for (subset, p) in &self.components {
            for i in 0..self.q {
                if subset.contains(&i) {
                    continue;
                }
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                let before = subset.iter().filter(|&&j| j < i).count();
                let mut target = subset.clone();
                target.insert(before, i);
                let dp = if before % 2 == 1 { -&dp } else { dp };
                out.add_component(target, dp).expect("sorted key");
            }
        }
        out
    }

    /// Contraction with a constant vector field.
    pub fn interior_product(&self, x: &[BigRational]) -> Result<Self> {
        if x.len() != self.q {
            return Err(Error::DimensionMismatch {
                expected: self.q,
                found: x.len(),
            });
        }
        if self.degree == 0 {
            return Err(Error::invalid("degree", "interior product of a 0-form"));
        }
        let mut out = Self::zero(self.q, self.degree - 1);
        for (subset, p) in &self.components {
            for (pos, &i) in subset.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let mut c = x[i].clone();
                if pos % 2 == 1 {
                    c = -c;
                }
                let mut rest = subset.clone();
                rest.remove(pos);
                out.add_component(rest, p.scale(&c))?;
            }
        }
        Ok(out)
    }

    /// `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &[BigRational]) -> Result<Self> {
        let first = if self.degree < self.q {
            self.exterior_derivative().interior_product(x)?
        } else {
            Self::zero(self.q, self.degree)
        };
        if self.degree == 0 {
            return Ok(first);
        }
        first.add(&self.interior_product(x)?.exterior_derivative())
    }
}

/// Sorts `indices`, returning the permutation sign, or `None` on a repeat.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}
