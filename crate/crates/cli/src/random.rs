//! Seeded random inputs for the randomized suites.

use deformd_core::huygens::PolyKForm;
use deformd_core::poly::MultiPoly;
use deformd_core::specops::{Cochain, SpectralDomain};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=7);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Up to `terms` monomials of total degree at most `max_degree`.
pub fn polynomial(rng: &mut impl Rng, q: usize, max_degree: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(q);
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; q];
        for _ in 0..total {
            e[rng.gen_range(0..q)] += 1;
        }
        p.add_term(e, small_rational(rng));
    }
    p
}

/// A `(q−1)`-form with random polynomial coefficients.
pub fn form(rng: &mut impl Rng, q: usize, max_degree: u32) -> PolyKForm {
    let mut f = PolyKForm::zero(q, q - 1);
    for skip in 0..q {
        let idx: Vec<usize> = (0..q).filter(|&i| i != skip).collect();
        f.add_component(idx, polynomial(rng, q, max_degree, 3)).expect("sorted key");
    }
    f
}

/// Uniform coefficients in `[−1, 1]`, scaled to unit norm.
pub fn unit_cochain(rng: &mut impl Rng, domain: &SpectralDomain, degree: usize) -> Cochain {
    let n = domain.grading()[degree];
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    domain.cochain(degree, v).expect("matching length")
}
