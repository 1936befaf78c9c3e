//! Finite abstract simplicial complexes and their signed incidence matrices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A downward-closed set of simplices. Vertices of each simplex are kept
/// sorted, which fixes the orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn new(simplices: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            let dim = s.len() - 1;
            if by_dim.len() <= dim {
                by_dim.resize(dim + 1, Vec::new());
            }
            by_dim[dim].push(s);
        }
        if by_dim.is_empty() {
            return Err(Error::invalid("simplices", "complex is empty"));
        }
        for level in &mut by_dim {
            level.sort();
            level.dedup();
        }
        for dim in 1..by_dim.len() {
            for s in &by_dim[dim] {
                for omit in 0..s.len() {
                    let face = face(s, omit);
                    if by_dim[dim - 1].binary_search(&face).is_err() {
                        return Err(Error::NotDownwardClosed {
                            simplex: s.clone(),
                            missing: face,
                        });
                    }
                }
            }
        }
        Ok(Self { by_dim })
    }

    /// Boundary of the triangle: three vertices, three edges.
    pub fn triangle_boundary() -> Self {
        Self::new([vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]).expect("closed")
    }

    /// The filled triangle.
    pub fn full_triangle() -> Self {
        Self::new([
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![0, 1, 2],
        ])
        .expect("closed")
    }

    /// Surface of the octahedron with poles 0, 5 and equator 1, 2, 3, 4.
    pub fn octahedron() -> Self {
        let equator = [1usize, 2, 3, 4];
        let mut facets = Vec::new();
        for i in 0..4 {
            let (a, b) = (equator[i], equator[(i + 1) % 4]);
            facets.push(vec![0, a, b]);
            facets.push(vec![5, a, b]);
        }
        Self::closure(facets)
    }

    /// Smallest complex containing every given simplex.
    pub fn closure(facets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut all = Vec::new();
        for f in facets {
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                all.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
            }
        }
        Self::new(all).expect("closure is downward closed")
    }

    pub fn dimension(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.by_dim.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coboundary `d_k : C^k → C^{k+1}` as an integer matrix,
    /// `(d f)(σ) = Σ_i (-1)^i f(σ minus its i-th vertex)`.
    pub fn coboundary(&self, k: usize) -> Vec<Vec<i64>> {
        let rows = self.simplices(k + 1);
        let cols = self.simplices(k);
        let index: BTreeMap<&[usize], usize> = cols.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (r, s) in rows.iter().enumerate() {
            for omit in 0..s.len() {
                let f = face(s, omit);
                let c = index[f.as_slice()];
                m[r][c] = if omit % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }
}

fn face(s: &[usize], omit: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v).collect()
}

/// Integer matrix product, used to confirm `d_{k+1} d_k = 0` exactly.
pub fn integer_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|l| row[l] * b[l][j]).sum()).collect())
        .collect()
}
