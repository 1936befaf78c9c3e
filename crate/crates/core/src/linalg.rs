//! Dense matrices and the cyclic Jacobi eigensolver.
//!
//! Spectral domains are block diagonal in a suitable basis (Fourier modes
//! decouple, disconnected complexes decouple), so [`BlockEigen`] splits a
//! symmetric matrix along the connected components of its sparsity pattern
//! and runs Jacobi on each block.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use libm::sqrt;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm, relative to the full norm, at which Jacobi
/// sweeps stop.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 60;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `Aᵀ x`.
    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.rows);
        let mut y = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (yj, &a) in y.iter_mut().zip(self.row(i)) {
                *yj += a * xi;
            }
        }
        y
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Product that skips zero entries of `self`, which keeps structured
    /// (permutation-like, block) operators cheap.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|a| a * a).sum())
    }

    /// Largest `|A - Aᵀ|` entry.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Copy of the sub-block `rows × cols` at the given offsets.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row0 + i, col0 + j)] = block[(i, j)];
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Eigenpairs of a symmetric matrix; `vectors` holds them as columns, with
/// eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Cyclic Jacobi rotations with a deterministic row-by-row sweep order.
pub fn jacobi_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    let target = JACOBI_THRESHOLD * scale;
    let off = |m: &Matrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        sqrt(s)
    };
    let mut sweeps = 0;
    let mut current = off(&m);
    while current > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NotConverged {
                sweeps,
                off: current,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s, t);
            }
        }
        sweeps += 1;
        current = off(&m);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SymmetricEigen { values, vectors })
}

fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64, t: f64) {
    let n = m.rows();
    let apq = m[(p, q)];
    m[(p, p)] -= t * apq;
    m[(q, q)] += t * apq;
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp;
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Eigenpairs of one diagonal block, on the global indices it occupies.
#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Eigendecomposition of a symmetric matrix computed block by block.
#[derive(Debug, Clone)]
pub struct BlockEigen {
    dim: usize,
    blocks: Vec<EigenBlock>,
}

/// One eigenpair with a sparse eigenvector.
#[derive(Debug, Clone, Copy)]
pub struct EigenPair<'a> {
    pub value: f64,
    block: &'a EigenBlock,
    column: usize,
}

impl EigenPair<'_> {
    pub fn indices(&self) -> &[usize] {
        &self.block.indices
    }

    pub fn component(&self, local: usize) -> f64 {
        self.block.vectors[(local, self.column)]
    }

    /// The eigenvector as a dense vector of the full dimension.
    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (local, &g) in self.block.indices.iter().enumerate() {
            out[g] = self.component(local);
        }
        out
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.block
            .indices
            .iter()
            .enumerate()
            .map(|(local, &g)| self.component(local) * x[g])
            .sum()
    }
}

impl BlockEigen {
    pub fn decompose(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if a[(i, j)] != 0.0 || a[(j, i)] != 0.0 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        let mut blocks = Vec::with_capacity(groups.len());
        for indices in groups {
            let sub = Matrix::from_fn(indices.len(), indices.len(), |i, j| a[(indices[i], indices[j])]);
            let eig = jacobi_eigen(&sub)?;
            blocks.push(EigenBlock {
                indices,
                values: eig.values,
                vectors: eig.vectors,
            });
        }
        Ok(Self { dim: n, blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[EigenBlock] {
        &self.blocks
    }

    pub fn pairs(&self) -> impl Iterator<Item = EigenPair<'_>> + '_ {
        self.blocks.iter().flat_map(|block| {
            block.values.iter().enumerate().map(move |(column, &value)| EigenPair {
                value,
                block,
                column,
            })
        })
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// `f(A) x = Σ f(λ_j) ⟨v_j, x⟩ v_j`.
    pub fn apply(&self, f: impl Fn(f64) -> f64, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for block in &self.blocks {
            let local: Vec<f64> = block.indices.iter().map(|&g| x[g]).collect();
            let k = block.indices.len();
            let mut acc = vec![0.0; k];
            for (col, &lambda) in block.values.iter().enumerate() {
                let coefficient: f64 = (0..k).map(|i| block.vectors[(i, col)] * local[i]).sum();
                if coefficient == 0.0 {
                    continue;
                }
                let weight = f(lambda) * coefficient;
                for (i, a) in acc.iter_mut().enumerate() {
                    *a += weight * block.vectors[(i, col)];
                }
            }
            for (i, &g) in block.indices.iter().enumerate() {
                out[g] = acc[i];
            }
        }
        out
    }

    /// Dense `f(A)`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for block in &self.blocks {
            let k = block.indices.len();
            let weights: Vec<f64> = block.values.iter().map(|&l| f(l)).collect();
            for i in 0..k {
                for j in 0..k {
                    let s: f64 = (0..k)
                        .map(|c| block.vectors[(i, c)] * weights[c] * block.vectors[(j, c)])
                        .sum();
                    out[(block.indices[i], block.indices[j])] = s;
                }
            }
        }
        out
    }

    /// `f(A)·M` without forming `f(A)` densely.
    pub fn left_multiply(&self, f: impl Fn(f64) -> f64, m: &Matrix) -> Matrix {
        assert_eq!(m.rows(), self.dim);
        let mut out = Matrix::zeros(self.dim, m.cols());
        for block in &self.blocks {
            let k = block.indices.len();
            let weights: Vec<f64> = block.values.iter().map(|&l| f(l)).collect();
            let fa = Matrix::from_fn(k, k, |i, j| {
                (0..k)
                    .map(|c| block.vectors[(i, c)] * weights[c] * block.vectors[(j, c)])
                    .sum()
            });
            for (i, &gi) in block.indices.iter().enumerate() {
                for (j, &gj) in block.indices.iter().enumerate() {
                    let a = fa[(i, j)];
                    if a == 0.0 {
                        continue;
                    }
                    for c in 0..m.cols() {
                        out[(gi, c)] += a * m[(gj, c)];
                    }
                }
            }
        }
        out
    }

    /// Largest `‖A v - λ v‖` over all eigenpairs. Blocks are closed under
    /// the sparsity pattern of `a`, so each residual is computed on its block.
    pub fn max_residual(&self, a: &Matrix) -> f64 {
        let mut worst: f64 = 0.0;
        for block in &self.blocks {
            let k = block.indices.len();
            for (col, &lambda) in block.values.iter().enumerate() {
                let mut sq = 0.0;
                for (i, &gi) in block.indices.iter().enumerate() {
                    let av: f64 = (0..k).map(|j| a[(gi, block.indices[j])] * block.vectors[(j, col)]).sum();
                    let r = av - lambda * block.vectors[(i, col)];
                    sq += r * r;
                }
                worst = worst.max(sqrt(sq));
            }
        }
        worst
    }
}
