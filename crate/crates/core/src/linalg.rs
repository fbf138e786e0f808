//! Dense matrices over a prime field F_p, acting on row vectors.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Row-major entries, reduced mod p.
    pub fn from_rows(p: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<FpMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("expected {} entries, got {}", rows * cols, entries.len())));
        }
        let data = entries.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let p = self.p as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, x) in other.row(k).iter().enumerate() {
                    acc[j] += a * *x as u64;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = (v % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `A − I`.
    pub fn minus_identity(&self) -> FpMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i);
            m.data[i * self.cols + i] = (v + self.p - 1) % self.p;
        }
        m
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, x) in self.row(k).iter().enumerate() {
                acc[j] += a as u64 * *x as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in 0..self.cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.data[r * self.cols + j] = v as u32;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = (self.get(i, j) as u64 + (p - f) * self.get(r, j) as u64) % p;
                    self.data[i * self.cols + j] = v as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of `{v : vA = 0}`, in reduced echelon form.
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        // row reduce [A | I]; rows whose A-part vanishes span the kernel
        let n = self.rows;
        let w = self.cols + n;
        let mut aug = FpMatrix::zero(self.p, n, w);
        for i in 0..n {
            for j in 0..self.cols {
                aug.data[i * w + j] = self.get(i, j);
            }
            aug.data[i * w + self.cols + i] = 1 % self.p;
        }
        let pivots = aug.row_reduce();
        let rank_a = pivots.iter().filter(|&&c| c < self.cols).count();
        let kernel: Vec<Vec<u32>> = (rank_a..n).map(|i| aug.row(i)[self.cols..].to_vec()).collect();
        echelon_basis(self.p, n, &kernel)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMatrix::zero(self.p, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&aug.row(i)[n..]);
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &FpMatrix) -> FpMatrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut out = FpMatrix::zero(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * c + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * c + self.cols + j] = other.get(i, j);
            }
        }
        out
    }
}

/// Reduced echelon basis of the span of `vectors` in `F_p^dim`.
pub fn echelon_basis(p: u32, dim: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = FpMatrix::zero(p, vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        m.data[i * dim..(i + 1) * dim].copy_from_slice(v);
    }
    let r = m.row_reduce().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Dimension of the span of `vectors`.
pub fn span_dim(p: u32, dim: usize, vectors: &[Vec<u32>]) -> usize {
    echelon_basis(p, dim, vectors).len()
}
