//! Naive reference computations over F_p shared by the integration tests.

#![allow(dead_code)]

pub mod late;
pub mod mfs;
pub mod orders;
pub mod perp;
pub mod powerful;

use std::collections::HashMap;

use pgrp::rep::Representation;
use pgrp::FiniteGroup;

pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat, p: i64) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] != 0 {
                for j in 0..m {
                    out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
                }
            }
        }
    }
    out
}

pub fn minus_identity(a: &Mat, p: i64) -> Mat {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = (row[i] - 1).rem_euclid(p);
    }
    out
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// The matrix of `x`, multiplied out along its word in the generators.
pub fn matrix(g: &FiniteGroup, v: &Representation, x: u32) -> Mat {
    let p = v.prime();
    let gens: Vec<Mat> = v
        .generator_actions()
        .iter()
        .map(|a| {
            let d = a.to_dense(p);
            (0..d.rows()).map(|i| d.row(i).iter().map(|&e| e as i64).collect()).collect()
        })
        .collect();
    g.word(x).iter().fold(identity(v.dim()), |acc, &s| mul(&acc, &gens[s], p as i64))
}

pub struct Oracle {
    pub p: i64,
    pub mats: HashMap<u32, Mat>,
}

impl Oracle {
    pub fn new(g: &FiniteGroup, v: &Representation) -> Oracle {
        Oracle::on(g, v, g.elements())
    }

    /// Matrices for the listed elements only.
    pub fn on(g: &FiniteGroup, v: &Representation, xs: impl IntoIterator<Item = u32>) -> Oracle {
        Oracle { p: v.prime() as i64, mats: xs.into_iter().map(|x| (x, matrix(g, v, x))).collect() }
    }

    pub fn product_vanishes(&self, a: u32, b: u32) -> bool {
        let (a, b) = (&self.mats[&a], &self.mats[&b]);
        is_zero(&mul(&minus_identity(a, self.p), &minus_identity(b, self.p), self.p))
    }

    pub fn perp(&self, g: &FiniteGroup, a: u32, b: u32) -> bool {
        g.mul(a, b) == g.mul(b, a) && self.product_vanishes(a, b)
    }

    pub fn quadratic(&self, a: u32) -> bool {
        a != 0 && self.product_vanishes(a, a)
    }

    /// Dimension of the common fixed space of `xs`, by Gaussian elimination
    /// on the stacked columns of `ρ(x) − 1`.
    pub fn fixed_dim(&self, xs: &[u32]) -> usize {
        let n = self.mats.values().next().expect("some matrix").len();
        if xs.is_empty() {
            return n;
        }
        // v(A − 1) = 0 for all A: the left kernel of [A_1 − 1 | A_2 − 1 | ...]
        let mut stacked = vec![Vec::new(); n];
        for &x in xs {
            let m = minus_identity(&self.mats[&x], self.p);
            for i in 0..n {
                stacked[i].extend_from_slice(&m[i]);
            }
        }
        n - rank(stacked, self.p)
    }
}

pub fn rank(mut m: Mat, p: i64) -> usize {
    let inv = |a: i64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// `log_p` of an order.
pub fn log_p(n: usize, p: u32) -> i64 {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p as usize;
        k += 1;
    }
    k
}
