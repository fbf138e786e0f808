//! Orders of constructed groups against arithmetic done independently of
//! the construction code.

use pgrp::construct::{realize, sylow_gl_structure, sylow_symmetric_structure, unitriangular};
use pgrp::group::DEFAULT_ELEMENT_CAP as CAP;

const ENUMERATE_UP_TO: u128 = 600_000;

fn nu(mut x: u128, p: u128) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// `ν_p(n!)` as a sum of valuations of `1..=n`.
fn nu_factorial(n: u64, p: u64) -> u32 {
    (1..=n as u128).map(|k| nu(k, p as u128)).sum()
}

/// `ν_p(|GL_n(F_q)|)` from the product itself.
fn nu_gl(n: u32, q: u64, p: u64) -> u32 {
    let q = q as u128;
    (0..n).map(|i| nu(q.pow(n) - q.pow(i), p as u128)).sum()
}

/// Orders of Sylow subgroups of `S_n`, `n <= 30`, p = 2, 3, 5.
pub fn sylow_symmetric_orders() {
    for p in [2u32, 3, 5] {
        for n in 1..=30u64 {
            let s = sylow_symmetric_structure(n, p).unwrap();
            let expected = nu_factorial(n, p as u64);
            assert_eq!(s.log_order(), expected, "S_{n}, p = {p}");
            if (p as u128).pow(expected) <= ENUMERATE_UP_TO {
                let g = realize(p, s, CAP).unwrap();
                assert_eq!(g.log_order(), expected, "S_{n}, p = {p}");
            }
        }
    }
}

/// Orders of Sylow 3-subgroups of `GL_n(q)`, `n <= 4`, q = 2, 4, 5.
pub fn sylow_gl_orders() {
    for q in [2u64, 4, 5] {
        for n in 1..=4u64 {
            let s = sylow_gl_structure(n, q, 3).unwrap();
            let expected = nu_gl(n as u32, q, 3);
            assert_eq!(s.log_order(), expected, "GL_{n}({q})");
            let g = realize(3, s, CAP).unwrap();
            assert_eq!(g.log_order(), expected, "GL_{n}({q})");
        }
    }
}

pub fn unitriangular_orders() {
    for q in [2u32, 3, 4] {
        for n in 2..=4usize {
            let g = unitriangular(n, q, CAP).unwrap();
            assert_eq!(g.order() as u64, (q as u64).pow((n * (n - 1) / 2) as u32), "UT({n},{q})");
        }
    }
}

