//! Finite fields F_q with q = p^e, realized through addition and
//! multiplication tables.
//!
//! An element is the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` encoding
//! the polynomial `c_0 + c_1 x + ...` modulo the defining polynomial.

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// Conway polynomials (coefficients low to high, monic) for the non-prime
/// fields of order at most 64.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`; `None` unless `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    degree: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Field {
    /// F_q with the built-in defining polynomial.
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q as u64).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        let p = p as u32;
        if e == 1 {
            return Field::with_modulus(p, &[0, 1]);
        }
        let modulus = BUILTIN_MODULI
            .iter()
            .find(|(bp, be, _)| *bp == p && *be == e)
            .map(|(_, _, m)| *m)
            .ok_or_else(|| Error::Field(format!("no built-in polynomial for q = {q}; supply one")))?;
        Field::with_modulus(p, modulus)
    }

    /// F_{p^e} defined by a monic polynomial of degree e (coefficients low
    /// to high). Irreducibility is checked.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Field("defining polynomial must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Field("polynomial coefficients must be reduced mod p".into()));
        }
        let degree = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(degree).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let q = q.ok_or_else(|| Error::Field(format!("field order exceeds {MAX_FIELD_ORDER}")))? as u32;
        let qs = q as usize;
        let digits = |a: u32| -> Vec<u32> {
            let mut v = vec![0; degree as usize];
            let mut a = a;
            for d in v.iter_mut() {
                *d = a % p;
                a /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as u16;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * degree as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (degree as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    let shift = k - degree as usize;
                    for (i, m) in modulus.iter().enumerate() {
                        prod[shift + i] = (prod[shift + i] + (p - c) * m) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..degree as usize]) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16;
        }
        for a in 1..qs {
            match (1..qs).find(|&b| mul[a * qs + b] == 1) {
                Some(b) => inv[a] = b as u16,
                None => return Err(Error::Field("defining polynomial is reducible".into())),
            }
        }
        Ok(Field { p, degree, q, modulus: modulus.to_vec(), add, mul, neg, inv })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Powers `1, x, ..., x^{e-1}` of the generator, i.e. an F_p-basis.
    pub fn basis(&self) -> Vec<u16> {
        (0..self.degree).map(|i| self.p.pow(i) as u16).collect()
    }

    /// Matrix over F_p (row convention) of multiplication by `a` on the
    /// basis `1, x, ..., x^{e-1}`.
    pub fn multiplication_matrix(&self, a: u16) -> Vec<u32> {
        let e = self.degree as usize;
        let mut m = vec![0u32; e * e];
        for (i, b) in self.basis().into_iter().enumerate() {
            let mut prod = self.mul(b, a) as u32;
            for j in 0..e {
                m[i * e + j] = prod % self.p;
                prod /= self.p;
            }
        }
        m
    }

    /// Determinant of a square row-major matrix, by elimination.
    pub fn determinant(&self, m: &[u16], n: usize) -> u16 {
        let mut a = m.to_vec();
        let mut det = 1u16;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = self.neg(det);
            }
            let pv = a[col * n + col];
            det = self.mul(det, pv);
            let pinv = self.inv(pv).unwrap();
            for r in col + 1..n {
                let f = self.mul(a[r * n + col], pinv);
                if f == 0 {
                    continue;
                }
                let nf = self.neg(f);
                for j in col..n {
                    let t = self.mul(nf, a[col * n + j]);
                    a[r * n + j] = self.add(a[r * n + j], t);
                }
            }
        }
        det
    }
}
