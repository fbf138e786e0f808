//! Builders for the group families: cyclic, dihedral, direct and wreath
//! products, Sylow subgroups of symmetric and general linear groups,
//! unitriangular groups and Jordan-block extensions.
//!
//! Permutation constructions remember how they were assembled in a
//! [`Structure`] tree, which lets later stages reason about factors and
//! wreath blocks without enumerating the whole group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, Field};
use crate::group::{FiniteGroup, Realization};
use crate::subgroup::Subgroup;

/// Assembly tree of a permutation group. Every node acts on `degree()`
/// consecutive points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    /// Opaque permutation group with known order.
    Leaf { degree: usize, generators: Vec<Vec<u16>>, log_order: u32 },
    /// Factors act on disjoint consecutive point ranges.
    Direct { factors: Vec<Arc<Structure>> },
    /// `inner ≀ C_p`, points numbered block-major: point `b*n + i` is point
    /// `i` of block `b`. Generators: those of `inner` on block 0, then the
    /// top cycle.
    Wreath { inner: Arc<Structure>, p: u32 },
}

impl Structure {
    pub fn degree(&self) -> usize {
        match self {
            Structure::Leaf { degree, .. } => *degree,
            Structure::Direct { factors } => factors.iter().map(|f| f.degree()).sum(),
            Structure::Wreath { inner, p } => inner.degree() * *p as usize,
        }
    }

    /// `log_p` of the order, from the closed formulas.
    pub fn log_order(&self) -> u32 {
        match self {
            Structure::Leaf { log_order, .. } => *log_order,
            Structure::Direct { factors } => factors.iter().map(|f| f.log_order()).sum(),
            Structure::Wreath { inner, p } => inner.log_order() * p + 1,
        }
    }

    pub fn generators(&self) -> Vec<Vec<u16>> {
        match self {
            Structure::Leaf { generators, .. } => generators.clone(),
            Structure::Direct { factors } => {
                let degree = self.degree();
                let mut out = Vec::new();
                let mut offset = 0;
                for f in factors {
                    for g in f.generators() {
                        out.push(shift_perm(&g, offset, degree));
                    }
                    offset += f.degree();
                }
                out
            }
            Structure::Wreath { inner, p } => {
                let n = inner.degree();
                let degree = n * *p as usize;
                let mut out: Vec<Vec<u16>> = inner.generators().iter().map(|g| shift_perm(g, 0, degree)).collect();
                out.push((0..degree).map(|x| ((x + n) % degree) as u16).collect());
                out
            }
        }
    }

    /// Number of generators `generators()` returns.
    pub fn generator_count(&self) -> usize {
        match self {
            Structure::Leaf { generators, .. } => generators.len(),
            Structure::Direct { factors } => factors.iter().map(|f| f.generator_count()).sum(),
            Structure::Wreath { inner, .. } => inner.generator_count() + 1,
        }
    }
}

/// Embeds a permutation of `g.len()` points into `degree` points starting at
/// `offset`.
pub fn shift_perm(g: &[u16], offset: usize, degree: usize) -> Vec<u16> {
    let mut out: Vec<u16> = (0..degree as u16).collect();
    for (i, &x) in g.iter().enumerate() {
        out[offset + i] = (offset + x as usize) as u16;
    }
    out
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// Builds the group described by a structure tree.
pub fn realize(p: u32, structure: Structure, cap: usize) -> Result<FiniteGroup> {
    let degree = structure.degree().max(1);
    if degree > u16::MAX as usize {
        return Err(Error::InvalidParameter("permutation degree too large".into()));
    }
    let gens = structure.generators();
    FiniteGroup::from_raw(p, Realization::Perm { degree }, gens, cap, Some(Arc::new(structure)))
}

pub fn cyclic_structure(p: u32, r: u32) -> Result<Structure> {
    check_prime(p)?;
    if r == 0 {
        return Err(Error::InvalidParameter("cyclic exponent must be at least 1".into()));
    }
    let n = (p as u64).checked_pow(r).filter(|&n| n <= u16::MAX as u64);
    let n = n.ok_or_else(|| Error::InvalidParameter("cyclic group too large".into()))? as usize;
    let cycle = (0..n).map(|x| ((x + 1) % n) as u16).collect();
    Ok(Structure::Leaf { degree: n, generators: vec![cycle], log_order: r })
}

/// `C_{p^r}` as one `p^r`-cycle.
pub fn cyclic(p: u32, r: u32, cap: usize) -> Result<FiniteGroup> {
    realize(p, cyclic_structure(p, r)?, cap)
}

/// Dihedral group of order `2^k >= 8` acting on `2^{k-1}` points.
pub fn dihedral(order: usize, cap: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("dihedral order {order} must be a power of 2, at least 8")));
    }
    let n = order / 2;
    let r: Vec<u16> = (0..n).map(|x| ((x + 1) % n) as u16).collect();
    let s: Vec<u16> = (0..n).map(|x| ((n - x) % n) as u16).collect();
    let log_order = order.trailing_zeros();
    realize(2, Structure::Leaf { degree: n, generators: vec![r, s], log_order }, cap)
}

/// The trivial group on one point.
pub fn trivial(p: u32) -> Result<FiniteGroup> {
    check_prime(p)?;
    realize(p, Structure::Direct { factors: Vec::new() }, 1)
}

/// Permutation structure of `g`: its own if it has one, else the given
/// permutation generators, else the right regular action.
pub fn structure_of(g: &FiniteGroup) -> Result<Structure> {
    if let Some(s) = g.structure() {
        return Ok((**s).clone());
    }
    let generators = match g.realization() {
        Realization::Perm { .. } => g.generators().iter().map(|&x| g.raw(x).to_vec()).collect(),
        _ => {
            if g.order() > u16::MAX as usize {
                return Err(Error::InvalidParameter("group too large for its regular permutation action".into()));
            }
            g.generators().iter().map(|&s| g.elements().map(|x| g.mul(x, s) as u16).collect()).collect()
        }
    };
    let degree = match g.realization() {
        Realization::Perm { degree } => *degree,
        _ => g.order(),
    };
    Ok(Structure::Leaf { degree, generators, log_order: g.log_order() })
}

fn flatten_direct(s: Structure) -> Vec<Arc<Structure>> {
    match s {
        Structure::Direct { factors } => factors,
        other => vec![Arc::new(other)],
    }
}

/// `G1 × G2`. Permutation groups act on disjoint points, matrix groups over
/// one field become block diagonal, anything else goes through the regular
/// action. Generators of `G1` come first.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    if g1.prime() != g2.prime() {
        return Err(Error::PrimeMismatch(g1.prime(), g2.prime()));
    }
    if let (Realization::Matrix { field: f1, dim: d1 }, Realization::Matrix { field: f2, dim: d2 }) =
        (g1.realization(), g2.realization())
    {
        if f1 == f2 {
            let dim = d1 + d2;
            let mut gens = Vec::new();
            for (g, off, d) in [(g1, 0, *d1), (g2, *d1, *d2)] {
                for &s in g.generators() {
                    let m = g.raw(s);
                    let mut out = Realization::Matrix { field: f1.clone(), dim }.identity();
                    for i in 0..d {
                        for j in 0..d {
                            out[(off + i) * dim + off + j] = m[i * d + j];
                        }
                    }
                    gens.push(out);
                }
            }
            return FiniteGroup::from_raw(g1.prime(), Realization::Matrix { field: f1.clone(), dim }, gens, cap, None);
        }
    }
    let mut factors = flatten_direct(structure_of(g1)?);
    factors.extend(flatten_direct(structure_of(g2)?));
    realize(g1.prime(), Structure::Direct { factors }, cap)
}

/// `P ≀ C_p` on `p·n` points, block-major.
pub fn wreath_cp(inner: &FiniteGroup, p: u32, cap: usize) -> Result<FiniteGroup> {
    if inner.prime() != p {
        return Err(Error::PrimeMismatch(inner.prime(), p));
    }
    let s = Structure::Wreath { inner: Arc::new(structure_of(inner)?), p };
    realize(p, s, cap)
}

/// `C_{p^r} ≀ C_p ≀ ... ≀ C_p` with `levels` wreath steps.
pub fn iterated_wreath_structure(p: u32, levels: u32, r: u32) -> Result<Structure> {
    let mut s = cyclic_structure(p, r)?;
    for _ in 0..levels {
        s = Structure::Wreath { inner: Arc::new(s), p };
    }
    Ok(s)
}

/// `P_n`: the Sylow p-subgroup of `S_{p^n}`, i.e. `n` nested copies of
/// `C_p`.
pub fn iwr(p: u32, n: u32, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("iterated wreath needs at least one level".into()));
    }
    realize(p, iterated_wreath_structure(p, n - 1, 1)?, cap)
}

/// Base-p digits of `n`, least significant first.
pub fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

pub fn sylow_symmetric_structure(n: u64, p: u32) -> Result<Structure> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut factors = Vec::new();
    for (r, &a) in digits(n, p as u64).iter().enumerate() {
        if r == 0 {
            continue;
        }
        let block = iterated_wreath_structure(p, r as u32 - 1, 1)?;
        for _ in 0..a {
            factors.push(Arc::new(block.clone()));
        }
    }
    Ok(Structure::Direct { factors })
}

/// Sylow p-subgroup of `S_n`: one iterated wreath product per base-p digit.
/// Fixed points are dropped, so the degree is `n` minus the last digit.
pub fn sylow_symmetric(n: u64, p: u32, cap: usize) -> Result<FiniteGroup> {
    realize(p, sylow_symmetric_structure(n, p)?, cap)
}

/// `ν_p(n!)` by Legendre's formula.
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += n / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parameters `(d, r, m)` of the coprime Sylow subgroup of `GL_n(F_q)`:
/// `d` the order of `q` mod `p`, `r = ν_p(q^d − 1)`, `m = ⌊n/d⌋`.
pub fn sylow_gl_parameters(n: u64, q: u64, p: u32) -> Result<(u64, u32, u64)> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::OddPrimeRequired);
    }
    if prime_power(q).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let p64 = p as u64;
    if gcd(p64, q) != 1 {
        return Err(Error::NotCoprime);
    }
    let mut d = 1;
    let mut x = q % p64;
    while x != 1 {
        x = x * q % p64;
        d += 1;
    }
    // q^d - 1 mod a high power of p gives the valuation
    let modulus = p64.pow(12);
    let mut y = 1u128;
    for _ in 0..d {
        y = y * q as u128 % modulus as u128;
    }
    let qd1 = ((y + modulus as u128 - 1) % modulus as u128) as u64;
    let r = if qd1 == 0 { 12 } else { valuation(qd1, p64) };
    Ok((d, r, n / d))
}

pub fn sylow_gl_structure(n: u64, q: u64, p: u32) -> Result<Structure> {
    let (_, r, m) = sylow_gl_parameters(n, q, p)?;
    let mut factors = Vec::new();
    for (k, &a) in digits(m, p as u64).iter().enumerate() {
        let block = iterated_wreath_structure(p, k as u32, r)?;
        for _ in 0..a {
            factors.push(Arc::new(block.clone()));
        }
    }
    Ok(Structure::Direct { factors })
}

/// Sylow p-subgroup of `GL_n(F_q)` for odd `p` not dividing `q`, assembled
/// from cyclic and wreath factors.
pub fn sylow_gl_coprime(n: u64, q: u64, p: u32, cap: usize) -> Result<FiniteGroup> {
    realize(p, sylow_gl_structure(n, q, p)?, cap)
}

/// `ν_p(|GL_n(F_q)|) = ν_p(∏_{i<n} (q^n − q^i))`.
pub fn gl_order_valuation(n: u32, q: u64, p: u64) -> u32 {
    let mut v = 0;
    for i in 0..n {
        let qi = q.pow(i);
        let term = q.pow(n) - qi;
        v += valuation(term, p);
    }
    v
}

/// Upper unitriangular `n × n` matrices over F_q.
pub fn unitriangular(n: usize, q: u32, cap: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidParameter("unitriangular dimension must be at least 2".into()));
    }
    let field = Arc::new(Field::new(q)?);
    let p = field.characteristic();
    let real = Realization::Matrix { field: field.clone(), dim: n };
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for c in field.basis() {
            let mut m = real.identity();
            m[i * n + i + 1] = c;
            gens.push(m);
        }
    }
    FiniteGroup::from_raw(p, real, gens, cap, None)
}

/// The abelian normal subgroups `N_{i,j}` (1-based, `i < j`) of a group
/// built by [`unitriangular`]: matrices supported in rows `<= i` and
/// columns `>= j`. Returned with their `(i, j)` labels.
pub fn nij_subgroups(g: &FiniteGroup) -> Result<Vec<((usize, usize), Subgroup)>> {
    let n = match g.realization() {
        Realization::Matrix { dim, .. } => *dim,
        _ => return Err(Error::WrongRealization("N_{i,j} needs a matrix group".into())),
    };
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            let members = g.elements().filter(|&x| {
                let m = g.raw(x);
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        let v = m[a * n + b];
                        if a == b {
                            v == 1
                        } else if a + 1 > i || b + 1 < j {
                            v == 0
                        } else {
                            true
                        }
                    })
                })
            });
            let s = g.checked_subgroup(members).ok_or_else(|| {
                Error::InvalidParameter("group is not a full unitriangular group".into())
            })?;
            out.push(((i, j), s));
        }
    }
    Ok(out)
}

/// `C_p^n ⋊ C_p`, the top generator acting by one unipotent `n × n` Jordan
/// block. Realized as affine `(n+1) × (n+1)` matrices acting on rows.
pub fn jordan_extension(p: u32, n: usize, cap: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    if n < 2 || n > p as usize {
        return Err(Error::InvalidParameter(format!("Jordan block size {n} must satisfy 2 <= n <= p = {p}")));
    }
    let field = Arc::new(Field::new(p)?);
    let dim = n + 1;
    let real = Realization::Matrix { field, dim };
    let mut gens = Vec::new();
    for i in 0..n {
        let mut m = real.identity();
        m[n * dim + i] = 1;
        gens.push(m);
    }
    let mut j = real.identity();
    for i in 0..n - 1 {
        j[i * dim + i + 1] = 1;
    }
    gens.push(j);
    FiniteGroup::from_raw(p, real, gens, cap, None)
}

/// Normal subgroup generated by the translations of a group built by
/// [`jordan_extension`]: the `C_p^n`.
pub fn jordan_base(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    g.closure(&gens[..gens.len() - 1])
}

/// Base subgroup `P^p` of a wreath product built from a [`Structure::Wreath`].
pub fn wreath_base(g: &FiniteGroup) -> Result<Subgroup> {
    match g.structure().map(|s| &**s) {
        Some(Structure::Wreath { .. }) => {
            let gens = g.generators();
            let inner = &gens[..gens.len() - 1];
            Ok(g.normal_closure_under(inner, gens))
        }
        _ => Err(Error::NotWreathGroup),
    }
}

/// Inner group `P` of a wreath product, enumerated on its own points.
pub fn wreath_inner(g: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    match g.structure().map(|s| &**s) {
        Some(Structure::Wreath { inner, p }) => realize(*p, (**inner).clone(), cap),
        _ => Err(Error::NotWreathGroup),
    }
}
