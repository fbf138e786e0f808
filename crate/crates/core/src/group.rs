//! Finite p-groups given by generators and enumerated explicitly.
//!
//! Elements are stored in a flat arena of `u16` words (permutation images,
//! matrix entries, or a table index) and addressed by `u32` indices. Index 0
//! is always the identity. Enumeration is breadth-first from the identity;
//! within each layer elements are ordered lexicographically by their
//! realization, so indices and words are reproducible.

use std::hash::BuildHasher;
use std::sync::{Arc, OnceLock};

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::construct::Structure;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::subgroup::Subgroup;

/// Groups up to this order get a full Cayley table.
pub const TABLE_LIMIT: usize = 4096;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// How the elements of a group are realized.
#[derive(Debug, Clone)]
pub enum Realization {
    /// Permutations of `0..degree`, composed left to right: `x^(gh) = (x^g)^h`.
    Perm { degree: usize },
    /// Invertible `dim x dim` matrices over a finite field acting on row vectors.
    Matrix { field: Arc<Field>, dim: usize },
    /// Indices into an abstract multiplication table.
    Table { table: Arc<Vec<u32>>, order: usize, identity: u32 },
}

/// A single group element in one of the supported realizations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Vec<usize>),
    Matrix(Vec<u32>),
    Table(usize),
}

impl Realization {
    pub fn stride(&self) -> usize {
        match self {
            Realization::Perm { degree } => *degree,
            Realization::Matrix { dim, .. } => dim * dim,
            Realization::Table { .. } => 1,
        }
    }

    pub fn identity(&self) -> Vec<u16> {
        match self {
            Realization::Perm { degree } => (0..*degree as u16).collect(),
            Realization::Matrix { dim, .. } => {
                let mut m = vec![0u16; dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = 1;
                }
                m
            }
            Realization::Table { identity, .. } => vec![*identity as u16],
        }
    }

    /// Writes `a * b` into `out`.
    pub fn multiply(&self, a: &[u16], b: &[u16], out: &mut [u16]) {
        match self {
            Realization::Perm { .. } => {
                for (o, &x) in out.iter_mut().zip(a) {
                    *o = b[x as usize];
                }
            }
            Realization::Matrix { field, dim } => {
                let d = *dim;
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = 0u16;
                        for k in 0..d {
                            let x = a[i * d + k];
                            if x != 0 {
                                acc = field.add(acc, field.mul(x, b[k * d + j]));
                            }
                        }
                        out[i * d + j] = acc;
                    }
                }
            }
            Realization::Table { table, order, .. } => {
                out[0] = table[a[0] as usize * order + b[0] as usize] as u16;
            }
        }
    }

    /// Checks that raw data is a valid element of this realization.
    pub fn validate(&self, e: &[u16]) -> Result<()> {
        if e.len() != self.stride() {
            return Err(Error::MixedRealization);
        }
        match self {
            Realization::Perm { degree } => {
                let mut seen = vec![false; *degree];
                for &x in e {
                    let x = x as usize;
                    if x >= *degree || seen[x] {
                        return Err(Error::InvalidParameter("permutation images are not a bijection".into()));
                    }
                    seen[x] = true;
                }
            }
            Realization::Matrix { field, dim } => {
                if e.iter().any(|&x| x as u32 >= field.order()) {
                    return Err(Error::InvalidParameter("matrix entry outside the field".into()));
                }
                if field.determinant(e, *dim) == 0 {
                    return Err(Error::InvalidParameter("matrix is singular".into()));
                }
            }
            Realization::Table { order, .. } => {
                if e[0] as usize >= *order {
                    return Err(Error::InvalidParameter("table index out of range".into()));
                }
            }
        }
        Ok(())
    }

    pub fn encode(&self, e: &GroupElement) -> Result<Vec<u16>> {
        let data: Vec<u16> = match (self, e) {
            (Realization::Perm { .. }, GroupElement::Perm(v)) => {
                v.iter().map(|&x| u16::try_from(x).map_err(|_| Error::MixedRealization)).collect::<Result<_>>()?
            }
            (Realization::Matrix { .. }, GroupElement::Matrix(v)) => {
                v.iter().map(|&x| u16::try_from(x).map_err(|_| Error::MixedRealization)).collect::<Result<_>>()?
            }
            (Realization::Table { .. }, GroupElement::Table(i)) => {
                vec![u16::try_from(*i).map_err(|_| Error::MixedRealization)?]
            }
            _ => return Err(Error::MixedRealization),
        };
        self.validate(&data)?;
        Ok(data)
    }

    pub fn decode(&self, e: &[u16]) -> GroupElement {
        match self {
            Realization::Perm { .. } => GroupElement::Perm(e.iter().map(|&x| x as usize).collect()),
            Realization::Matrix { .. } => GroupElement::Matrix(e.iter().map(|&x| x as u32).collect()),
            Realization::Table { .. } => GroupElement::Table(e[0] as usize),
        }
    }

    /// Inverse computed inside the realization (no lookup table needed).
    pub fn invert(&self, e: &[u16]) -> Vec<u16> {
        match self {
            Realization::Perm { .. } => {
                let mut out = vec![0u16; e.len()];
                for (i, &x) in e.iter().enumerate() {
                    out[x as usize] = i as u16;
                }
                out
            }
            _ => {
                // e has finite order: e^{-1} is the last power before the identity.
                let id = self.identity();
                let mut prev = id.clone();
                let mut cur = e.to_vec();
                let mut tmp = vec![0u16; e.len()];
                while cur != id {
                    prev.copy_from_slice(&cur);
                    self.multiply(&cur, e, &mut tmp);
                    std::mem::swap(&mut cur, &mut tmp);
                }
                prev
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Realization::Perm { .. } => "perm",
            Realization::Matrix { .. } => "mat",
            Realization::Table { .. } => "table",
        }
    }
}

#[derive(Default)]
pub(crate) struct Caches {
    pub center: OnceLock<Subgroup>,
    pub classes: OnceLock<Arc<Vec<Vec<u32>>>>,
    pub normals: OnceLock<Arc<Vec<Subgroup>>>,
    pub lower: OnceLock<Arc<Vec<Subgroup>>>,
    pub upper: OnceLock<Arc<Vec<Subgroup>>>,
}

/// An explicitly enumerated finite p-group.
pub struct FiniteGroup {
    p: u32,
    realization: Realization,
    stride: usize,
    data: Vec<u16>,
    lookup: HashTable<u32>,
    hasher: DefaultHashBuilder,
    gens: Vec<u32>,
    parent: Vec<(u32, u32)>,
    gen_mul: Vec<Vec<u32>>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    order_exp: Vec<u8>,
    structure: Option<Arc<Structure>>,
    pub(crate) caches: Caches,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("p", &self.p)
            .field("order", &self.order())
            .field("realization", &self.realization.kind())
            .field("generators", &self.gens.len())
            .finish()
    }
}

const NO_GEN: u32 = u32::MAX;

impl FiniteGroup {
    /// Enumerates the group generated by `generators`.
    pub fn generate(p: u32, realization: Realization, generators: &[GroupElement], cap: usize) -> Result<FiniteGroup> {
        let raw = generators.iter().map(|g| realization.encode(g)).collect::<Result<Vec<_>>>()?;
        Self::from_raw(p, realization, raw, cap, None)
    }

    pub(crate) fn from_raw(
        p: u32,
        realization: Realization,
        generators: Vec<Vec<u16>>,
        cap: usize,
        structure: Option<Arc<Structure>>,
    ) -> Result<FiniteGroup> {
        if !crate::field::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if cap == 0 {
            return Err(Error::InvalidParameter("cap must be positive".into()));
        }
        let stride = realization.stride();
        for g in &generators {
            realization.validate(g)?;
        }
        let hasher = DefaultHashBuilder::default();
        let mut lookup: HashTable<u32> = HashTable::new();
        let mut data: Vec<u16> = realization.identity();
        let mut parent = vec![(0u32, NO_GEN)];
        {
            let h = hasher.hash_one(&data[..]);
            lookup.insert_unique(h, 0, |_| unreachable!());
        }
        let mut layer_start = 0usize;
        let mut layer_end = 1usize;
        let mut buf = vec![0u16; stride];
        while layer_start < layer_end {
            // next layer collected separately, then sorted
            let mut next: Vec<u16> = Vec::new();
            let mut next_parent: Vec<(u32, u32)> = Vec::new();
            let mut next_lookup: HashTable<u32> = HashTable::new();
            for x in layer_start..layer_end {
                for (s, g) in generators.iter().enumerate() {
                    realization.multiply(&data[x * stride..(x + 1) * stride], g, &mut buf);
                    let h = hasher.hash_one(&buf[..]);
                    if lookup.find(h, |&i| &data[i as usize * stride..(i as usize + 1) * stride] == &buf[..]).is_some() {
                        continue;
                    }
                    let found = next_lookup.find(h, |&i| &next[i as usize * stride..(i as usize + 1) * stride] == &buf[..]);
                    if found.is_some() {
                        continue;
                    }
                    let id = next_parent.len() as u32;
                    next.extend_from_slice(&buf);
                    next_parent.push((x as u32, s as u32));
                    next_lookup.insert_unique(h, id, |&i| {
                        hasher.hash_one(&next[i as usize * stride..(i as usize + 1) * stride])
                    });
                    if layer_end + next_parent.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
            let mut order: Vec<usize> = (0..next_parent.len()).collect();
            order.sort_by(|&a, &b| next[a * stride..(a + 1) * stride].cmp(&next[b * stride..(b + 1) * stride]));
            for &i in &order {
                let idx = parent.len() as u32;
                let elem = &next[i * stride..(i + 1) * stride];
                data.extend_from_slice(elem);
                parent.push(next_parent[i]);
                let h = hasher.hash_one(elem);
                lookup.insert_unique(h, idx, |&j| hasher.hash_one(&data[j as usize * stride..(j as usize + 1) * stride]));
            }
            layer_start = layer_end;
            layer_end = parent.len();
        }
        let n = parent.len();
        let mut q = 1u64;
        while q < n as u64 {
            q *= p as u64;
        }
        if q != n as u64 {
            return Err(Error::NotPGroup(n as u64));
        }

        let mut group = FiniteGroup {
            p,
            realization,
            stride,
            data,
            lookup,
            hasher,
            gens: Vec::new(),
            parent,
            gen_mul: Vec::new(),
            table: None,
            inverse: Vec::new(),
            order_exp: Vec::new(),
            structure,
            caches: Caches::default(),
        };
        group.gens = generators.iter().map(|g| group.index_of_raw(g).expect("generator enumerated")).collect();
        group.gen_mul = generators
            .iter()
            .map(|g| (0..n).map(|x| group.index_of_raw(&group.raw_product(x as u32, g)).unwrap()).collect())
            .collect();
        if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                let row = &mut table[a * n..(a + 1) * n];
                row[0] = a as u32;
                for b in 1..n {
                    let (par, s) = group.parent[b];
                    row[b] = group.gen_mul[s as usize][row[par as usize] as usize];
                }
            }
            group.table = Some(table);
        }
        group.inverse = match &group.table {
            Some(t) => (0..n).map(|a| t[a * n..(a + 1) * n].iter().position(|&x| x == 0).unwrap() as u32).collect(),
            None => (0..n as u32)
                .map(|a| group.index_of_raw(&group.realization.invert(group.raw(a))).unwrap())
                .collect(),
        };
        group.order_exp = (0..n as u32)
            .map(|x| {
                let mut y = x;
                let mut k = 0u8;
                while y != 0 {
                    y = group.pow(y, p as u64);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(group)
    }

    /// The trivial group in the given realization.
    pub fn trivial(p: u32, realization: Realization) -> Result<FiniteGroup> {
        Self::from_raw(p, realization, Vec::new(), 1, None)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn order(&self) -> usize {
        self.parent.len()
    }
    /// `log_p |G|`.
    pub fn log_order(&self) -> u32 {
        let mut n = self.order();
        let mut k = 0;
        while n > 1 {
            n /= self.p as usize;
            k += 1;
        }
        k
    }
    pub fn realization(&self) -> &Realization {
        &self.realization
    }
    pub fn structure(&self) -> Option<&Arc<Structure>> {
        self.structure.as_ref()
    }
    /// Element indices of the generators, in the order supplied.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }
    pub fn identity(&self) -> u32 {
        0
    }
    pub fn raw(&self, x: u32) -> &[u16] {
        &self.data[x as usize * self.stride..(x as usize + 1) * self.stride]
    }
    pub fn element(&self, x: u32) -> GroupElement {
        self.realization.decode(self.raw(x))
    }
    pub fn index_of(&self, e: &GroupElement) -> Option<u32> {
        let raw = self.realization.encode(e).ok()?;
        self.index_of_raw(&raw)
    }
    pub fn index_of_raw(&self, raw: &[u16]) -> Option<u32> {
        let h = self.hasher.hash_one(raw);
        self.lookup.find(h, |&i| self.raw(i) == raw).copied()
    }

    fn raw_product(&self, x: u32, g: &[u16]) -> Vec<u16> {
        let mut out = vec![0u16; self.stride];
        self.realization.multiply(self.raw(x), g, &mut out);
        out
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => {
                let prod = self.raw_product(a, self.raw(b));
                self.index_of_raw(&prod).expect("group closed under products")
            }
        }
    }

    /// Right multiplication by the `s`-th generator.
    #[inline]
    pub fn mul_gen(&self, a: u32, s: usize) -> u32 {
        self.gen_mul[s][a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 0u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Order of `x` as an exponent: `|x| = p^k`.
    pub fn order_exponent(&self, x: u32) -> u32 {
        self.order_exp[x as usize] as u32
    }
    pub fn element_order(&self, x: u32) -> u64 {
        (self.p as u64).pow(self.order_exponent(x))
    }
    pub fn exponent(&self) -> u64 {
        (self.p as u64).pow(self.order_exp.iter().copied().max().unwrap_or(0) as u32)
    }

    /// `[g,h] = g^-1 h^-1 g h`.
    #[inline]
    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        let a = self.mul(self.inv(g), self.inv(h));
        self.mul(self.mul(a, g), h)
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Left-nested `[[...[g,h1],h2]...,hr]`.
    pub fn iterated_commutator(&self, g: u32, hs: &[u32]) -> u32 {
        hs.iter().fold(g, |acc, &h| self.commutator(acc, h))
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// A word in the generators (indices into `generators()`) evaluating to `x`.
    pub fn word(&self, x: u32) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (par, s) = self.parent[cur as usize];
            w.push(s as usize);
            cur = par;
        }
        w.reverse();
        w
    }

    pub fn evaluate_word(&self, word: &[usize]) -> Result<u32> {
        word.iter().try_fold(0u32, |acc, &s| {
            if s < self.gens.len() {
                Ok(self.mul_gen(acc, s))
            } else {
                Err(Error::Input(format!("generator index {s} out of range")))
            }
        })
    }

    /// `(parent, generator)` with `x = parent * generators()[generator]`;
    /// `None` for the identity. Parents always precede their children.
    pub fn parent(&self, x: u32) -> Option<(u32, usize)> {
        let (par, s) = self.parent[x as usize];
        (s != NO_GEN).then_some((par, s as usize))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order() as u32
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        g.iter().all(|&a| g.iter().all(|&b| self.commutes(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(degree: usize, gens: &[&[usize]]) -> Result<FiniteGroup> {
        let gens: Vec<_> = gens.iter().map(|g| GroupElement::Perm(g.to_vec())).collect();
        FiniteGroup::generate(2, Realization::Perm { degree }, &gens, DEFAULT_ELEMENT_CAP)
    }

    #[test]
    fn three_cycle_has_order_three() {
        let g = FiniteGroup::generate(3, Realization::Perm { degree: 3 }, &[GroupElement::Perm(vec![1, 2, 0])], 10).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element(0), GroupElement::Perm(vec![0, 1, 2]));
    }

    #[test]
    fn dihedral_order_eight_and_words() {
        // r = (0 1 2 3), s = (0 2)
        let g = perm_group(4, &[&[1, 2, 3, 0], &[2, 1, 0, 3]]).unwrap();
        assert_eq!(g.order(), 8);
        for x in g.elements() {
            assert_eq!(g.evaluate_word(&g.word(x)).unwrap(), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        // brute-force closure oracle on raw permutations
        let mut set = std::collections::BTreeSet::new();
        let mut frontier = vec![vec![0usize, 1, 2, 3]];
        set.insert(frontier[0].clone());
        let gens = [vec![1usize, 2, 3, 0], vec![2usize, 1, 0, 3]];
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(set.len(), 8);
    }

    #[test]
    fn not_p_group_and_cap() {
        // S_3 is not a 2-group
        let e = perm_group(3, &[&[1, 2, 0], &[1, 0, 2]]).unwrap_err();
        assert_eq!(e, Error::NotPGroup(6));
        let gens = [GroupElement::Perm(vec![1, 2, 3, 0])];
        let e = FiniteGroup::generate(2, Realization::Perm { degree: 4 }, &gens, 3).unwrap_err();
        assert_eq!(e, Error::CapExceeded(3));
    }

    #[test]
    fn mixed_realization_rejected() {
        let gens = [GroupElement::Perm(vec![1, 0]), GroupElement::Matrix(vec![1])];
        let e = FiniteGroup::generate(2, Realization::Perm { degree: 2 }, &gens, 10).unwrap_err();
        assert_eq!(e, Error::MixedRealization);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = perm_group(4, &[&[1, 2, 3, 0], &[2, 1, 0, 3]]).unwrap();
        let b = perm_group(4, &[&[1, 2, 3, 0], &[2, 1, 0, 3]]).unwrap();
        for x in a.elements() {
            assert_eq!(a.raw(x), b.raw(x));
            assert_eq!(a.word(x), b.word(x));
        }
    }
}
