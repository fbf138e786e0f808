//! Representations of p-groups over F_p, acting on row vectors from the
//! right, with the per-element action derived along enumeration words.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Realization};
use crate::linalg::{echelon_basis, FpMatrix};
use crate::subgroup::Subgroup;

/// Largest `|G| · dim²` for which dense per-element matrices are stored.
pub const DENSE_STORAGE_LIMIT: usize = 50_000_000;

/// Action of one element: a dense matrix or a permutation of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Dense(FpMatrix),
    /// `e_i ↦ e_{perm[i]}`.
    Perm(Vec<u32>),
}

impl Action {
    fn compose(&self, other: &Action) -> Action {
        match (self, other) {
            (Action::Dense(a), Action::Dense(b)) => Action::Dense(a.mul(b)),
            (Action::Perm(a), Action::Perm(b)) => Action::Perm(a.iter().map(|&i| b[i as usize]).collect()),
            _ => unreachable!("one representation mixes action kinds"),
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            Action::Dense(a) => a.is_identity(),
            Action::Perm(a) => a.iter().enumerate().all(|(i, &x)| i == x as usize),
        }
    }

    pub fn to_dense(&self, p: u32) -> FpMatrix {
        match self {
            Action::Dense(a) => a.clone(),
            Action::Perm(a) => {
                let mut m = FpMatrix::zero(p, a.len(), a.len());
                for (i, &x) in a.iter().enumerate() {
                    m.set(i, x as usize, 1);
                }
                m
            }
        }
    }
}

/// Where a representation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    Regular,
    Permutation,
    Natural,
    Given,
}

/// A representation of a group over F_p.
#[derive(Debug, Clone)]
pub struct Representation {
    p: u32,
    dim: usize,
    kind: ModuleKind,
    generators: Vec<Action>,
    actions: Vec<Action>,
    faithful: bool,
}

impl Representation {
    fn build(g: &FiniteGroup, generators: Vec<Action>, dim: usize, kind: ModuleKind) -> Result<Representation> {
        if generators.len() != g.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator actions for {} generators",
                generators.len(),
                g.generators().len()
            )));
        }
        let p = g.prime();
        let identity = match generators.first() {
            Some(Action::Perm(_)) => Action::Perm((0..dim as u32).collect()),
            _ => Action::Dense(FpMatrix::identity(p, dim)),
        };
        let mut actions = Vec::with_capacity(g.order());
        actions.push(identity);
        for x in 1..g.order() as u32 {
            let (par, s) = g.parent(x).expect("non-identity element has a parent");
            let a = actions[par as usize].compose(&generators[s]);
            actions.push(a);
        }
        for x in g.elements() {
            for (s, gen) in generators.iter().enumerate() {
                if actions[g.mul_gen(x, s) as usize] != actions[x as usize].compose(gen) {
                    return Err(Error::NotHomomorphism { element: x as usize, generator: s });
                }
            }
        }
        let faithful = actions.iter().skip(1).all(|a| !a.is_identity());
        Ok(Representation { p, dim, kind, generators, actions, faithful })
    }

    /// One F_p matrix per group generator.
    pub fn from_matrices(g: &FiniteGroup, matrices: Vec<FpMatrix>) -> Result<Representation> {
        let dim = matrices.first().map_or(0, |m| m.rows());
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator matrix {i} is not {dim} x {dim}")));
            }
            if m.prime() != g.prime() {
                return Err(Error::PrimeMismatch(m.prime(), g.prime()));
            }
            if !m.is_invertible() {
                return Err(Error::NotInvertible(i));
            }
        }
        if g.order().saturating_mul(dim * dim) > DENSE_STORAGE_LIMIT {
            return Err(Error::CapExceeded(DENSE_STORAGE_LIMIT));
        }
        Self::build(g, matrices.into_iter().map(Action::Dense).collect(), dim, ModuleKind::Given)
    }

    /// Right translation on the group algebra.
    pub fn regular(g: &FiniteGroup) -> Result<Representation> {
        let gens = g.generators().iter().map(|&s| Action::Perm(g.elements().map(|x| g.mul(x, s)).collect())).collect();
        Self::build(g, gens, g.order(), ModuleKind::Regular)
    }

    /// The permutation module of a permutation group.
    pub fn permutation(g: &FiniteGroup) -> Result<Representation> {
        let degree = match g.realization() {
            Realization::Perm { degree } => *degree,
            _ => return Err(Error::WrongRealization("permutation module needs a permutation group".into())),
        };
        let gens = g.generators().iter().map(|&s| Action::Perm(g.raw(s).iter().map(|&x| x as u32).collect())).collect();
        Self::build(g, gens, degree, ModuleKind::Permutation)
    }

    /// The defining module of a matrix group over F_q, viewed over F_p.
    pub fn natural(g: &FiniteGroup) -> Result<Representation> {
        let (field, d) = match g.realization() {
            Realization::Matrix { field, dim } => (field.clone(), *dim),
            _ => return Err(Error::WrongRealization("natural module needs a matrix group".into())),
        };
        let e = field.degree() as usize;
        let dim = d * e;
        let p = g.prime();
        let mut gens = Vec::new();
        for &s in g.generators() {
            let m = g.raw(s);
            let mut out = FpMatrix::zero(p, dim, dim);
            for i in 0..d {
                for j in 0..d {
                    let block = field.multiplication_matrix(m[i * d + j]);
                    for a in 0..e {
                        for b in 0..e {
                            out.set(i * e + a, j * e + b, block[a * e + b]);
                        }
                    }
                }
            }
            gens.push(out);
        }
        let mut r = Self::from_matrices(g, gens)?;
        r.kind = ModuleKind::Natural;
        Ok(r)
    }

    /// `V ⊕ W` as dense matrices.
    pub fn direct_sum(&self, g: &FiniteGroup, other: &Representation) -> Result<Representation> {
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| a.to_dense(self.p).direct_sum(&b.to_dense(self.p)))
            .collect();
        Self::from_matrices(g, gens)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn kind(&self) -> ModuleKind {
        self.kind
    }
    pub fn is_faithful(&self) -> bool {
        self.faithful
    }
    pub fn action(&self, x: u32) -> &Action {
        &self.actions[x as usize]
    }
    pub fn generator_actions(&self) -> &[Action] {
        &self.generators
    }
    pub fn matrix(&self, x: u32) -> FpMatrix {
        self.actions[x as usize].to_dense(self.p)
    }

    pub(crate) fn require_faithful(&self) -> Result<()> {
        if self.faithful {
            Ok(())
        } else {
            Err(Error::InvalidParameter("module is not faithful".into()))
        }
    }

    /// Whether `(ρ(g) − 1)(ρ(h) − 1) = 0`.
    pub fn product_vanishes(&self, g: u32, h: u32) -> bool {
        match (&self.actions[g as usize], &self.actions[h as usize]) {
            (Action::Dense(a), Action::Dense(b)) => a.minus_identity().mul(&b.minus_identity()).is_zero(),
            (Action::Perm(a), Action::Perm(b)) => {
                // e_i(A−1)(B−1) = e_{i^ab} − e_{i^a} − e_{i^b} + e_i
                let p = self.p as i64;
                (0..self.dim).all(|i| {
                    let terms = [(b[a[i] as usize], 1i64), (a[i], -1), (b[i], -1), (i as u32, 1)];
                    terms.iter().all(|&(pt, _)| {
                        let c: i64 = terms.iter().filter(|t| t.0 == pt).map(|t| t.1).sum();
                        c.rem_euclid(p) == 0
                    })
                })
            }
            _ => unreachable!(),
        }
    }

    /// Least `k` with `(ρ(g) − 1)^k = 0`.
    pub fn unipotency_degree(&self, g: u32) -> usize {
        match &self.actions[g as usize] {
            Action::Dense(a) => {
                let n = a.minus_identity();
                let mut power = n.clone();
                let mut k = 1;
                while !power.is_zero() {
                    power = power.mul(&n);
                    k += 1;
                }
                k
            }
            Action::Perm(a) => {
                // a cycle of length p^m contributes (X − 1)^{p^m}
                let mut seen = vec![false; a.len()];
                let mut longest = 1;
                for i in 0..a.len() {
                    let mut len = 0;
                    let mut j = i;
                    while !seen[j] {
                        seen[j] = true;
                        j = a[j] as usize;
                        len += 1;
                    }
                    longest = longest.max(len);
                }
                longest
            }
        }
    }

    /// `g ≠ 1` acting with minimal polynomial `(X − 1)^2`.
    pub fn is_quadratic(&self, g: u32) -> bool {
        g != 0 && self.product_vanishes(g, g)
    }

    /// Basis of `C_V(H)`.
    pub fn fixed_subspace(&self, h: &Subgroup) -> Vec<Vec<u32>> {
        self.fixed_subspace_of(h.generators())
    }

    pub fn fixed_subspace_of(&self, gens: &[u32]) -> Vec<Vec<u32>> {
        if gens.is_empty() {
            return (0..self.dim).map(|i| (0..self.dim).map(|j| u32::from(i == j)).collect()).collect();
        }
        match &self.actions[gens[0] as usize] {
            Action::Perm(_) => {
                let orbits = self.orbits(gens);
                let vectors: Vec<Vec<u32>> = orbits
                    .iter()
                    .map(|orbit| {
                        let mut v = vec![0u32; self.dim];
                        for &i in orbit {
                            v[i] = 1;
                        }
                        v
                    })
                    .collect();
                echelon_basis(self.p, self.dim, &vectors)
            }
            Action::Dense(_) => {
                let mut cat = FpMatrix::zero(self.p, self.dim, self.dim * gens.len());
                for (k, &x) in gens.iter().enumerate() {
                    let m = self.matrix(x).minus_identity();
                    for i in 0..self.dim {
                        for j in 0..self.dim {
                            cat.set(i, k * self.dim + j, m.get(i, j));
                        }
                    }
                }
                cat.left_kernel()
            }
        }
    }

    fn orbits(&self, gens: &[u32]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dim];
        let mut out = Vec::new();
        for start in 0..self.dim {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let pt = orbit[i];
                i += 1;
                for &g in gens {
                    if let Action::Perm(a) = &self.actions[g as usize] {
                        let q = a[pt] as usize;
                        if !seen[q] {
                            seen[q] = true;
                            orbit.push(q);
                        }
                    }
                }
            }
            out.push(orbit);
        }
        out
    }

    pub fn fixed_dim(&self, h: &Subgroup) -> usize {
        match h.generators().first().map(|&x| &self.actions[x as usize]) {
            Some(Action::Perm(_)) => self.orbits(h.generators()).len(),
            _ => self.fixed_subspace(h).len(),
        }
    }

    /// Exponent `e` of `j_H(V) = p^e`: `log_p|H| + dim C_V(H) − dim V`.
    pub fn j_exponent(&self, h: &Subgroup) -> i64 {
        h.log_order(self.p) as i64 + self.fixed_dim(h) as i64 - self.dim as i64
    }
}
