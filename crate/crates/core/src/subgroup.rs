//! Subgroups as sorted member sets, and the closure, centralizer,
//! commutator and series machinery built on them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default cap on the number of normal subgroups enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 100_000;

/// A subgroup of some [`FiniteGroup`], stored as a sorted member list with a
/// membership bitset and a (small) generating subset.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: FixedBitSet,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}
impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl Subgroup {
    fn from_mask(mask: FixedBitSet, gens: Vec<u32>) -> Subgroup {
        let members = mask.ones().map(|x| x as u32).collect();
        Subgroup { members, mask, gens }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask.contains(x as usize)
    }
    pub fn members(&self) -> &[u32] {
        &self.members
    }
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }
    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }
    pub fn log_order(&self, p: u32) -> u32 {
        let mut n = self.order();
        let mut k = 0;
        while n > 1 {
            n /= p as usize;
            k += 1;
        }
        k
    }
}

/// A chain of subgroups of one parent, `terms[0] <= terms[1] <= ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub terms: Vec<Subgroup>,
}

/// Quotient group together with the natural projection.
#[derive(Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the image of element `x` of the parent.
    pub projection: Vec<u32>,
}

impl FiniteGroup {
    fn empty_mask(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut m = self.empty_mask();
        m.insert(0);
        Subgroup::from_mask(m, Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        let mut m = self.empty_mask();
        m.insert_range(..);
        let gens = self.generators().iter().copied().filter(|&g| g != 0).collect();
        Subgroup::from_mask(m, gens)
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[u32]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), seed)
    }

    /// `<base, extra>`; only elements that enlarge the group are kept as
    /// new generators.
    pub fn extend(&self, base: &Subgroup, extra: &[u32]) -> Subgroup {
        let mut mask = base.mask.clone();
        let mut gens = base.gens.clone();
        let mut members: Vec<u32> = base.members.clone();
        for &x in extra {
            if mask.contains(x as usize) {
                continue;
            }
            gens.push(x);
            let mut queue: Vec<u32> = Vec::new();
            // old elements times the new generator
            for &h in &members {
                let y = self.mul(h, x);
                if !mask.put(y as usize) {
                    queue.push(y);
                }
            }
            let mut i = 0;
            while i < queue.len() {
                let y = queue[i];
                i += 1;
                for &s in &gens {
                    let z = self.mul(y, s);
                    if !mask.put(z as usize) {
                        queue.push(z);
                    }
                }
            }
            members.extend(queue);
        }
        Subgroup::from_mask(mask, gens)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.order() >= b.order() {
            self.extend(a, &b.gens)
        } else {
            self.extend(b, &a.gens)
        }
    }

    /// Builds a subgroup from a member set known to be closed.
    pub fn subgroup_from_members(&self, members: impl IntoIterator<Item = u32>) -> Subgroup {
        let mut target = self.empty_mask();
        for x in members {
            target.insert(x as usize);
        }
        let mut h = self.trivial_subgroup();
        for x in target.ones() {
            if !h.contains(x as u32) {
                h = self.extend(&h, &[x as u32]);
            }
        }
        debug_assert_eq!(h.mask, target, "member set was not closed");
        h
    }

    /// Like [`subgroup_from_members`](Self::subgroup_from_members) but returns
    /// `None` when the set is not a subgroup.
    pub fn checked_subgroup(&self, members: impl IntoIterator<Item = u32>) -> Option<Subgroup> {
        let mut target = self.empty_mask();
        for x in members {
            target.insert(x as usize);
        }
        let h = self.closure(&target.ones().map(|x| x as u32).collect::<Vec<_>>());
        (h.mask == target).then_some(h)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut m = a.mask.clone();
        m.intersect_with(&b.mask);
        self.subgroup_from_members(m.ones().map(|x| x as u32))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.gens.iter().all(|&x| self.generators().iter().all(|&g| s.contains(self.conjugate(x, g))))
    }

    /// Subgroup `S^g`.
    pub fn conjugate_subgroup(&self, s: &Subgroup, g: u32) -> Subgroup {
        let gens: Vec<u32> = s.gens.iter().map(|&x| self.conjugate(x, g)).collect();
        let mut mask = self.empty_mask();
        for &x in &s.members {
            mask.insert(self.conjugate(x, g) as usize);
        }
        Subgroup::from_mask(mask, gens)
    }

    pub fn subgroup_is_abelian(&self, s: &Subgroup) -> bool {
        s.gens.iter().all(|&a| s.gens.iter().all(|&b| self.commutes(a, b)))
    }

    pub fn is_elementary_abelian(&self, s: &Subgroup) -> bool {
        self.subgroup_is_abelian(s) && s.gens.iter().all(|&x| self.order_exponent(x) <= 1)
    }

    pub fn centralizer_of_element(&self, x: u32) -> Subgroup {
        self.subgroup_from_members(self.elements().filter(|&g| self.commutes(g, x)))
    }

    /// Pointwise centralizer `C_G(S)`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        self.subgroup_from_members(self.elements().filter(|&g| s.gens.iter().all(|&x| self.commutes(g, x))))
    }

    /// Centralizer of `s` inside the subgroup `within`.
    pub fn centralizer_in(&self, within: &Subgroup, s: &Subgroup) -> Subgroup {
        self.subgroup_from_members(
            within.members.iter().copied().filter(|&g| s.gens.iter().all(|&x| self.commutes(g, x))),
        )
    }

    /// Setwise normalizer `N_G(S)`.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), s)
    }

    pub fn normalizer_in(&self, within: &Subgroup, s: &Subgroup) -> Subgroup {
        self.subgroup_from_members(
            within.members.iter().copied().filter(|&g| s.gens.iter().all(|&x| s.contains(self.conjugate(x, g)))),
        )
    }

    pub fn center(&self) -> Subgroup {
        self.caches.center.get_or_init(|| self.centralizer(&self.whole())).clone()
    }

    /// Smallest subgroup containing `seed` and closed under conjugation by
    /// `conjugators`.
    pub fn normal_closure_under(&self, seed: &[u32], conjugators: &[u32]) -> Subgroup {
        let mut h = self.closure(seed);
        let mut i = 0;
        while i < h.gens.len() {
            let x = h.gens[i];
            i += 1;
            let new: Vec<u32> =
                conjugators.iter().map(|&c| self.conjugate(x, c)).filter(|&y| !h.contains(y)).collect();
            for y in new {
                if !h.contains(y) {
                    h = self.extend(&h, &[y]);
                }
            }
        }
        h
    }

    /// Normal closure of `S` in `G`.
    pub fn normal_closure(&self, s: &Subgroup) -> Subgroup {
        self.normal_closure_under(&s.gens, self.generators())
    }

    /// `[A,B]`, generated by `[a,b]`. Computed as the normal closure in
    /// `<A,B>` of the commutators of generators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seed = Vec::new();
        for &x in &a.gens {
            for &y in &b.gens {
                let c = self.commutator(x, y);
                if c != 0 {
                    seed.push(c);
                }
            }
        }
        let conj: Vec<u32> = a.gens.iter().chain(&b.gens).copied().collect();
        self.normal_closure_under(&seed, &conj)
    }

    /// `[A,B;k]` with `[A,B;1] = [A,B]` and `[A,B;k+1] = [[A,B;k],B]`.
    pub fn iterated_commutator_subgroup(&self, a: &Subgroup, b: &Subgroup, k: usize) -> Subgroup {
        assert!(k >= 1, "k must be positive");
        let mut c = self.commutator_subgroup(a, b);
        for _ in 1..k {
            if c.is_trivial() {
                break;
            }
            c = self.commutator_subgroup(&c, b);
        }
        c
    }

    /// True iff `[A,B;k] = 1`, stopping early.
    pub fn iterated_commutator_vanishes(&self, a: &Subgroup, b: &Subgroup, k: usize) -> bool {
        self.iterated_commutator_subgroup(a, b, k).is_trivial()
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `Omega_1(S)`: generated by the elements of order dividing p.
    pub fn omega1(&self, s: &Subgroup) -> Subgroup {
        let seed: Vec<u32> = s.members.iter().copied().filter(|&x| self.order_exponent(x) == 1).collect();
        self.closure(&seed)
    }

    /// `S^p = <x^p : x in S>`.
    pub fn agemo(&self, s: &Subgroup) -> Subgroup {
        let p = self.prime() as u64;
        let seed: Vec<u32> = s.members.iter().map(|&x| self.pow(x, p)).filter(|&y| y != 0).collect();
        self.closure(&seed)
    }

    /// Powerful for odd p: `[G,G] <= G^p`.
    pub fn is_powerful(&self) -> Result<bool> {
        if self.prime() == 2 {
            return Err(Error::OddPrimeRequired);
        }
        Ok(self.derived_subgroup().is_subgroup_of(&self.agemo(&self.whole())))
    }

    /// `K_1 = G, K_{r+1} = [K_r, G]`, ending with the trivial group.
    /// Entry `i` is `K_{i+1}`.
    pub fn lower_central_series(&self) -> Arc<Vec<Subgroup>> {
        self.caches.lower.get_or_init(|| Arc::new(self.lower_central_series_of(&self.whole()))).clone()
    }

    /// Lower central series of the subgroup `L` (as a group in its own right).
    pub fn lower_central_series_of(&self, l: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![l.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = self.commutator_subgroup(series.last().unwrap(), l);
            if next == *series.last().unwrap() {
                unreachable!("p-groups are nilpotent");
            }
            series.push(next);
        }
        series
    }

    /// `1 = Z_0 < Z_1 < ... = G`. Entry `i` is `Z_i`.
    pub fn upper_central_series(&self) -> Arc<Vec<Subgroup>> {
        self.caches
            .upper
            .get_or_init(|| {
                let mut series = vec![self.trivial_subgroup()];
                while series.last().unwrap().order() < self.order() {
                    let z = series.last().unwrap();
                    let next = self.subgroup_from_members(
                        self.elements().filter(|&x| self.generators().iter().all(|&g| z.contains(self.commutator(x, g)))),
                    );
                    assert!(next.order() > z.order(), "p-groups are nilpotent");
                    series.push(next);
                }
                Arc::new(series)
            })
            .clone()
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Arc<Vec<Vec<u32>>> {
        self.caches
            .classes
            .get_or_init(|| {
                let mut seen = self.empty_mask();
                let mut classes = Vec::new();
                for x in self.elements() {
                    if seen.contains(x as usize) {
                        continue;
                    }
                    let mut class = vec![x];
                    seen.insert(x as usize);
                    let mut i = 0;
                    while i < class.len() {
                        let y = class[i];
                        i += 1;
                        for &g in self.generators() {
                            let z = self.conjugate(y, g);
                            if !seen.put(z as usize) {
                                class.push(z);
                            }
                        }
                    }
                    class.sort_unstable();
                    classes.push(class);
                }
                Arc::new(classes)
            })
            .clone()
    }

    /// Every normal subgroup, ordered by (order, member list).
    ///
    /// Breadth-first search through covers: the normal subgroups covering
    /// `N` are exactly `N<x>` for `x` central of order p modulo `N`, i.e.
    /// joins of `N` with a conjugacy class lying in one coset of `N`.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(n) = self.caches.normals.get() {
            if n.len() <= cap {
                return Ok(n.clone());
            }
            return Err(Error::CapExceeded(cap));
        }
        let p = self.prime() as u64;
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.mask.clone());
        let mut queue = VecDeque::from([trivial.clone()]);
        let mut out = vec![trivial];
        while let Some(n) = queue.pop_front() {
            let mut covered = n.mask.clone();
            for x in self.elements() {
                if covered.contains(x as usize) {
                    continue;
                }
                if !n.contains(self.pow(x, p)) {
                    continue;
                }
                if !self.generators().iter().all(|&g| n.contains(self.commutator(x, g))) {
                    continue;
                }
                // N<x> = union of the cosets N x^i
                let mut mask = n.mask.clone();
                let mut xi = x;
                for _ in 1..p {
                    for &m in &n.members {
                        mask.insert(self.mul(m, xi) as usize);
                    }
                    xi = self.mul(xi, x);
                }
                covered.union_with(&mask);
                if seen.insert(mask.clone()) {
                    let mut gens = n.gens.clone();
                    gens.push(x);
                    let m = Subgroup::from_mask(mask, gens);
                    queue.push_back(m.clone());
                    out.push(m);
                    if out.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        let out = Arc::new(out);
        let _ = self.caches.normals.set(out.clone());
        Ok(out)
    }

    /// `G/N` as a table-realized group; cosets are numbered by their least
    /// element.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let size = self.order();
        let mut coset = vec![u32::MAX; size];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in &n.members {
                coset[self.mul(x, m) as usize] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b) as usize];
            }
        }
        let realization = crate::group::Realization::Table { table: Arc::new(table), order: m, identity: 0 };
        let gens: Vec<Vec<u16>> = self.generators().iter().map(|&g| vec![coset[g as usize] as u16]).collect();
        if m > u16::MAX as usize {
            return Err(Error::CapExceeded(u16::MAX as usize));
        }
        let group = FiniteGroup::from_raw(self.prime(), realization, gens, m.max(1), None)?;
        let projection = coset.iter().map(|&c| group.index_of_raw(&[c as u16]).unwrap()).collect();
        Ok(Quotient { group, projection })
    }

    /// `CN` for `N` normal; checks the product set is the join.
    pub fn product_subgroup(&self, c: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut mask = self.empty_mask();
        for &x in &c.members {
            for &y in &n.members {
                mask.insert(self.mul(x, y) as usize);
            }
        }
        let join = self.join(c, n);
        if join.mask != mask {
            return Err(Error::Inconsistent("CN differs from <C,N> for normal N".into()));
        }
        Ok(join)
    }

    /// Subgroup `Z(S)`.
    pub fn center_of(&self, s: &Subgroup) -> Subgroup {
        self.centralizer_in(s, s)
    }

    /// Images of the subgroup under a map given on all elements.
    pub fn image_members(map: &[u32], s: &Subgroup) -> Vec<u32> {
        let mut v: Vec<u32> = s.members.iter().map(|&x| map[x as usize]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Abelianization order `|G/G'|`.
    pub fn abelianization_order(&self) -> usize {
        self.order() / self.derived_subgroup().order()
    }

    /// Census used in place of isomorphism tests: order, class, exponent,
    /// abelianization, center order and element-order counts.
    pub fn census(&self) -> Census {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for x in self.elements() {
            *counts.entry(self.order_exponent(x)).or_default() += 1;
        }
        let mut order_counts: Vec<(u32, usize)> = counts.into_iter().collect();
        order_counts.sort_unstable();
        Census {
            order: self.order(),
            class: self.nilpotency_class(),
            exponent: self.exponent(),
            abelianization: self.abelianization_order(),
            center: self.center().order(),
            order_counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub order: usize,
    pub class: usize,
    pub exponent: u64,
    pub abelianization: usize,
    pub center: usize,
    pub order_counts: Vec<(u32, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral, direct_product, jordan_extension, unitriangular};
    use crate::group::{GroupElement, Realization, DEFAULT_ELEMENT_CAP as CAP};

    fn d8() -> FiniteGroup {
        dihedral(8, CAP).unwrap()
    }

    fn modular27() -> FiniteGroup {
        let a: Vec<usize> = (0..9).map(|x| (x + 1) % 9).collect();
        let b: Vec<usize> = (0..9).map(|x| 4 * x % 9).collect();
        FiniteGroup::generate(3, Realization::Perm { degree: 9 }, &[GroupElement::Perm(a), GroupElement::Perm(b)], CAP)
            .unwrap()
    }

    /// Every subgroup, by closing all pairs of cyclic subgroups repeatedly.
    fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![g.trivial_subgroup()];
        let mut i = 0;
        while i < found.len() {
            let h = found[i].clone();
            i += 1;
            for x in g.elements() {
                if h.contains(x) {
                    continue;
                }
                let k = g.extend(&h, &[x]);
                if !found.contains(&k) {
                    found.push(k);
                }
            }
        }
        found
    }

    #[test]
    fn closure_examples() {
        let g = d8();
        assert!(g.closure(&[0]).is_trivial());
        let r = g.generators()[0];
        assert_eq!(g.closure(&[r]).order(), 4);
        assert_eq!(g.closure(g.generators()).order(), 8);
    }

    #[test]
    fn centralizers_in_d8() {
        let g = d8();
        let r = g.generators()[0];
        assert_eq!(g.centralizer(&g.trivial_subgroup()).order(), 8);
        let c = g.centralizer_of_element(r);
        // oracle: scan
        let scan: Vec<u32> = g.elements().filter(|&x| g.mul(x, r) == g.mul(r, x)).collect();
        assert_eq!(c.members(), &scan[..]);
        assert_eq!(c.order(), 4);
        assert_eq!(g.normalizer(&g.center()).order(), 8);
    }

    #[test]
    fn central_series() {
        let g = d8();
        let lower = g.lower_central_series();
        let upper = g.upper_central_series();
        assert_eq!(lower.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![8, 2, 1]);
        assert_eq!(upper.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 2, 8]);
        let u = unitriangular(3, 3, CAP).unwrap();
        assert_eq!(u.nilpotency_class(), 2);
        assert_eq!(u.lower_central_series()[1], u.center());
        assert_eq!(u.center().order(), 3);
        let c = cyclic(3, 2, CAP).unwrap();
        assert_eq!(c.upper_central_series()[1].order(), 9);
        assert!(c.lower_central_series()[1].is_trivial());
    }

    #[test]
    fn commutator_subgroups() {
        let g = d8();
        let whole = g.whole();
        // oracle: all 64 commutators
        let mut comms: Vec<u32> = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                comms.push(g.commutator(a, b));
            }
        }
        assert_eq!(g.commutator_subgroup(&whole, &whole), g.closure(&comms));
        assert_eq!(g.commutator_subgroup(&whole, &g.center()).order(), 1);
        let s = jordan_extension(5, 3, CAP).unwrap();
        let w = s.whole();
        assert!(!s.iterated_commutator_subgroup(&w, &w, 2).is_trivial());
        assert!(s.iterated_commutator_subgroup(&w, &w, 3).is_trivial());
        assert!(s.iterated_commutator_subgroup(&w, &w, 4).is_trivial());
    }

    #[test]
    fn omega_agemo_powerful() {
        let c9 = cyclic(3, 2, CAP).unwrap();
        assert_eq!(c9.omega1(&c9.whole()).order(), 3);
        let g = d8();
        assert_eq!(g.omega1(&g.whole()).order(), 8);
        let u = unitriangular(3, 3, CAP).unwrap();
        assert!(u.agemo(&u.whole()).is_trivial());
        assert!(!u.is_powerful().unwrap());
        assert!(modular27().is_powerful().unwrap());
        assert_eq!(g.is_powerful(), Err(Error::OddPrimeRequired));
        assert!(c9.is_powerful().unwrap());
    }

    #[test]
    fn normal_subgroup_counts() {
        let c3 = cyclic(3, 1, CAP).unwrap();
        let c3c3 = direct_product(&c3, &c3, CAP).unwrap();
        assert_eq!(c3c3.normal_subgroups(DEFAULT_SUBGROUP_CAP).unwrap().len(), 6);
        let g = d8();
        let normals = g.normal_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(normals.len(), 6);
        // oracle: all subgroups invariant under the generators
        let invariant: Vec<Subgroup> = all_subgroups(&g).into_iter().filter(|s| g.is_normal(s)).collect();
        assert_eq!(all_subgroups(&g).len(), 10);
        assert_eq!(invariant.len(), normals.len());
        assert!(invariant.iter().all(|s| normals.contains(s)));
        assert_eq!(g.normal_closure(&g.center()), g.center());
        assert_eq!(g.normal_subgroups(3).unwrap_err(), Error::CapExceeded(3));
    }

    #[test]
    fn normal_lattice_matches_oracle_on_order_27_and_16() {
        let u = unitriangular(3, 3, CAP).unwrap();
        for g in [u, modular27(), dihedral(16, CAP).unwrap()] {
            let normals = g.normal_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
            let oracle: Vec<Subgroup> = all_subgroups(&g).into_iter().filter(|s| g.is_normal(s)).collect();
            assert_eq!(oracle.len(), normals.len());
        }
    }

    #[test]
    fn quotients() {
        let g = d8();
        let q = g.quotient(&g.whole()).unwrap();
        assert_eq!(q.group.order(), 1);
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert_eq!(q.group.exponent(), 2);
        let s = jordan_extension(5, 3, CAP).unwrap();
        let base = crate::construct::jordan_base(&s);
        let q = s.quotient(&base).unwrap();
        assert_eq!(q.group.order(), 5);
        // projection is a homomorphism
        let qd = g.quotient(&g.center()).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let (pa, pb) = (qd.projection[a as usize], qd.projection[b as usize]);
                assert_eq!(qd.projection[g.mul(a, b) as usize], qd.group.mul(pa, pb));
            }
        }
        let reflection = g.closure(&[g.generators()[1]]);
        assert_eq!(g.quotient(&reflection).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn products() {
        let u = unitriangular(3, 3, CAP).unwrap();
        let x = u.closure(&[u.generators()[0]]);
        let z = u.center();
        assert_eq!(u.product_subgroup(&x, &z).unwrap().order(), 9);
        assert_eq!(u.product_subgroup(&u.trivial_subgroup(), &z).unwrap(), z);
        assert_eq!(u.product_subgroup(&x, &u.trivial_subgroup()).unwrap(), x);
        assert_eq!(u.product_subgroup(&z, &x).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn conjugacy_classes_partition() {
        let g = d8();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 5);
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 8);
    }
}
