//! Elementary abelian subgroups, the Thompson subgroup, weak closure and
//! related subgroup-level tests.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::construct::{realize, shift_perm, wreath_base, wreath_inner, Structure};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Realization};
use crate::subgroup::Subgroup;

/// Default number of search nodes visited before giving up.
pub const DEFAULT_SCAN_BUDGET: usize = 2_000_000;

/// The maximal elementary abelian subgroups of a group.
#[derive(Debug, Clone)]
pub struct ElemAbelianCatalog {
    pub maximals: Vec<Subgroup>,
    /// Largest rank among them (the p-rank of the group).
    pub rank: u32,
}

fn order_p_elements(g: &FiniteGroup) -> Vec<u32> {
    g.elements().filter(|&x| g.order_exponent(x) == 1).collect()
}

fn sort_subgroups(v: &mut [Subgroup]) {
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
}

/// Order-p elements of `C_G(E) \ E`.
fn extenders(g: &FiniteGroup, order_p: &[u32], e: &Subgroup) -> Vec<u32> {
    order_p
        .iter()
        .copied()
        .filter(|&x| !e.contains(x) && e.generators().iter().all(|&y| g.commutes(x, y)))
        .collect()
}

/// Every maximal elementary abelian subgroup.
///
/// Depth-first search upward from `Ω_1(Z(G))`, which lies in every maximal
/// one. Each node is extended by the order-p elements centralizing it;
/// candidates already inside an earlier child give the same child and are
/// skipped, and visited nodes are remembered by member set.
pub fn maximal_elementary_abelians(g: &FiniteGroup, budget: usize) -> Result<ElemAbelianCatalog> {
    let order_p = order_p_elements(g);
    let root = g.omega1(&g.center());
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(root.mask().clone());
    let mut stack = vec![root];
    let mut maximals = Vec::new();
    let mut visited = 0usize;
    while let Some(e) = stack.pop() {
        visited += 1;
        if visited > budget {
            return Err(Error::ScanBudgetExceeded(budget));
        }
        let ext = extenders(g, &order_p, &e);
        if ext.is_empty() {
            maximals.push(e);
            continue;
        }
        let mut children: Vec<Subgroup> = Vec::new();
        for x in ext {
            if children.iter().any(|c| c.contains(x)) {
                continue;
            }
            let child = g.extend(&e, &[x]);
            children.push(child.clone());
            if seen.insert(child.mask().clone()) {
                stack.push(child);
            }
        }
    }
    sort_subgroups(&mut maximals);
    let rank = maximals.iter().map(|m| m.log_order(g.prime())).max().unwrap_or(0);
    Ok(ElemAbelianCatalog { maximals, rank })
}

/// `J(G)`: the subgroup generated by the elementary abelian subgroups of
/// greatest rank.
pub fn thompson_subgroup(g: &FiniteGroup, budget: usize) -> Result<Subgroup> {
    let cat = maximal_elementary_abelians(g, budget)?;
    Ok(thompson_from_catalog(g, &cat))
}

pub fn thompson_from_catalog(g: &FiniteGroup, cat: &ElemAbelianCatalog) -> Subgroup {
    cat.maximals
        .iter()
        .filter(|m| m.log_order(g.prime()) == cat.rank)
        .fold(g.trivial_subgroup(), |acc, m| g.join(&acc, m))
}

/// Every elementary abelian subgroup of rank at least `min_rank`, including
/// the trivial subgroup when `min_rank == 0`. Sorted by order, then members.
pub fn all_elementary_abelians(g: &FiniteGroup, min_rank: u32, budget: usize) -> Result<Vec<Subgroup>> {
    let order_p = order_p_elements(g);
    let root = g.trivial_subgroup();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(root.mask().clone());
    let mut stack = vec![root];
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        if seen.len() > budget {
            return Err(Error::ScanBudgetExceeded(budget));
        }
        let ext = extenders(g, &order_p, &e);
        let mut children: Vec<Subgroup> = Vec::new();
        for x in ext {
            if children.iter().any(|c| c.contains(x)) {
                continue;
            }
            let child = g.extend(&e, &[x]);
            children.push(child.clone());
            if seen.insert(child.mask().clone()) {
                stack.push(child);
            }
        }
        if e.log_order(g.prime()) >= min_rank {
            out.push(e);
        }
    }
    sort_subgroups(&mut out);
    Ok(out)
}

/// Right coset representatives of `N` in `G`, least element first.
pub fn right_transversal(g: &FiniteGroup, n: &Subgroup) -> Vec<u32> {
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut reps = Vec::new();
    for x in g.elements() {
        if covered.contains(x as usize) {
            continue;
        }
        reps.push(x);
        for &m in n.members() {
            covered.insert(g.mul(m, x) as usize);
        }
    }
    reps
}

/// Outcome of a weak-closure test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakClosure {
    WeaklyClosed,
    /// `E^g ≠ E` commutes with `E`.
    Witness(u32),
}

/// Whether the abelian subgroup `E` is weakly closed: no conjugate
/// `E^g ≠ E` centralizes `E`. Scans a right transversal of `N_G(E)`.
pub fn is_weakly_closed(g: &FiniteGroup, e: &Subgroup, budget: usize) -> Result<WeakClosure> {
    if !g.subgroup_is_abelian(e) {
        return Err(Error::InvalidParameter("weak closure is defined for abelian subgroups".into()));
    }
    let n = g.normalizer(e);
    let reps = right_transversal(g, &n);
    if reps.len() > budget {
        return Err(Error::ScanBudgetExceeded(budget));
    }
    for &x in reps.iter().skip(1) {
        let conj: Vec<u32> = e.generators().iter().map(|&y| g.conjugate(y, x)).collect();
        if conj.iter().all(|&c| e.generators().iter().all(|&y| g.commutes(c, y))) {
            return Ok(WeakClosure::Witness(x));
        }
    }
    Ok(WeakClosure::WeaklyClosed)
}

/// Subgroup generated by all abelian normal subgroups.
pub fn abelian_normal_span(g: &FiniteGroup, subgroup_cap: usize) -> Result<Subgroup> {
    let normals = g.normal_subgroups(subgroup_cap)?;
    Ok(normals
        .iter()
        .filter(|n| g.subgroup_is_abelian(n))
        .fold(g.trivial_subgroup(), |acc, n| g.join(&acc, n)))
}

/// `T(F)`: the blocks `b` (1-based) of a wreath product `P ≀ C_p` on which
/// the subgroup `F` of the base projects outside `Z(P)`.
pub fn support_profile(w: &FiniteGroup, f: &Subgroup, cap: usize) -> Result<Vec<usize>> {
    let base = wreath_base(w)?;
    if !f.is_subgroup_of(&base) {
        return Err(Error::NotInBase);
    }
    let inner = wreath_inner(w, cap)?;
    let z = inner.center();
    let (n, p) = match w.structure().map(|s| &**s) {
        Some(Structure::Wreath { inner, p }) => (inner.degree(), *p as usize),
        _ => return Err(Error::NotWreathGroup),
    };
    let mut out = Vec::new();
    for b in 0..p {
        let outside = f.generators().iter().any(|&x| {
            let raw = w.raw(x);
            let proj: Vec<u16> = (0..n).map(|i| (raw[b * n + i] as usize - b * n) as u16).collect();
            let idx = inner.index_of_raw(&proj).expect("base element projects into P");
            !z.contains(idx)
        });
        if outside {
            out.push(b + 1);
        }
    }
    Ok(out)
}

/// One weakly closed, non-central `F` and an element certifying the
/// condition for it.
#[derive(Debug, Clone)]
pub struct FCertificate {
    pub f: Subgroup,
    /// Nontrivial element of `[F, N_P(F)] ∩ Z_2(P)`, if any.
    pub witness: Option<u32>,
    /// Whether `Ω_1(Z(P)) <= [F, N_P(F)]`.
    pub contains_omega_center: bool,
}

/// Result of [`lemma56_condition`].
#[derive(Debug, Clone)]
pub struct CenterRoute {
    pub holds: bool,
    pub certificates: Vec<FCertificate>,
}

/// For `P` nonabelian with cyclic center: whether
/// `[F, N_P(F)] ∩ Z_2(P) ≠ 1` for every non-central weakly closed
/// elementary abelian `F`.
pub fn lemma56_condition(g: &FiniteGroup, budget: usize) -> Result<CenterRoute> {
    if g.is_abelian() {
        return Err(Error::NotApplicable("group is abelian".into()));
    }
    let z = g.center();
    if g.omega1(&z).order() != g.prime() as usize {
        return Err(Error::NotApplicable("center is not cyclic".into()));
    }
    let z2 = g.upper_central_series()[2].clone();
    let oz = g.omega1(&z);
    let mut certificates = Vec::new();
    for f in all_elementary_abelians(g, 1, budget)? {
        if f.is_subgroup_of(&z) {
            continue;
        }
        if is_weakly_closed(g, &f, budget)? != WeakClosure::WeaklyClosed {
            continue;
        }
        let comm = g.commutator_subgroup(&f, &g.normalizer(&f));
        let meet = g.intersection(&comm, &z2);
        let witness = meet.members().iter().copied().find(|&x| x != 0);
        certificates.push(FCertificate { f, witness, contains_omega_center: oz.is_subgroup_of(&comm) });
    }
    let holds = certificates.iter().all(|c| c.witness.is_some());
    Ok(CenterRoute { holds, certificates })
}

fn perm_mul(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn perm_is_identity(a: &[u16]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x as usize)
}

/// Whether the permutations generate an elementary abelian p-group.
pub fn perms_elementary_abelian(gens: &[Vec<u16>], p: u32) -> bool {
    let commute = gens.iter().all(|a| gens.iter().all(|b| perm_mul(a, b) == perm_mul(b, a)));
    let order_p = gens.iter().all(|a| {
        let mut x = a.clone();
        for _ in 1..p {
            x = perm_mul(&x, a);
        }
        perm_is_identity(&x)
    });
    commute && order_p
}

/// How a structural Thompson subgroup was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JRoute {
    /// Computed on an enumerated group.
    Direct,
    /// Product of the factors' Thompson subgroups.
    Product,
    /// Base copy `J(P)^p` for odd p with `J(P)` elementary abelian.
    WreathBase,
}

/// Thompson subgroup of a structure tree, as permutations together with
/// words in the tree's generators.
#[derive(Debug, Clone)]
pub struct StructuralJ {
    pub generators: Vec<Vec<u16>>,
    pub words: Vec<Vec<usize>>,
    pub routes: Vec<JRoute>,
}

/// `J` for a permutation group given by its assembly tree, using
/// `J(A × B) = J(A) × J(B)` and, for odd `p` with `J(P)` elementary abelian,
/// `J(P ≀ C_p) = J(P)^p`. Nodes where neither rule applies are enumerated
/// within `cap`.
pub fn structural_thompson(s: &Structure, p: u32, cap: usize, budget: usize) -> Result<StructuralJ> {
    let direct = |s: &Structure| -> Result<StructuralJ> {
        let g = realize(p, s.clone(), cap)?;
        let j = thompson_subgroup(&g, budget)?;
        let n = s.degree();
        Ok(StructuralJ {
            generators: j.generators().iter().map(|&x| g.raw(x)[..n].to_vec()).collect(),
            words: j.generators().iter().map(|&x| g.word(x)).collect(),
            routes: vec![JRoute::Direct],
        })
    };
    match s {
        Structure::Leaf { .. } => direct(s),
        Structure::Direct { factors } => {
            let degree = s.degree();
            let mut out = StructuralJ { generators: Vec::new(), words: Vec::new(), routes: vec![JRoute::Product] };
            let mut offset = 0;
            let mut gen_offset = 0;
            for f in factors {
                let fj = structural_thompson(f, p, cap, budget)?;
                out.generators.extend(fj.generators.iter().map(|g| shift_perm(g, offset, degree)));
                out.words.extend(fj.words.iter().map(|w| w.iter().map(|&i| i + gen_offset).collect()));
                out.routes.extend(fj.routes);
                offset += f.degree();
                gen_offset += f.generator_count();
            }
            Ok(out)
        }
        Structure::Wreath { inner, p: wp } => {
            if *wp == 2 {
                return direct(s);
            }
            let ij = structural_thompson(inner, p, cap, budget)?;
            if ij.generators.is_empty() || !perms_elementary_abelian(&ij.generators, p) {
                return direct(s);
            }
            let n = inner.degree();
            let degree = s.degree();
            let top = inner.generator_count();
            let mut out = StructuralJ { generators: Vec::new(), words: Vec::new(), routes: vec![JRoute::WreathBase] };
            for b in 0..*wp as usize {
                out.generators.extend(ij.generators.iter().map(|g| shift_perm(g, b * n, degree)));
                // t^-b w t^b moves block 0 onto block b
                for w in &ij.words {
                    let mut word = vec![top; b * (*wp as usize - 1)];
                    word.extend(w);
                    word.extend(std::iter::repeat(top).take(b));
                    out.words.push(word);
                }
            }
            out.routes.extend(ij.routes);
            Ok(out)
        }
    }
}

/// Evaluates a word in permutation generators.
pub fn evaluate_perm_word(gens: &[Vec<u16>], degree: usize, word: &[usize]) -> Result<Vec<u16>> {
    let mut x: Vec<u16> = (0..degree as u16).collect();
    for &s in word {
        let g = gens.get(s).ok_or_else(|| Error::Input(format!("generator index {s} out of range")))?;
        x = perm_mul(&x, g);
    }
    Ok(x)
}

/// Checks, without enumerating the ambient group, that `sub` generates an
/// abelian subgroup normalized by every permutation in `ambient`.
pub fn perm_abelian_normal(p: u32, degree: usize, ambient: &[Vec<u16>], sub: &[Vec<u16>], cap: usize) -> Result<(bool, bool)> {
    let h = FiniteGroup::from_raw(p, Realization::Perm { degree: degree.max(1) }, sub.to_vec(), cap, None)?;
    let abelian = h.is_abelian();
    let inverse = |g: &[u16]| {
        let mut out = vec![0u16; g.len()];
        for (i, &x) in g.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        out
    };
    let normal = ambient.iter().all(|s| {
        let si = inverse(s);
        sub.iter().all(|j| h.index_of_raw(&perm_mul(&perm_mul(&si, j), s)).is_some())
    });
    Ok((abelian, normal))
}
