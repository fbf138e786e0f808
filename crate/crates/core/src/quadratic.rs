//! Quadratic elements and subgroups, the relation `g ⊥ h`, offenders and
//! j-values, deepest commutators and the late/last classification.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::elemab::{all_elementary_abelians, is_weakly_closed, WeakClosure};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::span_dim;
use crate::rep::Representation;
use crate::subgroup::Subgroup;

/// `g ⊥ h`: the elements commute and `(g − 1)(h − 1)` acts as zero.
pub fn is_orthogonal(g: &FiniteGroup, v: &Representation, a: u32, b: u32) -> bool {
    g.commutes(a, b) && v.product_vanishes(a, b)
}

/// `a^⊥ = {h : a ⊥ h}`, checked to be a subgroup.
pub fn perp_subgroup(g: &FiniteGroup, v: &Representation, a: u32) -> Result<Subgroup> {
    let members = g.elements().filter(|&h| is_orthogonal(g, v, a, h));
    g.checked_subgroup(members).ok_or_else(|| Error::Inconsistent("perp set is not a subgroup".into()))
}

/// Whether the unipotency degree of `a` is at most `p − 1`.
pub fn ghl_bound(v: &Representation, a: u32) -> bool {
    v.unipotency_degree(a) < v.prime() as usize
}

/// All quadratic elements, in index order.
pub fn quadratic_elements(g: &FiniteGroup, v: &Representation) -> Vec<u32> {
    g.elements().filter(|&x| v.is_quadratic(x)).collect()
}

/// `[V, E, E] = 0` for an elementary abelian `E ≠ 1`, tested on generators.
pub fn is_quadratic_on(g: &FiniteGroup, v: &Representation, e: &Subgroup) -> bool {
    let gens = e.generators();
    !e.is_trivial() && gens.iter().all(|&a| gens.iter().all(|&b| is_orthogonal(g, v, a, b)))
}

/// The three equivalent descriptions of a quadratic subgroup, evaluated
/// separately: all nontrivial elements quadratic, all pairs orthogonal,
/// all generator pairs orthogonal.
pub fn quadratic_criteria(g: &FiniteGroup, v: &Representation, e: &Subgroup) -> Result<[bool; 3]> {
    if g.prime() == 2 {
        return Err(Error::OddPrimeRequired);
    }
    if !g.is_elementary_abelian(e) {
        return Err(Error::InvalidParameter("subgroup is not elementary abelian".into()));
    }
    let all_quadratic = e.members().iter().skip(1).all(|&x| v.is_quadratic(x));
    let pairwise = e.members().iter().all(|&a| e.members().iter().all(|&b| is_orthogonal(g, v, a, b)));
    let gens = e.generators().iter().all(|&a| e.generators().iter().all(|&b| is_orthogonal(g, v, a, b)));
    Ok([all_quadratic, pairwise, gens])
}

/// Quadratic subgroup test for odd p; disagreement among the criteria is
/// reported as an inconsistency.
pub fn is_quadratic_subgroup(g: &FiniteGroup, v: &Representation, e: &Subgroup) -> Result<bool> {
    let c = quadratic_criteria(g, v, e)?;
    if c[0] != c[1] || c[1] != c[2] {
        return Err(Error::Inconsistent(format!("quadratic criteria disagree: {c:?}")));
    }
    Ok(c[0])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub subgroup: Subgroup,
    /// `e` with `j_E(V) = p^e`.
    pub exponent: i64,
}

/// Every offender: `1 ≠ E` elementary abelian with `j_E(V) >= 1`.
pub fn offenders(g: &FiniteGroup, v: &Representation, budget: usize) -> Result<Vec<Offender>> {
    v.require_faithful()?;
    Ok(all_elementary_abelians(g, 1, budget)?
        .into_iter()
        .map(|e| Offender { exponent: v.j_exponent(&e), subgroup: e })
        .filter(|o| o.exponent >= 0)
        .collect())
}

/// The offenders attaining the largest exponent `e_0`.
#[derive(Debug, Clone)]
pub struct BestOffenders {
    pub exponent: i64,
    pub offenders: Vec<Offender>,
}

pub fn best_offenders(g: &FiniteGroup, v: &Representation, budget: usize) -> Result<Option<BestOffenders>> {
    let all = offenders(g, v, budget)?;
    let Some(e0) = all.iter().map(|o| o.exponent).max() else {
        return Ok(None);
    };
    let offenders = all.into_iter().filter(|o| o.exponent == e0).collect();
    Ok(Some(BestOffenders { exponent: e0, offenders }))
}

pub fn is_f_module(g: &FiniteGroup, v: &Representation, budget: usize) -> Result<bool> {
    Ok(!offenders(g, v, budget)?.is_empty())
}

/// Exponents in `j_{HK} j_{H∩K} >= j_H j_K` and the subspace criterion for
/// equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfsOutcome {
    pub e_product: i64,
    pub e_meet: i64,
    pub e_h: i64,
    pub e_k: i64,
    /// `C_V(H ∩ K) = C_V(H) + C_V(K)`.
    pub sum_matches: bool,
}

impl MfsOutcome {
    pub fn inequality(&self) -> bool {
        self.e_product + self.e_meet >= self.e_h + self.e_k
    }
    pub fn equality(&self) -> bool {
        self.e_product + self.e_meet == self.e_h + self.e_k
    }
    /// Inequality holds and equality happens exactly when the subspaces match.
    pub fn holds(&self) -> bool {
        self.inequality() && self.equality() == self.sum_matches
    }
}

pub fn mfs_check(g: &FiniteGroup, v: &Representation, h: &Subgroup, k: &Subgroup) -> Result<MfsOutcome> {
    let join = g.join(h, k);
    let meet = g.intersection(h, k);
    if join.order() * meet.order() != h.order() * k.order() {
        return Err(Error::NotApplicable("HK is not a subgroup".into()));
    }
    let mut sum = v.fixed_subspace(h);
    sum.extend(v.fixed_subspace(k));
    let sum_matches = span_dim(v.prime(), v.dim(), &sum) == v.fixed_dim(&meet);
    Ok(MfsOutcome {
        e_product: v.j_exponent(&join),
        e_meet: v.j_exponent(&meet),
        e_h: v.j_exponent(h),
        e_k: v.j_exponent(k),
        sum_matches,
    })
}

/// Result of the search for a weakly closed quadratic offender attaining `e_0`.
#[derive(Debug, Clone)]
pub struct OffenderSearch {
    pub exponent: i64,
    pub witness: Option<Subgroup>,
    /// Normal closure of the given offender, when one was supplied.
    pub within: Option<Subgroup>,
}

/// Exhaustive search over offenders with exponent `e_0` for one that is
/// quadratic and weakly closed, optionally inside the normal closure of `d`.
pub fn prop46_search(g: &FiniteGroup, v: &Representation, d: Option<&Subgroup>, budget: usize) -> Result<OffenderSearch> {
    let Some(best) = best_offenders(g, v, budget)? else {
        return Err(Error::NotApplicable("module is not an F-module".into()));
    };
    let within = match d {
        Some(d) => {
            if !g.is_elementary_abelian(d) || d.is_trivial() || v.j_exponent(d) != best.exponent {
                return Err(Error::InvalidParameter("D must be an offender attaining e_0".into()));
            }
            Some(g.normal_closure(d))
        }
        None => None,
    };
    for o in &best.offenders {
        if within.as_ref().is_some_and(|w| !o.subgroup.is_subgroup_of(w)) {
            continue;
        }
        if !is_quadratic_on(g, v, &o.subgroup) {
            continue;
        }
        if is_weakly_closed(g, &o.subgroup, budget)? == WeakClosure::WeaklyClosed {
            return Ok(OffenderSearch { exponent: best.exponent, witness: Some(o.subgroup.clone()), within });
        }
    }
    Ok(OffenderSearch { exponent: best.exponent, witness: None, within })
}

/// `r_0` of `x` computed inside the subgroup `L` (with `K_1(L) = L`).
pub fn r0_in(g: &FiniteGroup, l: &Subgroup, x: u32) -> Result<usize> {
    let series = g.lower_central_series_of(l);
    r0_from_series(g, &series, x)
}

fn r0_from_series(g: &FiniteGroup, series: &[Subgroup], x: u32) -> Result<usize> {
    series
        .iter()
        .rposition(|k| k.generators().iter().any(|&y| !g.commutes(x, y)))
        .map(|i| i + 1)
        .ok_or(Error::NoDeepest)
}

pub fn r0(g: &FiniteGroup, x: u32) -> Result<usize> {
    r0_from_series(g, &g.lower_central_series(), x)
}

fn deepest_from_series(g: &FiniteGroup, series: &[Subgroup], x: u32) -> Result<Vec<u32>> {
    let r = r0_from_series(g, series, x)?;
    let mut out: Vec<u32> = series[r - 1].members().iter().map(|&k| g.commutator(x, k)).filter(|&y| y != 0).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Deepest commutators `[x, k] ≠ 1` with `k ∈ K_{r_0}(G)`.
pub fn deepest_commutators(g: &FiniteGroup, x: u32) -> Result<Vec<u32>> {
    deepest_from_series(g, &g.lower_central_series(), x)
}

/// Deepest commutators of `x` inside the subgroup `L` containing it.
pub fn deepest_commutators_in(g: &FiniteGroup, l: &Subgroup, x: u32) -> Result<Vec<u32>> {
    deepest_from_series(g, &g.lower_central_series_of(l), x)
}

/// `L = C_G(x) N`, the group in which `(G, N)`-locally deepest commutators live.
pub fn local_group(g: &FiniteGroup, x: u32, n: &Subgroup) -> Result<Subgroup> {
    let c = g.centralizer_of_element(x);
    if n.is_subgroup_of(&c) {
        return Err(Error::NoDeepest);
    }
    g.product_subgroup(&c, n)
}

/// The `(G, N)`-locally deepest commutators of `x`.
pub fn locally_deepest(g: &FiniteGroup, x: u32, n: &Subgroup) -> Result<Vec<u32>> {
    let l = local_group(g, x, n)?;
    deepest_commutators_in(g, &l, x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticClass {
    pub element: u32,
    pub late: bool,
    pub last: bool,
}

/// Late/last flags for every quadratic element, in index order.
#[derive(Debug, Clone)]
pub struct QuadReport {
    pub quadratics: Vec<QuadraticClass>,
}

impl QuadReport {
    pub fn late(&self) -> impl Iterator<Item = u32> + '_ {
        self.quadratics.iter().filter(|c| c.late).map(|c| c.element)
    }
    pub fn last(&self) -> impl Iterator<Item = u32> + '_ {
        self.quadratics.iter().filter(|c| c.last).map(|c| c.element)
    }
}

/// Whether every locally deepest commutator of `x` is non-quadratic, over
/// all normal subgroups `N` not centralizing `x`.
pub fn is_late(g: &FiniteGroup, v: &Representation, x: u32, normals: &[Subgroup]) -> Result<bool> {
    let c = g.centralizer_of_element(x);
    let mut seen: HashMap<Vec<u32>, bool> = HashMap::new();
    for n in normals {
        if n.is_subgroup_of(&c) {
            continue;
        }
        let l = g.product_subgroup(&c, n)?;
        if let Some(&ok) = seen.get(l.members()) {
            if !ok {
                return Ok(false);
            }
            continue;
        }
        let ok = deepest_commutators_in(g, &l, x)?.iter().all(|&y| !v.is_quadratic(y));
        seen.insert(l.members().to_vec(), ok);
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All iterated commutators `[x, h_1, ..., h_r]`, `r >= 1`, or the first
/// quadratic one met. The set explored is bounded by `budget`.
fn iterated_commutator_closure(g: &FiniteGroup, v: &Representation, x: u32, budget: usize) -> Result<Option<u32>> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut frontier = vec![x];
    let mut count = 0usize;
    while let Some(s) = frontier.pop() {
        for h in g.elements() {
            let c = g.commutator(s, h);
            if seen.contains(c as usize) {
                continue;
            }
            seen.insert(c as usize);
            if v.is_quadratic(c) {
                return Ok(Some(c));
            }
            count += 1;
            if count > budget {
                return Err(Error::ScanBudgetExceeded(budget));
            }
            frontier.push(c);
        }
    }
    Ok(None)
}

/// Whether no iterated commutator of `x` is quadratic.
pub fn is_last(g: &FiniteGroup, v: &Representation, x: u32, budget: usize) -> Result<bool> {
    Ok(iterated_commutator_closure(g, v, x, budget)?.is_none())
}

pub fn classify_quadratics(g: &FiniteGroup, v: &Representation, subgroup_cap: usize, budget: usize) -> Result<QuadReport> {
    v.require_faithful()?;
    let normals = g.normal_subgroups(subgroup_cap)?;
    let mut quadratics = Vec::new();
    for x in quadratic_elements(g, v) {
        let late = is_late(g, v, x, &normals)?;
        let last = is_last(g, v, x, budget)?;
        if last && !late {
            return Err(Error::Inconsistent(format!("element {x} is last but not late")));
        }
        quadratics.push(QuadraticClass { element: x, late, last });
    }
    Ok(QuadReport { quadratics })
}

/// `t_0`, the deepest lower central term containing a quadratic element,
/// with the first such element.
pub fn deepest_quadratic_layer(g: &FiniteGroup, v: &Representation) -> Option<(usize, u32)> {
    let series = g.lower_central_series();
    series
        .iter()
        .enumerate()
        .rev()
        .find_map(|(i, k)| k.members().iter().copied().find(|&x| v.is_quadratic(x)).map(|x| (i + 1, x)))
}

/// Whether `G' ∩ Ω_1(G)` is abelian (odd p).
pub fn prop91_premise(g: &FiniteGroup) -> Result<bool> {
    if g.prime() == 2 {
        return Err(Error::OddPrimeRequired);
    }
    let meet = g.intersection(&g.derived_subgroup(), &g.omega1(&g.whole()));
    Ok(g.subgroup_is_abelian(&meet))
}
