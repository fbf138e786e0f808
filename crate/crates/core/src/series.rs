//! The k-series engine: chains `1 = Y_0 <= ... <= Y_n` of normal subgroups
//! with `[Ω_1(C_S(Y_{i-1})), Y_i; k] = 1`, the largest normal subgroups
//! admitting one (`𝒴` for k = 2, `𝔛` for k = p − 1) and the checks built on
//! them.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::elemab::abelian_normal_span;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// A verified k-series ending in `chain.last()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSeriesCertificate {
    pub k: usize,
    pub chain: Vec<Subgroup>,
}

/// Why a chain is not a k-series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainFailure {
    DoesNotStartAtOne,
    NotAscending(usize),
    NotNormal(usize),
    /// `[Ω_1(C_S(Y_{i-1})), Y_i; k] ≠ 1` at step `i`.
    Commutator(usize),
}

/// The single step test `[Ω_1(C_S(M)), N; k] = 1`.
pub fn k_step_holds(s: &FiniteGroup, m: &Subgroup, n: &Subgroup, k: usize) -> bool {
    let w = s.omega1(&s.centralizer(m));
    s.iterated_commutator_vanishes(&w, n, k)
}

/// Checks a chain stepwise, reporting the first failing step.
pub fn is_k_chain(s: &FiniteGroup, chain: &[Subgroup], k: usize) -> std::result::Result<(), ChainFailure> {
    if chain.first().map_or(true, |c| !c.is_trivial()) {
        return Err(ChainFailure::DoesNotStartAtOne);
    }
    for i in 1..chain.len() {
        if !chain[i - 1].is_subgroup_of(&chain[i]) {
            return Err(ChainFailure::NotAscending(i));
        }
        if !s.is_normal(&chain[i]) {
            return Err(ChainFailure::NotNormal(i));
        }
        if !k_step_holds(s, &chain[i - 1], &chain[i], k) {
            return Err(ChainFailure::Commutator(i));
        }
    }
    Ok(())
}

/// The normal subgroups admitting a k-series, with one chain for each.
#[derive(Debug, Clone)]
pub struct AdmittingSet {
    pub k: usize,
    pub normals: Arc<Vec<Subgroup>>,
    /// `member[i]` iff `normals[i]` admits a k-series.
    pub member: Vec<bool>,
    /// Previous term of the recorded chain ending at `normals[i]`.
    pub pred: Vec<Option<usize>>,
}

impl AdmittingSet {
    pub fn members(&self) -> impl Iterator<Item = &Subgroup> {
        self.normals.iter().zip(&self.member).filter(|(_, &m)| m).map(|(n, _)| n)
    }

    /// Index of the largest member; checks that it contains all others.
    pub fn maximal_index(&self) -> Result<usize> {
        let top = (0..self.normals.len()).filter(|&i| self.member[i]).max_by_key(|&i| (self.normals[i].order(), std::cmp::Reverse(i))).unwrap();
        if self.members().all(|m| m.is_subgroup_of(&self.normals[top])) {
            Ok(top)
        } else {
            Err(Error::Inconsistent("admitting normal subgroups have no largest member".into()))
        }
    }

    pub fn certificate(&self, i: usize) -> KSeriesCertificate {
        let mut chain = vec![self.normals[i].clone()];
        let mut cur = i;
        while let Some(prev) = self.pred[cur] {
            chain.push(self.normals[prev].clone());
            cur = prev;
        }
        chain.reverse();
        KSeriesCertificate { k: self.k, chain }
    }
}

/// Fixed point over the normal lattice: start from `{1}` and add `N` whenever
/// some member `M <= N` has `[Ω_1(C_S(M)), N; k] = 1`.
pub fn admitting_set(s: &FiniteGroup, k: usize, subgroup_cap: usize) -> Result<AdmittingSet> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let normals = s.normal_subgroups(subgroup_cap)?;
    let n = normals.len();
    let mut member = vec![false; n];
    let mut pred = vec![None; n];
    member[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(m) = queue.pop_front() {
        let w = s.omega1(&s.centralizer(&normals[m]));
        for i in 0..n {
            if member[i] || !normals[m].is_subgroup_of(&normals[i]) {
                continue;
            }
            if s.iterated_commutator_vanishes(&w, &normals[i], k) {
                member[i] = true;
                pred[i] = Some(m);
                queue.push_back(i);
            }
        }
    }
    Ok(AdmittingSet { k, normals, member, pred })
}

/// How a `𝒴` or `𝔛` value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSource {
    Lattice,
    /// p = 2 shortcut `𝒴(S) = S`, lattice too large to cross-check.
    Shortcut,
    /// p = 2 shortcut confirmed by the lattice computation.
    ShortcutConfirmed,
}

#[derive(Debug, Clone)]
pub struct SeriesSubgroup {
    pub subgroup: Subgroup,
    pub certificate: Option<KSeriesCertificate>,
    pub source: SeriesSource,
}

fn largest_admitting(s: &FiniteGroup, k: usize, subgroup_cap: usize) -> Result<SeriesSubgroup> {
    let set = admitting_set(s, k, subgroup_cap)?;
    let top = set.maximal_index()?;
    Ok(SeriesSubgroup { subgroup: set.normals[top].clone(), certificate: Some(set.certificate(top)), source: SeriesSource::Lattice })
}

/// `𝒴(S)`, the largest normal subgroup admitting a Y-series (k = 2).
pub fn y_subgroup(s: &FiniteGroup, subgroup_cap: usize) -> Result<SeriesSubgroup> {
    if s.prime() != 2 {
        return largest_admitting(s, 2, subgroup_cap);
    }
    match largest_admitting(s, 2, subgroup_cap) {
        Ok(r) if r.subgroup.order() == s.order() => Ok(SeriesSubgroup { source: SeriesSource::ShortcutConfirmed, ..r }),
        Ok(_) => Err(Error::Inconsistent("Y(S) is proper in a 2-group".into())),
        Err(Error::CapExceeded(_)) => {
            Ok(SeriesSubgroup { subgroup: s.whole(), certificate: None, source: SeriesSource::Shortcut })
        }
        Err(e) => Err(e),
    }
}

/// `𝔛(S)`, realized as the k = p − 1 series (k = 1 when p = 2).
pub fn x_subgroup(s: &FiniteGroup, subgroup_cap: usize) -> Result<SeriesSubgroup> {
    largest_admitting(s, (s.prime() as usize - 1).max(1), subgroup_cap)
}

/// Evaluation of the three conditions of the abelian-normal criterion.
#[derive(Debug, Clone)]
pub struct Thm19 {
    /// `G` is generated by its abelian normal subgroups.
    pub abelian_normal_generated: bool,
    /// `𝒴(G) = G`.
    pub y_is_whole: bool,
    /// `Ω_1(Z(𝒴(G))) = Ω_1(Z(G))`.
    pub omega_centers_agree: bool,
    pub y: SeriesSubgroup,
}

/// Evaluates conditions (1), (2), (3) and checks (1) ⇒ (2) ⇒ (3).
pub fn thm19_conditions(g: &FiniteGroup, subgroup_cap: usize) -> Result<Thm19> {
    let span = abelian_normal_span(g, subgroup_cap)?;
    let y = y_subgroup(g, subgroup_cap)?;
    let c1 = span.order() == g.order();
    let c2 = y.subgroup.order() == g.order();
    let zy = g.center_of(&y.subgroup);
    let c3 = g.omega1(&zy) == g.omega1(&g.center());
    if (c1 && !c2) || (c2 && !c3) {
        return Err(Error::Inconsistent(format!("implication chain broken: ({c1}, {c2}, {c3})")));
    }
    Ok(Thm19 { abelian_normal_generated: c1, y_is_whole: c2, omega_centers_agree: c3, y })
}
