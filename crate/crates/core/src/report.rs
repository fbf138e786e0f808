//! Structured check results. Witnesses are stored as words in the group
//! generators so that they can be re-verified from the serialized form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::Structure;
use crate::elemab::{evaluate_perm_word, is_weakly_closed, perm_abelian_normal, WeakClosure};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::quadratic::is_quadratic_on;
use crate::rep::Representation;
use crate::series::is_k_chain;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Violation,
    NotApplicable,
    Inconclusive,
    Error,
}

/// Generator indices whose product, left to right, is the element.
pub type Word = Vec<usize>;

/// A re-checkable statement about a group (and module, where needed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    /// The element is quadratic on the module.
    Quadratic { element: Word },
    /// A nontrivial element of `Ω_1(Z(G))` that is quadratic.
    CentralQuadratic { element: Word },
    /// A nontrivial element of `Ω_1(Z(G))` with unipotency degree `<= p − 1`.
    CentralBounded { element: Word, degree: usize },
    /// An elementary abelian `E ≠ 1` with `j_E(V) = p^exponent >= 1`.
    Offender { generators: Vec<Word>, exponent: i64 },
    /// An elementary abelian `E ≠ 1`, quadratic and weakly closed.
    WeaklyClosedQuadratic { generators: Vec<Word> },
    /// A k-series of normal subgroups, each given by generators.
    KSeries { k: usize, chain: Vec<Vec<Word>> },
    /// `<sub> <= <sup>`.
    Contained { sub: Vec<Word>, sup: Vec<Word> },
    /// `<generators>` is abelian and normal.
    AbelianNormal { generators: Vec<Word> },
    /// A nontrivial element of `[F, N_G(F)] ∩ Z_2(G)`.
    CommutatorInZ2 { f: Vec<Word>, element: Word },
    /// `<generators>` is a proper subgroup.
    Proper { generators: Vec<Word> },
}

impl Claim {
    pub fn needs_module(&self) -> bool {
        matches!(
            self,
            Claim::Quadratic { .. }
                | Claim::CentralQuadratic { .. }
                | Claim::CentralBounded { .. }
                | Claim::Offender { .. }
                | Claim::WeaklyClosedQuadratic { .. }
        )
    }
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Claim>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(check: &str, verdict: Verdict, detail: impl Into<String>) -> Report {
        Report { check: check.to_string(), verdict, detail: detail.into(), witnesses: Vec::new(), data: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Report {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("report data serializes"));
        self
    }

    pub fn witness(mut self, claim: Claim) -> Report {
        self.witnesses.push(claim);
        self
    }
}

pub fn word(g: &FiniteGroup, x: u32) -> Word {
    g.word(x)
}

/// Generator words of a subgroup.
pub fn words(g: &FiniteGroup, s: &Subgroup) -> Vec<Word> {
    s.generators().iter().map(|&x| g.word(x)).collect()
}

fn element(g: &FiniteGroup, w: &[usize]) -> Result<u32> {
    g.evaluate_word(w)
}

fn subgroup(g: &FiniteGroup, ws: &[Word]) -> Result<Subgroup> {
    let xs = ws.iter().map(|w| element(g, w)).collect::<Result<Vec<_>>>()?;
    Ok(g.closure(&xs))
}

fn module(v: Option<&Representation>) -> Result<&Representation> {
    v.ok_or_else(|| Error::Input("claim needs a module".into()))
}

fn central_omega(g: &FiniteGroup, x: u32) -> bool {
    x != 0 && g.center().contains(x) && g.order_exponent(x) == 1
}

/// Recomputes a claim on an enumerated group.
pub fn verify_claim(g: &FiniteGroup, v: Option<&Representation>, claim: &Claim, budget: usize) -> Result<bool> {
    Ok(match claim {
        Claim::Quadratic { element: w } => module(v)?.is_quadratic(element(g, w)?),
        Claim::CentralQuadratic { element: w } => {
            let x = element(g, w)?;
            central_omega(g, x) && module(v)?.is_quadratic(x)
        }
        Claim::CentralBounded { element: w, degree } => {
            let v = module(v)?;
            let x = element(g, w)?;
            let d = v.unipotency_degree(x);
            central_omega(g, x) && d == *degree && d < v.prime() as usize
        }
        Claim::Offender { generators, exponent } => {
            let e = subgroup(g, generators)?;
            let v = module(v)?;
            !e.is_trivial() && g.is_elementary_abelian(&e) && v.j_exponent(&e) == *exponent && *exponent >= 0
        }
        Claim::WeaklyClosedQuadratic { generators } => {
            let e = subgroup(g, generators)?;
            g.is_elementary_abelian(&e)
                && is_quadratic_on(g, module(v)?, &e)
                && is_weakly_closed(g, &e, budget)? == WeakClosure::WeaklyClosed
        }
        Claim::KSeries { k, chain } => {
            let terms = chain.iter().map(|ws| subgroup(g, ws)).collect::<Result<Vec<_>>>()?;
            is_k_chain(g, &terms, *k).is_ok()
        }
        Claim::Contained { sub, sup } => subgroup(g, sub)?.is_subgroup_of(&subgroup(g, sup)?),
        Claim::AbelianNormal { generators } => {
            let a = subgroup(g, generators)?;
            g.subgroup_is_abelian(&a) && g.is_normal(&a)
        }
        Claim::CommutatorInZ2 { f, element: w } => {
            let f = subgroup(g, f)?;
            let x = element(g, w)?;
            let comm = g.commutator_subgroup(&f, &g.normalizer(&f));
            x != 0 && comm.contains(x) && g.upper_central_series().get(2).is_some_and(|z2| z2.contains(x))
        }
        Claim::Proper { generators } => subgroup(g, generators)?.order() < g.order(),
    })
}

/// Recomputes an abelian-normal claim on a permutation group given by its
/// structure, without enumerating the group.
pub fn verify_structural_claim(s: &Structure, p: u32, claim: &Claim, cap: usize) -> Result<bool> {
    match claim {
        Claim::AbelianNormal { generators } => {
            let ambient = s.generators();
            let sub = generators
                .iter()
                .map(|w| evaluate_perm_word(&ambient, s.degree(), w))
                .collect::<Result<Vec<_>>>()?;
            let (abelian, normal) = perm_abelian_normal(p, s.degree(), &ambient, &sub, cap)?;
            Ok(abelian && normal)
        }
        _ => Err(Error::Input("only abelian-normal claims can be verified without enumeration".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::unitriangular;
    use crate::elemab::DEFAULT_SCAN_BUDGET as BUDGET;
    use crate::group::DEFAULT_ELEMENT_CAP as CAP;

    #[test]
    fn report_round_trip() {
        let r = Report::new("y2", Verdict::NotApplicable, "no offender")
            .with("e0", Value::Null)
            .witness(Claim::Quadratic { element: vec![0, 1] });
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"verdict\":\"NOT_APPLICABLE\""));
        assert!(s.contains("\"claim\":\"quadratic\""));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn claims_verify_and_refute() {
        let g = unitriangular(3, 3, CAP).unwrap();
        let v = Representation::natural(&g).unwrap();
        let z = g.center().generators()[0];
        let good = Claim::CentralQuadratic { element: word(&g, z) };
        assert!(verify_claim(&g, Some(&v), &good, BUDGET).unwrap());
        let x = g.generators()[0];
        let bad = Claim::CentralQuadratic { element: word(&g, x) };
        assert!(!verify_claim(&g, Some(&v), &bad, BUDGET).unwrap());
        assert!(verify_claim(&g, None, &good, BUDGET).is_err());
        let whole = g.whole();
        let c = Claim::Contained { sub: words(&g, &g.center()), sup: words(&g, &whole) };
        assert!(verify_claim(&g, None, &c, BUDGET).unwrap());
        let c = Claim::Proper { generators: words(&g, &whole) };
        assert!(!verify_claim(&g, None, &c, BUDGET).unwrap());
    }
}
