//! Checkers for the conjectures and lemmas, each producing a [`Report`].

use serde_json::json;

use crate::construct::Structure;
use crate::elemab::{
    all_elementary_abelians, is_weakly_closed, lemma56_condition, perm_abelian_normal, structural_thompson,
    thompson_subgroup, WeakClosure,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::quadratic::{
    best_offenders, classify_quadratics, deepest_quadratic_layer, ghl_bound, is_quadratic_on, prop91_premise,
    quadratic_elements, QuadReport,
};
use crate::rep::Representation;
use crate::report::{word, words, Claim, Report, Verdict};
use crate::series::{thm19_conditions, y_subgroup, SeriesSource};
use crate::subgroup::Subgroup;

/// Budgets shared by the checkers.
#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    pub element_cap: usize,
    pub subgroup_cap: usize,
    pub scan_budget: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            element_cap: crate::group::DEFAULT_ELEMENT_CAP,
            subgroup_cap: crate::subgroup::DEFAULT_SUBGROUP_CAP,
            scan_budget: crate::elemab::DEFAULT_SCAN_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Y1Mode {
    /// Compute `J(S)` and `𝒴(S)` and compare.
    Direct,
    /// Accept when `J(S)` is abelian and normal; otherwise inconclusive.
    Certificate,
}

fn source_name(s: SeriesSource) -> &'static str {
    match s {
        SeriesSource::Lattice => "lattice",
        SeriesSource::Shortcut => "shortcut",
        SeriesSource::ShortcutConfirmed => "shortcut_confirmed",
    }
}

/// `J(S) <= 𝒴(S)`.
pub fn check_y1(s: &FiniteGroup, mode: Y1Mode, b: Budgets) -> Result<Report> {
    let j = thompson_subgroup(s, b.scan_budget)?;
    match mode {
        Y1Mode::Direct => {
            let y = y_subgroup(s, b.subgroup_cap)?;
            let holds = j.is_subgroup_of(&y.subgroup);
            let verdict = if holds { Verdict::Holds } else { Verdict::Violation };
            let detail = if holds { "J(S) lies in Y(S)" } else { "J(S) is not contained in Y(S)" };
            let mut r = Report::new("y1", verdict, detail)
                .with("mode", "direct")
                .with("order", s.order())
                .with("j_order", j.order())
                .with("y_order", y.subgroup.order())
                .with("y_source", source_name(y.source));
            if let Some(cert) = &y.certificate {
                r = r.witness(Claim::KSeries { k: cert.k, chain: cert.chain.iter().map(|c| words(s, c)).collect() });
            }
            r = r.witness(Claim::Contained { sub: words(s, &j), sup: words(s, &y.subgroup) });
            if !holds {
                r = r.with("j_generators", words(s, &j)).with("y_generators", words(s, &y.subgroup));
            }
            Ok(r)
        }
        Y1Mode::Certificate => {
            let abelian = s.subgroup_is_abelian(&j);
            let normal = s.is_normal(&j);
            Ok(certificate_report(abelian, normal, words(s, &j), j.order() as u64, s.order() as u64))
        }
    }
}

fn certificate_report(abelian: bool, normal: bool, gens: Vec<Vec<usize>>, j_order: u64, order: u64) -> Report {
    let r = if abelian && normal {
        Report::new("y1", Verdict::Holds, "J(S) is abelian and normal, hence inside Y(S)")
            .witness(Claim::AbelianNormal { generators: gens })
    } else {
        Report::new("y1", Verdict::Inconclusive, "J(S) is not an abelian normal subgroup").with("j_generators", gens)
    };
    r.with("mode", "certificate").with("order", order).with("j_order", j_order).with("j_abelian", abelian).with("j_normal", normal)
}

/// Certificate-mode `J(S) <= 𝒴(S)` for a permutation group given by its
/// assembly tree, without enumerating the group.
pub fn check_y1_structural(st: &Structure, p: u32, b: Budgets) -> Result<Report> {
    let j = structural_thompson(st, p, b.element_cap, b.scan_budget)?;
    let ambient = st.generators();
    let (abelian, normal) = perm_abelian_normal(p, st.degree(), &ambient, &j.generators, b.element_cap)?;
    let j_log = if abelian {
        let h = FiniteGroup::from_raw(
            p,
            crate::group::Realization::Perm { degree: st.degree().max(1) },
            j.generators.clone(),
            b.element_cap,
            None,
        )?;
        Some(h.log_order())
    } else {
        None
    };
    let p64 = p as u64;
    let r = certificate_report(abelian, normal, j.words, j_log.map_or(0, |l| p64.pow(l)), p64.pow(st.log_order()));
    Ok(r.with("structural", true))
}

fn omega_center(g: &FiniteGroup) -> Subgroup {
    g.omega1(&g.center())
}

fn central_quadratic(g: &FiniteGroup, v: &Representation) -> Option<u32> {
    omega_center(g).members().iter().copied().find(|&x| v.is_quadratic(x))
}

fn offender_claim(g: &FiniteGroup, e: &Subgroup, exponent: i64) -> Claim {
    Claim::Offender { generators: words(g, e), exponent }
}

fn center_dump(g: &FiniteGroup, v: &Representation) -> serde_json::Value {
    let rows: Vec<_> = omega_center(g)
        .members()
        .iter()
        .skip(1)
        .map(|&z| json!({"element": word(g, z), "unipotency_degree": v.unipotency_degree(z)}))
        .collect();
    serde_json::Value::Array(rows)
}

/// If `V` is an F-module, some element of `Ω_1(Z(G))` is quadratic.
pub fn check_y2(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    v.require_faithful()?;
    if g.prime() == 2 {
        return Ok(match central_quadratic(g, v) {
            Some(z) => Report::new("y2", Verdict::Holds, "p = 2: every central involution is quadratic")
                .witness(Claim::CentralQuadratic { element: word(g, z) }),
            None => Report::new("y2", Verdict::NotApplicable, "trivial group"),
        });
    }
    let Some(best) = best_offenders(g, v, b.scan_budget)? else {
        return Ok(Report::new("y2", Verdict::NotApplicable, "module is not an F-module"));
    };
    let offender = &best.offenders[0];
    match central_quadratic(g, v) {
        Some(z) => {
            if !ghl_bound(v, z) {
                return Err(Error::Inconsistent("quadratic element exceeds the p - 1 bound".into()));
            }
            Ok(Report::new("y2", Verdict::Holds, "quadratic element in the center")
                .with("e0", best.exponent)
                .witness(offender_claim(g, &offender.subgroup, offender.exponent))
                .witness(Claim::CentralQuadratic { element: word(g, z) }))
        }
        None => {
            let dump: Vec<_> = best.offenders.iter().map(|o| json!({"generators": words(g, &o.subgroup), "exponent": o.exponent})).collect();
            Ok(Report::new("y2", Verdict::Violation, "F-module without central quadratic elements")
                .with("e0", best.exponent)
                .with("best_offenders", dump)
                .with("omega_center", center_dump(g, v))
                .witness(offender_claim(g, &offender.subgroup, offender.exponent)))
        }
    }
}

/// If `V` is an F-module, some `1 ≠ z ∈ Ω_1(Z(G))` has unipotency degree
/// at most `p − 1` (odd p).
pub fn check_ghl(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    v.require_faithful()?;
    if g.prime() == 2 {
        return Ok(Report::new("ghl", Verdict::NotApplicable, "stated for odd primes"));
    }
    let Some(best) = best_offenders(g, v, b.scan_budget)? else {
        return Ok(Report::new("ghl", Verdict::NotApplicable, "module is not an F-module"));
    };
    let oz = omega_center(g);
    let found = oz.members().iter().copied().skip(1).map(|z| (z, v.unipotency_degree(z))).min_by_key(|&(_, d)| d);
    let offender = &best.offenders[0];
    Ok(match found {
        Some((z, d)) if d < g.prime() as usize => Report::new("ghl", Verdict::Holds, "central element within the bound")
            .with("e0", best.exponent)
            .witness(offender_claim(g, &offender.subgroup, offender.exponent))
            .witness(Claim::CentralBounded { element: word(g, z), degree: d }),
        _ => Report::new("ghl", Verdict::Violation, "no central element within the bound")
            .with("e0", best.exponent)
            .with("omega_center", center_dump(g, v))
            .witness(offender_claim(g, &offender.subgroup, offender.exponent)),
    })
}

fn weakly_closed_quadratics(g: &FiniteGroup, v: &Representation, budget: usize) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for e in all_elementary_abelians(g, 1, budget)? {
        if is_quadratic_on(g, v, &e) && is_weakly_closed(g, &e, budget)? == WeakClosure::WeaklyClosed {
            out.push(e);
        }
    }
    Ok(out)
}

/// If a weakly closed quadratic `E ≠ 1` exists, `Ω_1(Z(G))` has a quadratic
/// element.
pub fn check_weak_closure(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    v.require_faithful()?;
    let found = weakly_closed_quadratics(g, v, b.scan_budget)?;
    let Some(e) = found.first() else {
        return Ok(Report::new("wc", Verdict::NotApplicable, "no weakly closed quadratic subgroup"));
    };
    let premise = Claim::WeaklyClosedQuadratic { generators: words(g, e) };
    Ok(match central_quadratic(g, v) {
        Some(z) => Report::new("wc", Verdict::Holds, "quadratic element in the center")
            .with("weakly_closed_quadratics", found.len())
            .witness(premise)
            .witness(Claim::CentralQuadratic { element: word(g, z) }),
        None => Report::new("wc", Verdict::Violation, "weakly closed quadratic subgroup but no central quadratic")
            .with("omega_center", center_dump(g, v))
            .witness(premise),
    })
}

/// One instance of the inductive hypothesis for `G = H × P`: if a weakly
/// closed quadratic `E` with `E ≰ H × Z(P)` exists, then `1 × Ω_1(Z(P))` is
/// quadratic.
pub fn check_hypothesis(g: &FiniteGroup, h: &Subgroup, p: &Subgroup, v: &Representation, b: Budgets) -> Result<Report> {
    v.require_faithful()?;
    let internal_direct = g.is_normal(h)
        && g.is_normal(p)
        && g.intersection(h, p).is_trivial()
        && h.order() * p.order() == g.order()
        && g.commutator_subgroup(h, p).is_trivial();
    if !internal_direct {
        return Err(Error::InvalidParameter("G is not the direct product of H and P".into()));
    }
    if g.subgroup_is_abelian(p) {
        return Ok(Report::new("hyp52", Verdict::NotApplicable, "P is abelian"));
    }
    let zp = g.center_of(p);
    let oz = g.omega1(&zp);
    if oz.order() != g.prime() as usize {
        return Ok(Report::new("hyp52", Verdict::NotApplicable, "Z(P) is not cyclic"));
    }
    let hz = g.join(h, &zp);
    let candidates: Vec<Subgroup> =
        weakly_closed_quadratics(g, v, b.scan_budget)?.into_iter().filter(|e| !e.is_subgroup_of(&hz)).collect();
    let Some(e) = candidates.first() else {
        return Ok(Report::new("hyp52", Verdict::NotApplicable, "no weakly closed quadratic E outside H x Z(P)"));
    };
    let z = oz.generators()[0];
    let premise = Claim::WeaklyClosedQuadratic { generators: words(g, e) };
    Ok(if v.is_quadratic(z) {
        Report::new("hyp52", Verdict::Holds, "1 x Omega_1(Z(P)) is quadratic")
            .with("qualifying_subgroups", candidates.len())
            .witness(premise)
            .witness(Claim::Quadratic { element: word(g, z) })
    } else {
        Report::new("hyp52", Verdict::Violation, "1 x Omega_1(Z(P)) is not quadratic")
            .with("unipotency_degree", v.unipotency_degree(z))
            .with("z", word(g, z))
            .witness(premise)
    })
}

/// `[F, N_P(F)] ∩ Z_2(P) ≠ 1` for all non-central weakly closed `F`, with
/// the stronger `Ω_1(Z(P)) <= [F, N_P(F)]` recorded alongside.
pub fn check_lemma56(g: &FiniteGroup, b: Budgets) -> Result<Report> {
    let l = match lemma56_condition(g, b.scan_budget) {
        Ok(l) => l,
        Err(Error::NotApplicable(why)) => return Ok(Report::new("lemma56", Verdict::NotApplicable, why)),
        Err(e) => return Err(e),
    };
    let verdict = if l.holds { Verdict::Holds } else { Verdict::Violation };
    let omega_in_all = l.certificates.iter().all(|c| c.contains_omega_center);
    let mut r = Report::new("lemma56", verdict, format!("{} weakly closed non-central subgroups", l.certificates.len()))
        .with("subgroups", l.certificates.len())
        .with("omega_center_in_all_commutators", omega_in_all);
    for c in &l.certificates {
        match c.witness {
            Some(x) => r = r.witness(Claim::CommutatorInZ2 { f: words(g, &c.f), element: word(g, x) }),
            None => r = r.with("failing_f", words(g, &c.f)),
        }
    }
    Ok(r)
}

/// Evaluates the three abelian-normal conditions; a broken implication is a
/// violation.
pub fn check_thm19(g: &FiniteGroup, b: Budgets) -> Result<Report> {
    match thm19_conditions(g, b.subgroup_cap) {
        Ok(t) => Ok(Report::new("thm19", Verdict::Holds, "implications hold on this instance")
            .with("abelian_normal_generated", t.abelian_normal_generated)
            .with("y_is_whole", t.y_is_whole)
            .with("omega_centers_agree", t.omega_centers_agree)
            .with("y_order", t.y.subgroup.order())),
        Err(Error::Inconsistent(why)) => Ok(Report::new("thm19", Verdict::Violation, why)),
        Err(e) => Err(e),
    }
}

fn classification_data(g: &FiniteGroup, q: &QuadReport) -> serde_json::Value {
    let late: Vec<_> = q.late().map(|x| word(g, x)).collect();
    let last: Vec<_> = q.last().map(|x| word(g, x)).collect();
    json!({"quadratics": q.quadratics.len(), "late": late, "last": last})
}

/// Late/last classification, checking that last implies late and that
/// late and last quadratics exist whenever quadratics do.
pub fn check_classify(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<(Report, QuadReport)> {
    let q = classify_quadratics(g, v, b.subgroup_cap, b.scan_budget)?;
    if q.quadratics.is_empty() {
        return Ok((Report::new("classify", Verdict::NotApplicable, "no quadratic elements"), q));
    }
    let (t0, x) = deepest_quadratic_layer(g, v).expect("quadratics exist");
    let class = q.quadratics.iter().find(|c| c.element == x).expect("listed");
    let ok = class.late && class.last && q.late().next().is_some() && q.last().next().is_some();
    let verdict = if ok { Verdict::Holds } else { Verdict::Violation };
    let r = Report::new("classify", verdict, "late and last quadratics exist")
        .with("classification", classification_data(g, &q))
        .with("t0", t0)
        .witness(Claim::Quadratic { element: word(g, x) });
    Ok((r, q))
}

/// Every late quadratic lies in `Ω_1(Z(𝒴(G)))`.
pub fn check_lemma83(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    let q = classify_quadratics(g, v, b.subgroup_cap, b.scan_budget)?;
    if q.quadratics.is_empty() {
        return Ok(Report::new("lemma83", Verdict::NotApplicable, "no quadratic elements"));
    }
    let y = y_subgroup(g, b.subgroup_cap)?;
    let target = g.omega1(&g.center_of(&y.subgroup));
    let outside: Vec<_> = q.late().filter(|&x| !target.contains(x)).map(|x| word(g, x)).collect();
    let late: Vec<_> = q.late().map(|x| word(g, x)).collect();
    let mut r = if outside.is_empty() {
        Report::new("lemma83", Verdict::Holds, "late quadratics lie in Omega_1(Z(Y(G)))")
            .witness(Claim::Contained { sub: late, sup: words(g, &target) })
    } else {
        Report::new("lemma83", Verdict::Violation, "late quadratic outside Omega_1(Z(Y(G)))").with("outside", outside)
    };
    r = r.with("y_order", y.subgroup.order()).with("late_count", q.late().count());
    Ok(r)
}

/// With `H = <last quadratics>`, every quadratic centralizes `H`.
pub fn check_lemma84(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    let q = classify_quadratics(g, v, b.subgroup_cap, b.scan_budget)?;
    if q.quadratics.is_empty() {
        return Ok(Report::new("lemma84", Verdict::NotApplicable, "no quadratic elements"));
    }
    let last: Vec<u32> = q.last().collect();
    let h = g.closure(&last);
    let c = g.centralizer(&h);
    let outside: Vec<_> = q.quadratics.iter().filter(|x| !c.contains(x.element)).map(|x| word(g, x.element)).collect();
    let quads: Vec<_> = q.quadratics.iter().map(|x| word(g, x.element)).collect();
    Ok(if outside.is_empty() {
        Report::new("lemma84", Verdict::Holds, "quadratics centralize the last quadratics")
            .with("h_order", h.order())
            .witness(Claim::Contained { sub: quads, sup: words(g, &c) })
    } else {
        Report::new("lemma84", Verdict::Violation, "quadratic not centralizing the last quadratics").with("outside", outside)
    })
}

/// If `Ω_1(Z(G))` has no quadratic element, the quadratics generate a
/// proper subgroup.
pub fn check_thm17(g: &FiniteGroup, v: &Representation) -> Result<Report> {
    v.require_faithful()?;
    if let Some(z) = central_quadratic(g, v) {
        return Ok(Report::new("thm17", Verdict::NotApplicable, "Omega_1(Z(G)) has quadratic elements")
            .with("central_quadratic", word(g, z)));
    }
    let h = g.closure(&quadratic_elements(g, v));
    Ok(if h.order() < g.order() {
        Report::new("thm17", Verdict::Holds, "quadratic elements generate a proper subgroup")
            .with("generated_order", h.order())
            .witness(Claim::Proper { generators: words(g, &h) })
    } else {
        Report::new("thm17", Verdict::Violation, "quadratic elements generate G")
    })
}

/// For powerful `G` (odd p): `G' ∩ Ω_1(G)` is abelian and the central
/// quadratic conjecture holds for `V`.
pub fn check_thm92(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    if g.prime() == 2 {
        return Ok(Report::new("thm92", Verdict::NotApplicable, "stated for odd p"));
    }
    if !g.is_powerful()? {
        return Ok(Report::new("thm92", Verdict::NotApplicable, "group is not powerful"));
    }
    let premise = prop91_premise(g)?;
    if !premise {
        return Ok(Report::new("thm92", Verdict::Violation, "powerful group with non-abelian G' ∩ Omega_1(G)"));
    }
    let y2 = check_y2(g, v, b)?;
    let mut r = Report::new("thm92", y2.verdict, format!("powerful; {}", y2.detail)).with("prop91_premise", premise);
    r.witnesses = y2.witnesses;
    Ok(r)
}
