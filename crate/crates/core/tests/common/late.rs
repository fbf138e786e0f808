//! Deepest commutators and the late/last classification against direct
//! element scans, and the facts proved about them.

use std::collections::HashMap;

use super::Oracle;
use pgrp::checks::{check_lemma83, check_lemma84, check_thm17, Budgets};
use pgrp::construct::unitriangular;
use pgrp::elemab::DEFAULT_SCAN_BUDGET;
use pgrp::group::DEFAULT_ELEMENT_CAP as CAP;
use pgrp::io::catalog;
use pgrp::quadratic::{classify_quadratics, deepest_commutators};
use pgrp::report::Verdict;
use pgrp::rep::Representation;
use pgrp::series::y_subgroup;
use pgrp::subgroup::DEFAULT_SUBGROUP_CAP as SCAP;
use pgrp::{FiniteGroup, GroupElement};

/// `K_1(L) = L`, `K_{i+1}(L) = ⟨[a,b] : a ∈ K_i(L), b ∈ L⟩`, down to 1.
pub fn naive_lower_central(g: &FiniteGroup, l: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![l.to_vec()];
    while out.last().unwrap().len() > 1 {
        let k = out.last().unwrap();
        let seed: Vec<u32> = k.iter().flat_map(|&a| l.iter().map(move |&b| g.commutator(a, b))).collect();
        out.push(g.closure(&seed).members().to_vec());
    }
    out
}

pub fn naive_deepest(g: &FiniteGroup, l: &[u32], x: u32) -> Vec<u32> {
    let series = naive_lower_central(g, l);
    let Some(k) = series.iter().rev().find(|k| k.iter().any(|&y| !g.commutes(x, y))) else {
        return Vec::new();
    };
    let mut out: Vec<u32> = k.iter().map(|&y| g.commutator(x, y)).filter(|&c| c != 0).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `(ρ(x) − 1)² = 0` for a permutation module, from the permutation alone:
/// row `i` is `e_{i x²} − 2 e_{i x} + e_i`.
pub fn perm_square_vanishes(g: &FiniteGroup, x: u32) -> bool {
    let GroupElement::Perm(s) = g.element(x) else { panic!("not a permutation") };
    let p = g.prime() as i64;
    (0..s.len()).all(|i| {
        let mut row: HashMap<usize, i64> = HashMap::new();
        *row.entry(s[s[i]]).or_default() += 1;
        *row.entry(s[i]).or_default() -= 2;
        *row.entry(i).or_default() += 1;
        row.values().all(|c| c.rem_euclid(p) == 0)
    })
}

/// Deepest commutators of every non-central element of every catalog
/// group of order at most `max_order`; returns the number of elements.
pub fn deepest_in_catalog(max_order: usize) -> usize {
    let mut tested = 0;
    for e in catalog().iter().filter(|e| e.group.order.is_some_and(|n| n <= max_order)) {
        let g = e.build(CAP).unwrap();
        let z = g.center();
        let all: Vec<u32> = g.elements().collect();
        for x in g.elements().filter(|&x| !z.contains(x)) {
            let deep = deepest_commutators(&g, x).unwrap();
            assert_eq!(deep, naive_deepest(&g, &all, x), "{}: {x}", e.id);
            assert!(!deep.is_empty());
            for &y in &deep {
                assert!(g.commutes(x, y), "{}", e.id);
            }
            for k in g.elements() {
                let y = g.commutator(x, k);
                if g.commutes(x, y) {
                    assert_eq!(g.element_order(x) % g.element_order(y), 0, "{}", e.id);
                }
            }
            tested += 1;
        }
        for x in z.members() {
            assert!(deepest_commutators(&g, *x).is_err());
        }
    }
    tested
}

/// Late and last flags by brute force, with `quad` the quadratic predicate
/// allowing the identity.
pub fn naive_flags(g: &FiniteGroup, x: u32, quad: &dyn Fn(u32) -> bool) -> (bool, bool) {
    let c = g.centralizer_of_element(x);
    let mut late = true;
    for n in g.normal_subgroups(SCAP).unwrap().iter() {
        if n.is_subgroup_of(&c) {
            continue;
        }
        let seed: Vec<u32> = c.members().iter().chain(n.members()).copied().collect();
        let l = g.closure(&seed);
        if naive_deepest(g, l.members(), x).into_iter().any(quad) {
            late = false;
            break;
        }
    }
    let mut seen = vec![false; g.order()];
    let mut stack = vec![x];
    let mut last = true;
    while let Some(s) = stack.pop() {
        for h in g.elements() {
            let t = g.commutator(s, h);
            if !seen[t as usize] {
                seen[t as usize] = true;
                last &= t == 0 || !quad(t);
                stack.push(t);
            }
        }
    }
    (late, last)
}

pub fn section8(name: &str, g: &FiniteGroup, v: &Representation, quad: &dyn Fn(u32) -> bool, brute: bool) -> bool {
    let q = classify_quadratics(g, v, SCAP, DEFAULT_SCAN_BUDGET).unwrap();
    let quadratics: Vec<u32> = g.elements().filter(|&x| x != 0 && quad(x)).collect();
    assert_eq!(q.quadratics.iter().map(|c| c.element).collect::<Vec<_>>(), quadratics, "{name}");
    if quadratics.is_empty() {
        return false;
    }
    if brute {
        for c in &q.quadratics {
            assert_eq!((c.late, c.last), naive_flags(g, c.element, quad), "{name}: {}", c.element);
        }
    }
    let late: Vec<u32> = q.late().collect();
    let last: Vec<u32> = q.last().collect();
    assert!(!late.is_empty() && !last.is_empty(), "{name}");
    assert!(last.iter().all(|x| late.contains(x)), "{name}");
    let y = y_subgroup(g, SCAP).unwrap().subgroup;
    let oz = g.omega1(&g.center_of(&y));
    assert!(late.iter().all(|&x| oz.contains(x)), "{name}");
    for &x in &quadratics {
        assert_eq!(g.element_order(x), g.prime() as u64, "{name}");
        assert!(last.iter().all(|&l| g.commutes(x, l)), "{name}");
    }
    let z = g.omega1(&g.center());
    if !quadratics.iter().any(|&x| z.contains(x)) {
        assert!(g.closure(&quadratics).order() < g.order(), "{name}");
    }
    let b = Budgets::default();
    assert_eq!(check_lemma83(g, v, b).unwrap().verdict, Verdict::Holds, "{name}");
    assert_eq!(check_lemma84(g, v, b).unwrap().verdict, Verdict::Holds, "{name}");
    assert_ne!(check_thm17(g, v).unwrap().verdict, Verdict::Violation, "{name}");
    true
}

pub fn unitriangular_natural(n: usize) -> bool {
    let g = unitriangular(n, 3, CAP).unwrap();
    let v = Representation::natural(&g).unwrap();
    let o = Oracle::new(&g, &v);
    section8(&format!("UT({n},3)"), &g, &v, &|x| o.product_vanishes(x, x), true)
}

/// Every catalog group on its permutation module; returns how many have
/// quadratic elements.
pub fn catalog_permutation_modules() -> usize {
    let mut with_quadratics = 0;
    for e in catalog() {
        let g = e.build(CAP).unwrap();
        let v = Representation::permutation(&g).unwrap();
        let brute = g.order() <= 32;
        with_quadratics += section8(&e.id, &g, &v, &|x| perm_square_vanishes(&g, x), brute) as usize;
    }
    with_quadratics
}
