//! Powerfulness and the abelian-intersection premise by element scans.

use pgrp::checks::{check_thm92, Budgets};
use pgrp::group::DEFAULT_ELEMENT_CAP as CAP;
use pgrp::io::catalog;
use pgrp::quadratic::prop91_premise;
use pgrp::report::Verdict;
use pgrp::rep::Representation;
use pgrp::FiniteGroup;

pub fn brute_derived(g: &FiniteGroup) -> Vec<u32> {
    let seed: Vec<u32> = g.elements().flat_map(|a| g.elements().map(move |b| g.commutator(a, b))).collect();
    g.closure(&seed).members().to_vec()
}

pub fn brute_powerful(g: &FiniteGroup) -> bool {
    let powers: Vec<u32> = g.elements().map(|x| g.pow(x, g.prime() as u64)).collect();
    let agemo = g.closure(&powers);
    brute_derived(g).iter().all(|&x| agemo.contains(x))
}

pub fn brute_premise(g: &FiniteGroup) -> bool {
    let p = g.prime() as u64;
    let small: Vec<u32> = g.elements().filter(|&x| g.element_order(x) <= p).collect();
    let omega = g.closure(&small);
    let meet: Vec<u32> = brute_derived(g).into_iter().filter(|&x| omega.contains(x)).collect();
    meet.iter().all(|&a| meet.iter().all(|&b| g.commutes(a, b)))
}

/// Every 3-group in the catalog; returns the number of powerful ones.
pub fn catalog_three_groups() -> usize {
    let mut powerful = 0;
    for e in catalog().iter().filter(|e| e.group.p == 3) {
        let g = e.build(CAP).unwrap();
        let is = g.is_powerful().unwrap();
        assert_eq!(is, brute_powerful(&g), "{}", e.id);
        assert_eq!(prop91_premise(&g).unwrap(), brute_premise(&g), "{}", e.id);
        if !is {
            continue;
        }
        powerful += 1;
        // for powerful groups of odd order G' ∩ Ω_1(G) is abelian
        assert!(prop91_premise(&g).unwrap(), "{}", e.id);
        let regular = Representation::regular(&g).unwrap();
        let perm = Representation::permutation(&g).unwrap();
        for v in [regular, perm] {
            let r = check_thm92(&g, &v, Budgets::default()).unwrap();
            assert!(matches!(r.verdict, Verdict::Holds | Verdict::NotApplicable), "{}", e.id);
        }
    }
    powerful
}

