//! Every bundled catalog group against invariants recorded by an independent
//! computer algebra system, plus the class/exponent/center fields of the
//! catalog lines themselves.

use std::collections::HashMap;

use pgrp::elemab::{all_elementary_abelians, maximal_elementary_abelians, thompson_from_catalog, DEFAULT_SCAN_BUDGET};
use pgrp::group::DEFAULT_ELEMENT_CAP;
use pgrp::io::catalog;
use pgrp::subgroup::DEFAULT_SUBGROUP_CAP;
use serde::Deserialize;

#[derive(Deserialize)]
struct Recorded {
    id: String,
    normals: usize,
    omega1: usize,
    agemo: usize,
    derived: usize,
    prank: u32,
    thompson: usize,
    elem_abelian_subgroups: usize,
    classes: usize,
}

fn recorded() -> HashMap<String, Recorded> {
    include_str!("data/gap_invariants.jsonl")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str::<Recorded>(l).unwrap())
        .map(|r| (r.id.clone(), r))
        .collect()
}

#[test]
fn catalog_matches_recorded_invariants() {
    let gap = recorded();
    assert_eq!(gap.len(), catalog().len());
    let mut by_order: HashMap<(u32, usize), usize> = HashMap::new();
    for e in catalog() {
        let g = e.build(DEFAULT_ELEMENT_CAP).unwrap();
        let r = &gap[&e.id];
        let id = &e.id;
        *by_order.entry((e.group.p, g.order())).or_default() += 1;
        assert_eq!(Some(g.order()), e.group.order, "{id}");
        assert_eq!(id.split('#').next().unwrap(), g.order().to_string(), "{id}");
        assert_eq!(Some(g.nilpotency_class()), e.class, "{id}");
        assert_eq!(Some(g.exponent()), e.exponent, "{id}");
        assert_eq!(Some(g.center().order()), e.center, "{id}");
        let whole = g.whole();
        assert_eq!(g.omega1(&whole).order(), r.omega1, "{id}");
        assert_eq!(g.agemo(&whole).order(), r.agemo, "{id}");
        assert_eq!(g.derived_subgroup().order(), r.derived, "{id}");
        assert_eq!(g.conjugacy_classes().len(), r.classes, "{id}");
        assert_eq!(g.normal_subgroups(DEFAULT_SUBGROUP_CAP).unwrap().len(), r.normals, "{id}");
        let cat = maximal_elementary_abelians(&g, DEFAULT_SCAN_BUDGET).unwrap();
        assert_eq!(cat.rank, r.prank, "{id}");
        assert_eq!(thompson_from_catalog(&g, &cat).order(), r.thompson, "{id}");
        let all = all_elementary_abelians(&g, 0, DEFAULT_SCAN_BUDGET).unwrap();
        assert_eq!(all.len(), r.elem_abelian_subgroups, "{id}");
    }
    // numbers of isomorphism types of order p^n, n <= 6 (p = 2) and n <= 5 (p = 3)
    let counts = [(2, 2, 1), (2, 4, 2), (2, 8, 5), (2, 16, 14), (2, 32, 51), (2, 64, 267)];
    let counts3 = [(3, 3, 1), (3, 9, 2), (3, 27, 5), (3, 81, 15), (3, 243, 67)];
    for (p, n, c) in counts.into_iter().chain(counts3) {
        assert_eq!(by_order.get(&(p, n)).copied().unwrap_or(0), c, "order {n}");
    }
}
