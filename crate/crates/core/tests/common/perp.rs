//! The ⊥ calculus checked element by element against [`Oracle`].
//!
//! "Quadratic" for the two odd-p implications is `(x − 1)² = 0`, which
//! admits the identity: `gh = 1` or `[g,x] = 1` would otherwise break them.

use fixedbitset::FixedBitSet;
use pgrp::construct::unitriangular;
use pgrp::elemab::{all_elementary_abelians, DEFAULT_SCAN_BUDGET};
use pgrp::group::DEFAULT_ELEMENT_CAP as CAP;
use pgrp::io::catalog;
use pgrp::quadratic::{is_orthogonal, perp_subgroup, quadratic_criteria};
use pgrp::rep::Representation;
use pgrp::{FiniteGroup, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Oracle;

pub fn natural(n: usize) -> (FiniteGroup, Representation, Oracle) {
    let g = unitriangular(n, 3, CAP).unwrap();
    let v = Representation::natural(&g).unwrap();
    let o = Oracle::new(&g, &v);
    (g, v, o)
}

pub fn coprime_powers(g: &FiniteGroup, x: u32) -> impl Iterator<Item = u32> + '_ {
    let p = g.prime() as u64;
    (2..g.element_order(x)).filter(move |r| r % p != 0).map(move |r| g.pow(x, r))
}

pub fn perp_set(g: &FiniteGroup, o: &Oracle, a: u32) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(g.order());
    for b in g.elements() {
        if o.perp(g, a, b) {
            s.insert(b as usize);
        }
    }
    s
}

pub fn perp_identities(g: &FiniteGroup, v: &Representation, o: &Oracle) {
    let n = g.order() as u32;
    let perps: Vec<FixedBitSet> = (0..n).map(|a| perp_set(g, o, a)).collect();
    for a in 0..n {
        // (1)
        assert_eq!(v.is_quadratic(a), o.quadratic(a), "{a}");
        if a != 0 {
            assert_eq!(v.is_quadratic(a), perps[a as usize].contains(a as usize), "{a}");
            assert_eq!(v.is_quadratic(a), g.element_order(a) == g.prime() as u64 && o.quadratic(a));
        }
        // (3)
        let s = perp_subgroup(g, v, a).unwrap();
        assert_eq!(s.members().len(), perps[a as usize].count_ones(..));
        assert!(s.members().iter().all(|&b| perps[a as usize].contains(b as usize)));
        assert!(s.is_subgroup_of(&g.centralizer_of_element(a)));
        // (4)
        for b in coprime_powers(g, a) {
            assert_eq!(perps[a as usize], perps[b as usize], "{a}^r = {b}");
        }
        for b in 0..n {
            // (2)
            let ab = is_orthogonal(g, v, a, b);
            assert_eq!(ab, perps[a as usize].contains(b as usize));
            assert_eq!(ab, is_orthogonal(g, v, b, a));
            if g.prime() == 2 {
                continue;
            }
            // (5)
            if g.commutes(a, b) && o.product_vanishes(a, a) && o.product_vanishes(b, b) {
                let ab_sq = o.product_vanishes(g.mul(a, b), g.mul(a, b));
                assert_eq!(ab_sq, o.perp(g, a, b), "g = {a}, h = {b}");
            }
            // (6) with b playing x
            let ax = g.conjugate(a, b);
            if o.product_vanishes(a, a) && g.commutes(a, ax) {
                let c = g.commutator(a, b);
                assert_eq!(o.perp(g, a, ax), o.product_vanishes(c, c), "g = {a}, x = {b}");
            }
        }
    }
}

pub fn perp_of_products(g: &FiniteGroup, v: &Representation, o: &Oracle) {
    let all = all_elementary_abelians(g, 1, DEFAULT_SCAN_BUDGET).unwrap();
    assert!(!all.is_empty());
    let mut quadratic = 0;
    for e in &all {
        let c = quadratic_criteria(g, v, e).unwrap();
        let naive = e.members().iter().skip(1).all(|&x| o.quadratic(x));
        assert_eq!(c, [naive; 3], "{:?}", e.generators());
        quadratic += naive as usize;
    }
    assert!(quadratic > 0);
}

/// Whether a nontrivial p-group's center is cyclic.
pub fn cyclic_center(g: &FiniteGroup, c: &Subgroup) -> bool {
    let z = g.center_of(c);
    g.omega1(&z).order() == g.prime() as usize
}

pub fn commutator_perp_instance(g: &FiniteGroup, o: &Oracle, a: u32, h: u32, c: &Subgroup) -> bool {
    if !cyclic_center(g, c) {
        return false;
    }
    let z = g.omega1(&g.center_of(c));
    assert!(z.members().iter().all(|&y| o.perp(g, y, h)), "g = {a}, h = {h}, C = {:?}", c.generators());
    true
}

pub fn commutator_perp_exhaustive(g: &FiniteGroup, o: &Oracle) -> usize {
    let mut tested = 0;
    for a in g.elements().skip(1) {
        for h in g.elements().filter(|&h| o.perp(g, a, h)) {
            let ch = g.centralizer_of_element(h);
            tested += commutator_perp_instance(g, o, a, h, &ch) as usize;
            for &x in ch.members() {
                tested += commutator_perp_instance(g, o, a, h, &g.closure(&[a, x])) as usize;
            }
        }
    }
    tested
}

pub fn commutator_perp_sampled(g: &FiniteGroup, o: &Oracle, rng: &mut ChaCha8Rng, trials: usize) -> usize {
    let pairs: Vec<(u32, u32)> = g
        .elements()
        .skip(1)
        .flat_map(|a| g.elements().filter(move |&h| o.perp(g, a, h)).map(move |h| (a, h)))
        .collect();
    let mut tested = 0;
    for _ in 0..trials {
        let (a, h) = pairs[rng.gen_range(0..pairs.len())];
        let ch = g.centralizer_of_element(h);
        let x = ch.members()[rng.gen_range(0..ch.order())];
        let y = ch.members()[rng.gen_range(0..ch.order())];
        tested += commutator_perp_instance(g, o, a, h, &g.closure(&[a, x, y])) as usize;
        tested += commutator_perp_instance(g, o, a, h, &g.closure(&[a, x])) as usize;
    }
    tested
}

pub fn quadratic_perp(g: &FiniteGroup, o: &Oracle) -> usize {
    let mut tested = 0;
    for a in g.elements() {
        for b in g.elements() {
            let c = g.commutator(b, a);
            if c != 0 && g.commutes(c, a) && g.commutes(c, b) && o.quadratic(b) {
                assert!(o.quadratic(c), "A = {a}, B = {b}");
                tested += 1;
            }
        }
    }
    tested
}

/// Every part on the natural module of UT(n,3); returns the number of
/// instances exercised for the two conditional lemmas.
pub fn unitriangular_suite(n: usize, rng_seed: Option<u64>) -> (usize, usize) {
    let (g, v, o) = natural(n);
    perp_identities(&g, &v, &o);
    perp_of_products(&g, &v, &o);
    let comm = match rng_seed {
        None => commutator_perp_exhaustive(&g, &o),
        Some(seed) => commutator_perp_sampled(&g, &o, &mut ChaCha8Rng::seed_from_u64(seed), 4000),
    };
    (comm, quadratic_perp(&g, &o))
}

/// `trials` random instances on catalog groups of order at most 81 acting
/// regularly.
pub fn regular_trials(seed: u64, trials: usize) {
    let groups: Vec<FiniteGroup> = catalog()
        .iter()
        .filter(|e| e.group.order.is_some_and(|n| n > 1 && n <= 81))
        .map(|e| e.build(CAP).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let g = &groups[rng.gen_range(0..groups.len())];
        let v = Representation::regular(g).unwrap();
        let n = g.order() as u32;
        let (a, b, x) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let mut needed = vec![a, b, x, g.mul(a, b), g.conjugate(a, x), g.commutator(a, x), g.commutator(b, a)];
        needed.extend(coprime_powers(g, a));
        let o = Oracle::on(g, &v, needed.iter().copied());
        for &y in &needed {
            assert_eq!(v.is_quadratic(y), o.quadratic(y));
        }
        assert_eq!(is_orthogonal(g, &v, a, b), o.perp(g, a, b));
        assert_eq!(is_orthogonal(g, &v, a, b), is_orthogonal(g, &v, b, a));
        for r in coprime_powers(g, a) {
            assert_eq!(v.is_quadratic(r), v.is_quadratic(a));
            assert_eq!(is_orthogonal(g, &v, r, b), is_orthogonal(g, &v, a, b));
        }
        let perp = perp_subgroup(g, &v, a).unwrap();
        assert!(perp.is_subgroup_of(&g.centralizer_of_element(a)));
        assert_eq!(perp.contains(b), o.perp(g, a, b));
        let c = g.commutator(b, a);
        if c != 0 && g.commutes(c, a) && g.commutes(c, b) && o.quadratic(b) {
            assert!(o.quadratic(c));
        }
        if g.prime() == 2 {
            continue;
        }
        if g.commutes(a, b) && o.product_vanishes(a, a) && o.product_vanishes(b, b) {
            let ab = g.mul(a, b);
            assert_eq!(o.product_vanishes(ab, ab), o.perp(g, a, b));
        }
        let ax = g.conjugate(a, x);
        if o.product_vanishes(a, a) && g.commutes(a, ax) {
            let c = g.commutator(a, x);
            assert_eq!(o.perp(g, a, ax), o.product_vanishes(c, c));
        }
    }
}
