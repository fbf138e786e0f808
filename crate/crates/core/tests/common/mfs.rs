//! The submodularity inequality for j-values on UT(3,3), with fixed-space
//! dimensions from [`Oracle`].

use pgrp::construct::unitriangular;
use pgrp::group::DEFAULT_ELEMENT_CAP as CAP;
use pgrp::quadratic::mfs_check;
use pgrp::rep::Representation;
use pgrp::{FiniteGroup, Subgroup};

use super::{log_p, Oracle};

pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for a in g.elements() {
        for b in g.elements().filter(|&b| b >= a) {
            let s = g.closure(&[a, b]);
            if !out.iter().any(|t| t.members() == s.members()) {
                out.push(s);
            }
        }
    }
    out
}

pub fn fixed(o: &Oracle, h: &Subgroup) -> i64 {
    o.fixed_dim(h.generators()) as i64
}

/// Every pair `H, K` with `HK = ⟨H,K⟩`; returns the number of such pairs
/// and how many attain equality.
pub fn ut33_pairs() -> (usize, usize) {
    let g = unitriangular(3, 3, CAP).unwrap();
    let v = Representation::natural(&g).unwrap();
    let o = Oracle::new(&g, &v);
    let subs = all_subgroups(&g);
    // 1 + 13 of order 3 + 4 of order 9 + 1
    assert_eq!(subs.len(), 19);
    let d = v.dim() as i64;
    let e = |h: &Subgroup| log_p(h.order(), 3) + fixed(&o, h) - d;
    let (mut pairs, mut equal) = (0, 0);
    for h in &subs {
        for k in &subs {
            let join = g.join(h, k);
            let meet = g.intersection(h, k);
            if join.order() * meet.order() != h.order() * k.order() {
                assert!(mfs_check(&g, &v, h, k).is_err());
                continue;
            }
            let out = mfs_check(&g, &v, h, k).unwrap();
            assert_eq!((out.e_product, out.e_meet, out.e_h, out.e_k), (e(&join), e(&meet), e(h), e(k)));
            // dim(C_V(H) + C_V(K)) by inclusion-exclusion, as C_V(H) ∩ C_V(K) = C_V(HK)
            let sum = fixed(&o, h) + fixed(&o, k) - fixed(&o, &join);
            assert_eq!(out.sum_matches, sum == fixed(&o, &meet));
            assert!(out.inequality(), "{:?} {:?}", h.generators(), k.generators());
            assert_eq!(out.equality(), out.sum_matches);
            assert!(out.holds());
            pairs += 1;
            equal += out.equality() as usize;
        }
    }
    (pairs, equal)
}

