//! The ⊥ calculus against naive matrix arithmetic: exhaustive on the
//! natural modules of UT(3,3) and UT(4,3), randomized on catalog groups
//! acting regularly.

mod common;

use common::perp::{regular_trials, unitriangular_suite};

#[test]
fn ut33_natural() {
    let (l35, l41) = unitriangular_suite(3, None);
    assert!(l35 > 0 && l41 > 0);
}

#[test]
fn ut43_natural() {
    let (l35, l41) = unitriangular_suite(4, Some(35));
    assert!(l35 > 0 && l41 > 0);
}

#[test]
fn regular_modules_randomized() {
    regular_trials(2024, 100);
}
