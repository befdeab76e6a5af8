//! `check_identity` against a direct recursive evaluator on random small
//! structures and random terms.

use usl_core::UnarySemigroup;

mod support;

#[test]
fn pool_is_small_and_varied() {
    let pool = support::pool();
    assert!(pool.len() > 20);
    assert!(pool.iter().all(|s| s.size() <= support::MAX_SIZE));
}

#[test]
fn check_identity_matches_naive_evaluator_on_1000_instances() {
    let a = support::identity_agreement(1000, 0x5eed).unwrap();
    assert!(a.holds > 50 && a.fails > 50, "{a:?}");
}

#[test]
fn agreement_under_other_seeds() {
    for seed in 1..=4 {
        support::identity_agreement(250, seed).unwrap();
    }
}
