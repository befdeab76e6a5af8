//! `mp_inverse` against exhaustive search over all candidate matrices.

use std::sync::Arc;

use usl_core::matrices::InvolutiveField;

mod support;

#[test]
fn mp_matches_81_candidate_search_on_m2_gf3() {
    let f = Arc::new(InvolutiveField::prime(3).unwrap());
    assert_eq!(support::mp_agreement(&f).unwrap(), 81);
}

#[test]
fn mp_matches_search_on_gf2_gf5_and_gf4_with_frobenius() {
    for spec in ["gf(2)", "gf(5)", "gf(4,frob)"] {
        support::mp_agreement(&Arc::new(InvolutiveField::parse(spec).unwrap())).unwrap();
    }
}
