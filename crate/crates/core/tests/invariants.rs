//! Property tests for structural invariants.

use std::sync::Arc;

use proptest::prelude::*;
use usl_core::constructions::{k3, ta, tb};
use usl_core::matrices::{mp_inverse, penrose_holds, BoolMatrix, FieldMatrix, InvolutiveField};
use usl_core::sapir::{build_system, factors_upto};
use usl_core::semigroup::generated_closure;
use usl_core::usg::{usg_read, usg_write};
use usl_core::{ElementId, UnarySemigroup};

fn field(spec: &str) -> Arc<InvolutiveField> {
    Arc::new(InvolutiveField::parse(spec).unwrap())
}

type Transform = fn(&FieldMatrix) -> FieldMatrix;

const FIELDS: [&str; 5] = ["gf(2)", "gf(3)", "gf(5)", "gf(4,frob)", "gf(9,frob)"];

fn matrix(f: &Arc<InvolutiveField>, n: usize, seed: &[u32]) -> FieldMatrix {
    FieldMatrix::square(f, n, seed[..n * n].iter().map(|x| x % f.size()).collect()).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..FIELDS.len(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = field(FIELDS[fi]);
        let q = f.size();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.conj(f.conj(a)), a);
        prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
        prop_assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
    }

    #[test]
    fn matrix_transforms_are_involutive_anti_automorphisms(
        fi in 0usize..FIELDS.len(),
        half in 1usize..=2,
        x in prop::collection::vec(0u32..1000, 16),
        y in prop::collection::vec(0u32..1000, 16),
    ) {
        let f = field(FIELDS[fi]);
        let n = 2 * half;
        let (a, b) = (matrix(&f, n, &x), matrix(&f, n, &y));
        let ab = a.mul(&b).unwrap();
        let transforms: [(&str, Transform); 4] = [
            ("transpose", FieldMatrix::transpose),
            ("conj_transpose", FieldMatrix::conj_transpose),
            ("anti_diag", FieldMatrix::anti_diag),
            ("symplectic", |m| m.symplectic().unwrap()),
        ];
        for (name, t) in transforms {
            prop_assert_eq!(t(&t(&a)), a.clone(), "{} is not an involution", name);
            prop_assert_eq!(t(&ab), t(&b).mul(&t(&a)).unwrap(), "{} does not reverse products", name);
        }
    }

    #[test]
    fn mp_inverse_is_certified_when_defined(fi in 0usize..FIELDS.len(), n in 1usize..=3, x in prop::collection::vec(0u32..1000, 9)) {
        let f = field(FIELDS[fi]);
        let a = matrix(&f, n, &x);
        if let Some(inv) = mp_inverse(&a) {
            prop_assert!(penrose_holds(&a, &inv));
            prop_assert_eq!(mp_inverse(&inv), Some(a.clone()));
        }
        if a.rank() == n {
            prop_assert_eq!(mp_inverse(&a), a.inverse());
        }
    }

    #[test]
    fn boolean_transforms_and_hall_closure(n in 1usize..=6, x in any::<u64>(), y in any::<u64>()) {
        let mask = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
        let a = BoolMatrix::from_bits(n, x & mask).unwrap();
        let b = BoolMatrix::from_bits(n, y & mask).unwrap();
        for t in [BoolMatrix::transpose, BoolMatrix::anti_diag] {
            prop_assert_eq!(t(&t(&a)), a);
            prop_assert_eq!(t(&a.mul(&b)), t(&b).mul(&t(&a)));
        }
        if a.is_hall() && b.is_hall() {
            prop_assert!(a.mul(&b).is_hall());
            prop_assert!(a.transpose().is_hall());
        }
        // a matrix containing a Hall matrix is Hall
        if a.is_hall() {
            prop_assert!(BoolMatrix::from_bits(n, a.bits() | b.bits()).unwrap().is_hall());
        }
    }

    #[test]
    fn usg_round_trip_of_subsemigroups(which in 0usize..3, gens in prop::collection::vec(0u32..10, 1..4)) {
        let parent = [k3(), tb(), ta()][which].clone();
        let gens: Vec<ElementId> = gens.iter().map(|g| g % parent.size() as ElementId).collect();
        let sub = generated_closure(&parent, &gens).unwrap().semigroup;
        let text = usg_write(&sub);
        let back = usg_read(&text).unwrap();
        prop_assert_eq!(usg_write(&back), text);
        prop_assert_eq!(back, sub);
    }
}

#[test]
fn factor_sets_are_factor_closed() {
    let sys = build_system(1).unwrap();
    let set = factors_upto(&sys, 5, 3).unwrap();
    let members = set.sorted();
    assert!(!members.is_empty());
    for w in &members {
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                assert!(set.contains(&w[i..j]), "factor {:?} of {:?} is missing", &w[i..j], w);
            }
        }
    }
}

#[test]
fn closures_are_closed() {
    for s in [k3(), tb(), ta()] {
        for g in s.elements() {
            let sub = generated_closure(&s, &[g]).unwrap();
            for &a in &sub.embedding {
                assert!(sub.contains(s.star(0, a)));
                for &b in &sub.embedding {
                    assert!(sub.contains(s.mul(a, b)));
                }
            }
        }
    }
}
