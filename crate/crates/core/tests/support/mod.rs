//! Independent oracles shared by the oracle tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use usl_core::constructions::{a2, b21_transpose, k3, k3_double, ta, tb, GroupTable};
use usl_core::matrices::{all_field_matrices, mp_inverse, FieldMatrix, InvolutiveField};
use usl_core::semigroup::{direct_product, generated_closure};
use usl_core::terms::{check_identity, sort_vars, IdentityVerdict};
use usl_core::{ElementId, FiniteUnarySemigroup, UnarySemigroup, UnaryTerm};

pub const MAX_SIZE: usize = 6;
pub const MAX_LEAVES: usize = 6;

/// Named structures, small groups and small closures, all with at most
/// `MAX_SIZE` elements.
pub fn pool() -> Vec<FiniteUnarySemigroup> {
    let mut out: Vec<FiniteUnarySemigroup> = vec![tb(), ta(), a2(), b21_transpose()];
    for n in 1..=MAX_SIZE {
        out.push(GroupTable::cyclic(n).unwrap().to_semigroup());
    }
    out.push(GroupTable::symmetric3().to_semigroup());
    for parent in [k3(), k3_double(), tb(), ta(), b21_transpose()] {
        let n = parent.size() as ElementId;
        for a in 0..n {
            for b in a..n {
                let sub = generated_closure(&parent, &[a, b]).unwrap();
                if sub.size() <= MAX_SIZE && !out.contains(&sub.semigroup) {
                    out.push(sub.semigroup);
                }
            }
        }
    }
    let z2 = GroupTable::cyclic(2).unwrap().to_semigroup();
    let z3 = GroupTable::cyclic(3).unwrap().to_semigroup();
    out.push(direct_product(&z2, &z3).unwrap());
    out
}

/// Replaces the unary tables by `arity` random maps.
fn with_random_stars(s: &FiniteUnarySemigroup, arity: usize, rng: &mut StdRng) -> FiniteUnarySemigroup {
    let n = s.size() as ElementId;
    let stars = (0..arity)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    s.with_stars(stars).unwrap()
}

fn random_term(leaves: usize, vars: &[&str], arity: usize, rng: &mut StdRng) -> UnaryTerm {
    let mut t = if leaves == 1 {
        UnaryTerm::var(vars[rng.gen_range(0..vars.len())])
    } else {
        let left = rng.gen_range(1..leaves);
        UnaryTerm::concat(
            random_term(left, vars, arity, rng),
            random_term(leaves - left, vars, arity, rng),
        )
    };
    if arity > 0 && rng.gen_bool(0.3) {
        t = t.star_k(rng.gen_range(1..=arity as u8));
    }
    t
}

pub fn naive_eval(t: &UnaryTerm, s: &FiniteUnarySemigroup, env: &HashMap<String, ElementId>) -> ElementId {
    match t {
        UnaryTerm::Var(v) => env[v],
        UnaryTerm::Concat(a, b) => s.mul(naive_eval(a, s, env), naive_eval(b, s, env)),
        UnaryTerm::Star(a, k) => s.star(*k as usize - 1, naive_eval(a, s, env)),
    }
}

/// First failing assignment with the first variable most significant.
pub fn naive_check(s: &FiniteUnarySemigroup, u: &UnaryTerm, v: &UnaryTerm) -> Option<Vec<(String, ElementId)>> {
    let mut vars = u.vars();
    for x in v.vars() {
        if !vars.contains(&x) {
            vars.push(x);
        }
    }
    sort_vars(&mut vars);
    let n = s.size() as u64;
    let total = n.pow(vars.len() as u32);
    (0..total).find_map(|mut code| {
        let mut values = vec![0; vars.len()];
        for slot in values.iter_mut().rev() {
            *slot = (code % n) as ElementId;
            code /= n;
        }
        let env: HashMap<String, ElementId> = vars.iter().cloned().zip(values.iter().copied()).collect();
        (naive_eval(u, s, &env) != naive_eval(v, s, &env)).then(|| vars.iter().cloned().zip(values).collect())
    })
}

/// Counts of identities that hold and fail, agreed on by both evaluators.
#[derive(Debug, Clone, Copy)]
pub struct Agreement {
    pub holds: usize,
    pub fails: usize,
}

/// Compares `check_identity` with `naive_check` on `instances` random
/// instances: verdicts, witness assignments and witness values.
pub fn identity_agreement(instances: usize, seed: u64) -> Result<Agreement, String> {
    let structures = pool();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut agreement = Agreement { holds: 0, fails: 0 };
    for _ in 0..instances {
        let base = &structures[rng.gen_range(0..structures.len())];
        let arity = rng.gen_range(0..=2);
        let s = if rng.gen_bool(0.5) && arity == base.arity() {
            base.clone()
        } else {
            with_random_stars(base, arity, &mut rng)
        };
        let vars = ["x", "y", "z"];
        let nvars = rng.gen_range(1..=3);
        let u = random_term(rng.gen_range(1..=MAX_LEAVES), &vars[..nvars], arity, &mut rng);
        let v = random_term(rng.gen_range(1..=MAX_LEAVES), &vars[..nvars], arity, &mut rng);
        let verdict = check_identity(&s, &u, &v, 1_000_000).map_err(|e| format!("{u} = {v}: {e}"))?;
        match (naive_check(&s, &u, &v), verdict) {
            (None, IdentityVerdict::Holds { .. }) => agreement.holds += 1,
            (Some(expected), IdentityVerdict::Fails(w)) => {
                let env: HashMap<String, ElementId> = expected.iter().cloned().collect();
                if w.assignment != expected || w.lhs != naive_eval(&u, &s, &env) || w.rhs != naive_eval(&v, &s, &env) {
                    return Err(format!("{u} = {v}: witness {:?}, expected {expected:?}", w.assignment));
                }
                agreement.fails += 1;
            }
            (naive, fast) => return Err(format!("{u} = {v}: naive {naive:?}, engine {fast:?}")),
        }
    }
    Ok(agreement)
}

/// The four Penrose equations, written out with the basic matrix operations.
fn penrose(a: &FieldMatrix, x: &FieldMatrix) -> bool {
    let m = |p: &FieldMatrix, q: &FieldMatrix| p.mul(q).unwrap();
    let (ax, xa) = (m(a, x), m(x, a));
    m(&ax, a) == *a && m(&xa, x) == *x && ax.conj_transpose() == ax && xa.conj_transpose() == xa
}

/// Checks `mp_inverse` against a search over every 2×2 candidate; returns
/// the number of matrices that have an inverse.
pub fn mp_agreement(field: &Arc<InvolutiveField>) -> Result<usize, String> {
    let all = all_field_matrices(field, 2).map_err(|e| e.to_string())?;
    let mut invertible = 0;
    for a in &all {
        let solutions: Vec<&FieldMatrix> = all.iter().filter(|x| penrose(a, x)).collect();
        if solutions.len() > 1 {
            return Err(format!("{a} has {} Penrose solutions over {field}", solutions.len()));
        }
        if mp_inverse(a).as_ref() != solutions.first().copied() {
            return Err(format!("mp_inverse disagrees with search at {a} over {field}"));
        }
        invertible += solutions.len();
    }
    Ok(invertible)
}
