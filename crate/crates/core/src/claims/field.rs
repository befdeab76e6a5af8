use std::sync::Arc;

use num_integer::Integer;

use super::{ClaimOptions, Evidence};
use crate::constructions::{k3, k3_double, ta, ta_matrices, tb, tb_matrices, GroupTable};
use crate::matrices::{
    all_field_matrices, field_family, field_matrix_set, mp_inverse, mp_rank1, nontrivial_isotropic, penrose_holds,
    FieldFamily, FieldMatrix, FieldUnary, InvolutiveField, MatrixSemigroup,
};
use crate::semigroup::{
    direct_product, find_morphism, generated_closure, hermitian_part, power_part, quotient_by_partition, ElementId,
    ElementPartition, FiniteUnarySemigroup, MorphismMode, MorphismSearch, QuotientOutcome, UnarySemigroup,
};
use crate::{Error, Result};

pub(super) fn gf(p: u32) -> Result<Arc<InvolutiveField>> {
    Ok(Arc::new(InvolutiveField::prime(p)?))
}

fn square(f: &Arc<InvolutiveField>, entries: &[u32]) -> Result<FieldMatrix> {
    let n = (entries.len() as f64).sqrt() as usize;
    FieldMatrix::square(f, n, entries.to_vec())
}

/// `x · u vᵀ` for column `u` and row `v`.
fn outer(f: &Arc<InvolutiveField>, u: &[u32], v: &[u32], x: u32) -> Result<FieldMatrix> {
    let entries = u
        .iter()
        .flat_map(|&a| v.iter().map(move |&b| f.mul(x, f.mul(a, b))))
        .collect();
    FieldMatrix::new(f, u.len(), v.len(), entries)
}

fn is_identity(a: &FieldMatrix) -> bool {
    *a == FieldMatrix::identity(a.field(), a.rows())
}

/// Ids `(i,j) ↦ (i−1)·r + (j−1)` (0-based here), zero at `r²`.
#[derive(Clone, Copy)]
struct ReesIds {
    r: usize,
}

impl ReesIds {
    fn zero(&self) -> ElementId {
        (self.r * self.r) as ElementId
    }

    fn decode(&self, a: ElementId) -> Option<(usize, usize)> {
        let a = a as usize;
        (a < self.r * self.r).then_some((a / self.r, a % self.r))
    }

    fn encode(&self, i: usize, j: usize) -> ElementId {
        (i * self.r + j) as ElementId
    }

    /// `(i,j)(k,l) = (i,l)` when `nonzero(j,k)`, else 0; ids past the zero
    /// act as an adjoined identity.
    fn product(&self, a: ElementId, b: ElementId, nonzero: fn(usize, usize) -> bool) -> ElementId {
        let one = self.zero() + 1;
        if a == one {
            return b;
        }
        if b == one {
            return a;
        }
        match (self.decode(a), self.decode(b)) {
            (Some((i, j)), Some((k, l))) if nonzero(j, k) => self.encode(i, l),
            _ => self.zero(),
        }
    }

    fn star(&self, a: ElementId) -> ElementId {
        self.decode(a).map_or(a, |(i, j)| self.encode(j, i))
    }

    fn name(&self, a: ElementId, prefix: &str) -> String {
        match self.decode(a) {
            Some((i, j)) => format!("{prefix}{}{}", i + 1, j + 1),
            None if a == self.zero() => "0".into(),
            None => "1".into(),
        }
    }
}

fn k3_nonzero(j: usize, k: usize) -> bool {
    !matches!((j, k), (1, 2) | (2, 1))
}

fn tb_nonzero(j: usize, k: usize) -> bool {
    matches!((j, k), (0, 1) | (1, 0))
}

fn ta_nonzero(j: usize, k: usize) -> bool {
    (j, k) != (0, 0)
}

/// First entry where `s` (with ids as in `ids`) departs from the formula.
fn formula_mismatch(s: &FiniteUnarySemigroup, ids: ReesIds, nonzero: fn(usize, usize) -> bool) -> Option<String> {
    for a in s.elements() {
        for b in s.elements() {
            let expected = ids.product(a, b, nonzero);
            if s.mul(a, b) != expected {
                return Some(format!(
                    "{}*{} = {}, expected {}",
                    s.label(a),
                    s.label(b),
                    s.label(s.mul(a, b)),
                    s.label(expected)
                ));
            }
        }
        for (k, table) in s.star_tables().iter().enumerate() {
            if table[a as usize] != ids.star(a) {
                return Some(format!(
                    "star{}({}) = {}",
                    k + 1,
                    s.label(a),
                    s.label(table[a as usize])
                ));
            }
        }
    }
    None
}

pub(super) fn check_formula(
    ev: &mut Evidence,
    s: &FiniteUnarySemigroup,
    r: usize,
    nonzero: fn(usize, usize) -> bool,
    name: &str,
) {
    match formula_mismatch(s, ReesIds { r }, nonzero) {
        None => ev.note(format!(
            "{name} table matches its defining rule on all {} products",
            s.size() * s.size()
        )),
        Some(m) => ev.fail(format!("{name} table: {m}")),
    }
}

/// Quotients `s` by the fibres of `target`, relabels the classes with the
/// target labels and verifies the class map as an isomorphism onto `t`.
pub(super) fn quotient_iso(
    ev: &mut Evidence,
    s: &FiniteUnarySemigroup,
    target: &[ElementId],
    t: &FiniteUnarySemigroup,
    name: &str,
) -> Result<Option<FiniteUnarySemigroup>> {
    let partition = ElementPartition::from_fn(s.size(), |a| target[a as usize]);
    let q = match quotient_by_partition(s, &partition)? {
        QuotientOutcome::Quotient(q) => q,
        QuotientOutcome::NotACongruence(w) => {
            ev.fail(format!("{name}: classes are not a congruence ({w:?})"));
            return Ok(None);
        }
    };
    let mut map = vec![0; q.semigroup.size()];
    for a in s.elements() {
        map[q.projection[a as usize] as usize] = target[a as usize];
    }
    let labels = map.iter().map(|&y| format!("[{}]", t.label(y))).collect();
    let quotient = q.semigroup.with_labels(labels)?;
    ev.note(format!("{name}: {} elements in {} classes", s.size(), quotient.size()));
    ev.morphism(&quotient, t, &map, MorphismMode::Isomorphism, name);
    Ok(Some(quotient))
}

fn search_iso(
    ev: &mut Evidence,
    s: &FiniteUnarySemigroup,
    t: &FiniteUnarySemigroup,
    name: &str,
    o: &ClaimOptions,
) -> Result<()> {
    match find_morphism(s, t, MorphismMode::Isomorphism, &[], o.morphism_budget)? {
        MorphismSearch::Found(m) => {
            m.verify(s, t)?;
            ev.note(format!("{name}: independent search also finds an isomorphism"));
        }
        MorphismSearch::None => ev.fail(format!("{name}: search finds no isomorphism")),
        MorphismSearch::Inconclusive { nodes } => {
            ev.inconclusive(format!("{name}: search stopped after {nodes} nodes"))
        }
    }
    Ok(())
}

/// `H_ij = {x u_i v_j : x ≠ 0}` with `u = v = ((1,1), (1,0), (0,1))`, plus 0.
/// Returns the set and the K₃ id of every member.
fn h_ij_set(
    f: &Arc<InvolutiveField>,
    unaries: &[FieldUnary],
) -> Result<(MatrixSemigroup<FieldMatrix>, Vec<ElementId>)> {
    let vecs: [[u32; 2]; 3] = [[1, 1], [1, 0], [0, 1]];
    let ids = ReesIds { r: 3 };
    let mut members = vec![FieldMatrix::zero(f, 2, 2)];
    let mut target = vec![ids.zero()];
    for i in 0..3 {
        for j in 0..3 {
            for x in 1..f.size() {
                members.push(outer(f, &vecs[i], &vecs[j], x)?);
                target.push(ids.encode(i, j));
            }
        }
    }
    Ok((field_matrix_set(members, unaries)?, target))
}

/// Every product and star of the H_ij set lands in the class the K₃ rule predicts.
fn h_ij_rule(ev: &mut Evidence, t: &FiniteUnarySemigroup, target: &[ElementId]) {
    let ids = ReesIds { r: 3 };
    let bad = t.elements().find_map(|a| {
        t.elements()
            .find(|&b| target[t.mul(a, b) as usize] != ids.product(target[a as usize], target[b as usize], k3_nonzero))
            .map(|b| format!("{} * {}", t.label(a), t.label(b)))
            .or_else(|| {
                (0..t.arity())
                    .find(|&k| target[t.star(k, a) as usize] != ids.star(target[a as usize]))
                    .map(|k| format!("star{}({}) leaves H_ji", k + 1, t.label(a)))
            })
    });
    match bad {
        None => ev.note(format!(
            "H_ij H_kl lies in H_il or is 0 as the K3 rule says, and stars map H_ij onto H_ji, for all {} pairs",
            t.size() * t.size()
        )),
        Some(m) => ev.fail(format!("H_ij rule broken at {m}")),
    }
}

pub(super) fn c1(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    for p in [2, 3] {
        let f = gf(p)?;
        let all = all_field_matrices(&f, 2)?;
        let rank1: Vec<&FieldMatrix> = all.iter().filter(|a| a.rank() == 1).collect();
        let expected = (p * p - 1) * (p * p - 1) / (p - 1);
        ev.check(
            rank1.len() as u32 == expected,
            format!("M2(GF({p})) has {} rank-1 matrices", rank1.len()),
        );
        let mut counter = None;
        for a in &rank1 {
            let a2 = a.mul(a)?;
            for b in &all {
                if a2.mul(b)?.mul(a)? != a.mul(b)?.mul(&a2)? {
                    counter = Some(format!("A={a}, B={b}"));
                    break;
                }
            }
        }
        match counter {
            None => ev.note(format!(
                "A^2BA = ABA^2 for all {} pairs over GF({p})",
                rank1.len() * all.len()
            )),
            Some(w) => ev.fail(format!("A^2BA != ABA^2 over GF({p}) at {w}")),
        }
    }
    Ok(())
}

pub(super) fn c2(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    for p in [2, 3, 5] {
        let f = gf(p)?;
        let l1 = field_family(&f, 2, FieldFamily::RankOneWithIdentity, &[])?;
        let expected = (p * p - 1) * (p * p - 1) / (p - 1) + 2;
        ev.check(
            l1.size() as u32 == expected,
            format!("L1_2(GF({p})) has {} elements", l1.size()),
        );
        ev.identity(l1.semigroup(), &format!("L1_2(GF({p}))"), "x x y x = x y x x", true, o)?;
    }
    Ok(())
}

pub(super) fn c3(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let (t, target) = h_ij_set(&f, &[FieldUnary::MoorePenrose])?;
    ev.check(t.size() == 19, format!("T has {} elements", t.size()));
    let k = k3();
    check_formula(ev, &k, 3, k3_nonzero, "K3");
    h_ij_rule(ev, t.semigroup(), &target);
    let ids = ReesIds { r: 3 };
    let bijection: Vec<String> = (0..10)
        .map(|a| format!("{}->{}", ids.name(a, "H"), k.label(a)))
        .collect();
    ev.note(format!("bijection {{{}}}", bijection.join(", ")));
    match quotient_iso(ev, t.semigroup(), &target, &k, "T/H -> K3")? {
        Some(quotient) => search_iso(ev, &quotient, &k, "T/H -> K3", o),
        None => Ok(()),
    }
}

pub(super) fn c4(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let mut count = 0;
    for a in all_field_matrices(&f, 2)?.into_iter().filter(|a| a.rank() == 1) {
        let r = mp_rank1(&a)?;
        let scalar_ok = f.inv(f.mul(r.cc, r.bb)) == Some(r.scalar);
        let multiple = a.conj_transpose().scale(r.scalar);
        if !scalar_ok
            || r.inverse != multiple
            || !penrose_holds(&a, &r.inverse)
            || mp_inverse(&a) != Some(r.inverse.clone())
        {
            ev.fail(format!("rank-1 formula at A={a}: formula gives {}", r.inverse));
            return Ok(());
        }
        count += 1;
    }
    ev.note(format!(
        "A^+ = c*(cc*)^-1(bb*)^-1 b = (cc* bb*)^-1 A* satisfies the Penrose equations for all {count} rank-1 A"
    ));
    Ok(())
}

pub(super) fn c5(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f3 = gf(3)?;
    ev.check(f3.size() % 4 == 3, "|GF(3)| = 3 mod 4");
    let full = field_family(&f3, 2, FieldFamily::Full, &[FieldUnary::MoorePenrose])?;
    let certified = full
        .elements()
        .iter()
        .all(|a| mp_inverse(a).is_some_and(|x| penrose_holds(a, &x)));
    ev.check(
        full.size() == 81 && certified,
        format!(
            "Moore-Penrose inverse defined and Penrose-certified on all {} elements of M2(GF(3))",
            full.size()
        ),
    );
    let f5 = gf(5)?;
    let iso = nontrivial_isotropic(&f5, 2);
    ev.check(
        iso.as_deref() == Some(&[1, 2][..]),
        format!("GF(5) isotropic vector {iso:?}: 1 + 2^2 = 0"),
    );
    let a = square(&f5, &[1, 2, 1, 2])?;
    ev.check(
        a.mul(&a.conj_transpose())?.is_zero(),
        format!("A = {a} has equal rows and AA* = 0"),
    );
    let candidates = all_field_matrices(&f5, 2)?;
    let solutions = candidates.iter().filter(|x| penrose_holds(&a, x)).count();
    ev.check(
        solutions == 0 && mp_inverse(&a).is_none(),
        format!(
            "none of the {} candidates solves the Penrose equations for A",
            candidates.len()
        ),
    );
    match field_family(&f5, 2, FieldFamily::Full, &[FieldUnary::MoorePenrose]) {
        Err(Error::PartialOperation(_)) => ev.note("M2(GF(5)) with Moore-Penrose inverse is rejected as partial"),
        Err(e) => ev.fail(format!("M2(GF(5)) failed unexpectedly: {e}")),
        Ok(_) => ev.fail("M2(GF(5)) accepted a total Moore-Penrose inverse"),
    }
    Ok(())
}

pub(super) fn c6(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let identity = "(x x')^3 (y y')^3 = (y y')^3 (x x')^3";
    let m = field_family(&gf(2)?, 2, FieldFamily::Full, &[FieldUnary::Transpose])?;
    ev.identity(m.semigroup(), "M2(GF(2))", identity, true, o)?;
    let k = k3();
    if let Some(w) = ev.identity(&k, "K3", identity, false, o)? {
        let binds: Vec<String> = w
            .assignment
            .iter()
            .map(|(v, a)| format!("{v}={}", k.label(*a)))
            .collect();
        ev.check(
            binds == ["x=(1,1)", "y=(2,1)"],
            format!("least K3 witness {}", binds.join(", ")),
        );
    }
    Ok(())
}

pub(super) fn c7(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let t = tb();
    check_formula(ev, &t, 2, tb_nonzero, "TB");
    let m = tb_matrices();
    // (1,1)->E12, (1,2)->E11, (2,1)->E22, (2,2)->E21
    ev.morphism(&t, &m, &[2, 1, 4, 3, 0, 5], MorphismMode::Isomorphism, "TB -> matrices");
    search_iso(ev, &t, &m, "TB -> matrices", o)
}

pub(super) fn c8(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let a = ta();
    check_formula(ev, &a, 2, ta_nonzero, "TA");
    let m = ta_matrices();
    // (1,1)->E12, (1,2)->E11, (2,1)->[[0,1],[0,1]], (2,2)->[[1,0],[1,0]]
    ev.morphism(&a, &m, &[2, 1, 4, 3, 0, 5], MorphismMode::Isomorphism, "TA -> matrices");
    search_iso(ev, &a, &m, "TA -> matrices", o)?;
    let square = direct_product(&a, &a)?;
    let pair = |x: &str, y: &str| -> Result<ElementId> {
        let find = |l: &str| a.find_label(l).ok_or_else(|| Error::UnknownName(l.to_string()));
        Ok(find(x)? * a.size() as ElementId + find(y)?)
    };
    let gens = [pair("1", "1")?, pair("(1,1)", "(2,2)")?, pair("(2,2)", "(1,1)")?];
    let sub = generated_closure(&square, &gens)?;
    ev.note(format!(
        "subsemigroup of TA x TA generated by (1,1), ((1,1),(2,2)), ((2,2),(1,1)) has {} elements",
        sub.size()
    ));
    let b = tb();
    match find_morphism(&sub.semigroup, &b, MorphismMode::Onto, &[], o.morphism_budget)? {
        MorphismSearch::Found(f) => ev.morphism(&sub.semigroup, &b, &f.map, MorphismMode::Onto, "subsemigroup -> TB"),
        MorphismSearch::None => ev.fail("no onto homomorphism from the subsemigroup to TB"),
        MorphismSearch::Inconclusive { nodes } => {
            ev.inconclusive(format!("morphism search stopped after {nodes} nodes"))
        }
    }
    Ok(())
}

pub(super) fn c9(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let s = field_family(&f, 2, FieldFamily::Full, &[FieldUnary::MoorePenrose])?;
    let h = hermitian_part(s.semigroup())?;
    let outside: Vec<String> = h
        .embedding
        .iter()
        .map(|&p| s.element(p))
        .filter(|a| a.rank() > 1 && !is_identity(a))
        .map(|a| a.to_string())
        .collect();
    ev.check(
        outside.is_empty(),
        format!(
            "all {} Hermitian elements have rank <= 1 or are I {outside:?}",
            h.size()
        ),
    );
    ev.identity(&h.semigroup, "H(M2(GF(3)))", "x x y x = x y x x", true, o)?;
    let gl = field_family(&f, 2, FieldFamily::General, &[])?;
    ev.identity(gl.semigroup(), "GL2(GF(3))", "x x y x = x y x x", false, o)?;
    Ok(())
}

pub(super) fn c10(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let g = field_family(
        &f,
        2,
        FieldFamily::StarOrthogonal,
        &[FieldUnary::MoorePenrose, FieldUnary::ConjTranspose],
    )?;
    let a = square(&f, &[0, 1, 1, 0])?;
    let b = square(&f, &[0, 2, 1, 0])?;
    let inside = g.id_of(&a).is_some() && g.id_of(&b).is_some();
    ev.check(
        inside,
        format!("{a} and {b} lie in the {}-element group {{A : A^+ = A^*}}", g.size()),
    );
    ev.check(
        a.mul(&b)? != b.mul(&a)?,
        format!("{a}{b} = {} differs from {b}{a} = {}", a.mul(&b)?, b.mul(&a)?),
    );
    let (t, target) = h_ij_set(&f, &[FieldUnary::MoorePenrose, FieldUnary::ConjTranspose])?;
    h_ij_rule(ev, t.semigroup(), &target);
    quotient_iso(
        ev,
        t.semigroup(),
        &target,
        &k3_double(),
        "T/H -> K3 with both operations",
    )?;
    Ok(())
}

/// Exponent of `GL₂(GF(3))` from its group table.
fn gl_exponent(f: &Arc<InvolutiveField>) -> Result<(u64, usize)> {
    let gl = field_family(f, 2, FieldFamily::General, &[])?;
    Ok((GroupTable::from_semigroup(gl.semigroup())?.exponent(), gl.size()))
}

pub(super) fn c11(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let orth = field_family(&f, 2, FieldFamily::Orthogonal, &[])?;
    let group = GroupTable::from_semigroup(orth.semigroup())?;
    let pair = group
        .elements()
        .flat_map(|x| group.elements().map(move |y| (x, y)))
        .find(|&(x, y)| group.mul(x, y) != group.mul(y, x));
    match pair {
        Some((x, y)) => ev.note(format!(
            "O2(GF(3)) has {} elements; {} and {} do not commute",
            group.size(),
            group.label(x),
            group.label(y)
        )),
        None => ev.fail(format!("O2(GF(3)) with {} elements is abelian", group.size())),
    }
    let (d, _) = gl_exponent(&f)?;
    let s = field_family(&f, 2, FieldFamily::Full, &[FieldUnary::Transpose])?;
    let p = power_part(s.semigroup(), d)?;
    let outside = p
        .embedding
        .iter()
        .map(|&x| s.element(x))
        .filter(|a| a.rank() > 1 && !is_identity(a))
        .count();
    ev.check(
        outside == 0,
        format!("P_{d} has {} elements, each of rank <= 1 or I", p.size()),
    );
    ev.identity(&p.semigroup, &format!("P_{d}(M2(GF(3)))"), "x x y x = x y x x", true, o)?;
    Ok(())
}

/// `H11 = u uᵀ`, `H12 = u e₁ᵀ`, `H21 = e₁ uᵀ`, `H22 = e₁ e₁ᵀ`, `O`, `I` in the
/// id order of TA.
fn ta_copy(ev: &mut Evidence, f: &Arc<InvolutiveField>, u: &[u32], name: &str) -> Result<()> {
    let n = u.len();
    let norm = u.iter().fold(0, |acc, &x| f.add(acc, f.mul(x, x)));
    ev.check(norm == 0, format!("{name}: sum of squares of {u:?} is 0"));
    let mut e1 = vec![0; n];
    e1[0] = 1;
    let members = vec![
        outer(f, u, u, 1)?,
        outer(f, u, &e1, 1)?,
        outer(f, &e1, u, 1)?,
        outer(f, &e1, &e1, 1)?,
        FieldMatrix::zero(f, n, n),
        FieldMatrix::identity(f, n),
    ];
    let m = field_matrix_set(members, &[FieldUnary::Transpose])?;
    ev.morphism(
        &ta(),
        m.semigroup(),
        &[0, 1, 2, 3, 4, 5],
        MorphismMode::Isomorphism,
        name,
    );
    Ok(())
}

pub(super) fn c12(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    ta_copy(ev, &gf(2)?, &[1, 1], "GF(2), x = 1")?;
    ta_copy(ev, &gf(5)?, &[1, 2], "GF(5), x = 2")
}

pub(super) fn c13(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    ta_copy(ev, &gf(3)?, &[1, 1, 1], "GF(3), x = y = 1")
}

pub(super) fn c14(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let gl: Vec<FieldMatrix> = all_field_matrices(&f, 2)?
        .into_iter()
        .filter(|a| a.rank() == 2)
        .collect();
    let one = FieldMatrix::identity(&f, 2);
    let mut lcm = 1u64;
    for a in &gl {
        let (mut power, mut order) = (a.clone(), 1u64);
        while power != one {
            power = power.mul(a)?;
            order += 1;
        }
        lcm = lcm.lcm(&order);
    }
    let (d, size) = gl_exponent(&f)?;
    ev.check(
        gl.len() == 48 && size == 48,
        format!("GL2(GF(3)) has {} elements", gl.len()),
    );
    ev.check(
        d == lcm,
        format!("d = lcm of element orders = {lcm}; group table exponent = {d}"),
    );
    let s = field_family(&f, 2, FieldFamily::Full, &[FieldUnary::Transpose])?;
    ev.identity(s.semigroup(), "M2(GF(3))", &format!("x = x (x' x)^{lcm}"), true, o)?;
    Ok(())
}

pub(super) fn c15(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f = gf(3)?;
    let units: [[u32; 4]; 4] = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
    let b = tb();
    let mut members = Vec::new();
    let mut target = Vec::new();
    for (t, unit) in units.iter().enumerate() {
        for sign in [1, 2] {
            members.push(square(&f, unit)?.scale(sign));
            target.push(t as ElementId);
        }
    }
    members.push(FieldMatrix::zero(&f, 2, 2));
    target.push(4);
    members.push(FieldMatrix::identity(&f, 2));
    target.push(5);
    let t = field_matrix_set(members, &[FieldUnary::Symplectic])?;
    ev.note(format!(
        "the {} matrices are closed under product and symplectic transpose",
        t.size()
    ));
    ev.morphism(t.semigroup(), &b, &target, MorphismMode::Onto, "T -> TB");
    quotient_iso(ev, t.semigroup(), &target, &b, "T/+- -> TB")?;
    Ok(())
}
