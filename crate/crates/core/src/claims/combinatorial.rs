use std::sync::Arc;

use super::field::{gf, quotient_iso};
use super::{ClaimOptions, Evidence};
use crate::constructions::{
    all_lambdas, critical_tk, diagonal_assignment, group_times_trivialized, normalize_sandwich, restrict_tk,
    substituted_identity, ta, tb, CriticalSpec, GroupTable, WitnessVariant,
};
use crate::matrices::{
    bool_family, bool_generated_monoid, bool_matrix_set, field_family, sl2z_free_probe, BoolFamily, BoolMatrix,
    BoolUnary, FieldFamily, FieldUnary, InvolutiveField,
};
use crate::sapir::{
    build_system, is_square_free, model_check_identity, twisted_model, ModelValue, ModelVerdict, TwistedElement,
};
use crate::semigroup::{
    green_r_height, index_period, satisfies_periodic, verify_morphism, ElementId, MorphismMode, UnarySemigroup,
};
use crate::terms::{
    check_identity, evaluate, isoterm_search, omega, parse_identity, zimin, IdentityVerdict, ZiminVariant,
};
use crate::{Error, Result, UnaryTerm};

fn bool_rows(rows: &[&[u8]]) -> Result<BoolMatrix> {
    BoolMatrix::from_rows(rows)
}

/// `B11, B12, B21, B22, O, I` in the id order of TB.
fn b_ij() -> Result<Vec<BoolMatrix>> {
    [
        [[0, 1], [1, 1]],
        [[1, 0], [1, 1]],
        [[1, 1], [0, 1]],
        [[1, 1], [1, 0]],
        [[1, 1], [1, 1]],
        [[1, 0], [0, 1]],
    ]
    .iter()
    .map(|m| bool_rows(&[&m[0], &m[1]]))
    .collect()
}

pub(super) fn c16(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let m = bool_matrix_set(b_ij()?, BoolUnary::Transpose)?;
    ev.note("B11, B12, B21, B22, O = J, I are closed under Boolean product and transpose");
    ev.morphism(
        &tb(),
        m.semigroup(),
        &[0, 1, 2, 3, 4, 5],
        MorphismMode::Isomorphism,
        "TB -> B_ij",
    );
    Ok(())
}

/// Permanent over the Boolean semiring: some permutation is supported.
fn has_supported_permutation(m: &BoolMatrix) -> bool {
    fn extend(m: &BoolMatrix, row: usize, used: &mut Vec<bool>) -> bool {
        if row == m.n() {
            return true;
        }
        (0..m.n()).any(|c| {
            if used[c] || !m.get(row, c) {
                return false;
            }
            used[c] = true;
            let ok = extend(m, row + 1, used);
            used[c] = false;
            ok
        })
    }
    extend(m, 0, &mut vec![false; m.n()])
}

pub(super) fn c17(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    for n in [2, 3] {
        let all = bool_family(BoolFamily::All, n)?;
        let disagree = (0..all.size() as ElementId)
            .map(|a| all.element(a))
            .find(|m| m.is_hall() != has_supported_permutation(m));
        ev.check(
            disagree.is_none(),
            format!(
                "B{n}: matching test agrees with permutation expansion on all {} matrices",
                all.size()
            ),
        );
        let hall = bool_family(BoolFamily::Hall, n)?;
        let members: Vec<BoolMatrix> = (0..hall.size() as ElementId).map(|a| hall.element(a)).collect();
        let bad_product = members
            .iter()
            .flat_map(|a| members.iter().map(move |b| (a, b)))
            .find(|(a, b)| !a.mul(b).is_hall());
        let bad_transpose = members.iter().find(|a| !a.transpose().is_hall());
        match (bad_product, bad_transpose) {
            (None, None) => ev.note(format!(
                "HB{n}: {} Hall matrices closed under product and transpose",
                members.len()
            )),
            (Some((a, b)), _) => ev.fail(format!("HB{n}: {a}{b} is not Hall")),
            (_, Some(a)) => ev.fail(format!("HB{n}: transpose of {a} is not Hall")),
        }
    }
    let b = b_ij()?;
    ev.check(b.iter().all(BoolMatrix::is_hall), "the six B_ij matrices are Hall");
    Ok(())
}

pub(super) fn c18(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let x = bool_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]])?;
    let y = bool_rows(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]])?;
    let m = bool_generated_monoid(&[x, y], BoolUnary::AntiDiag)?;
    let s = m.semigroup();
    let one = BoolMatrix::identity(3);
    let outside = [one, x, y, x.mul(&y), y.mul(&x)];
    let in_n = |a: ElementId| m.element(a).get(0, 2);
    let complement: Vec<BoolMatrix> = s.elements().filter(|&a| !in_n(a)).map(|a| *m.element(a)).collect();
    let mut expected = outside.to_vec();
    expected.sort();
    let mut found = complement.clone();
    found.sort();
    ev.check(
        found == expected,
        format!("<X,Y> has {} elements; outside N: {complement:?}", s.size()),
    );
    let ideal = s
        .elements()
        .filter(|&a| in_n(a))
        .all(|a| s.elements().all(|c| in_n(s.mul(a, c)) && in_n(s.mul(c, a))));
    ev.check(ideal, "N = {m : m_13 = 1} is an ideal");
    let ta = ta();
    let label_id = |l: &str| ta.find_label(l).ok_or_else(|| Error::UnknownName(l.to_string()));
    // I, X, Y, XY, YX onto 1, (2,2), (1,1), (2,1), (1,2); N onto 0
    let images = [
        label_id("1")?,
        label_id("(2,2)")?,
        label_id("(1,1)")?,
        label_id("(2,1)")?,
        label_id("(1,2)")?,
    ];
    let zero = label_id("0")?;
    let map: Vec<ElementId> = s
        .elements()
        .map(|a| {
            outside
                .iter()
                .position(|o| o == m.element(a))
                .map_or(zero, |k| images[k])
        })
        .collect();
    ev.morphism(s, &ta, &map, MorphismMode::Onto, "BT3 <X,Y> -> TA");
    quotient_iso(ev, s, &map, &ta, "<X,Y>/N -> TA")?;
    Ok(())
}

pub(super) fn c19(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let b = tb();
    for (n, len) in [(2, 5), (3, 7)] {
        let z = zimin(n, ZiminVariant::Full)?;
        let report = isoterm_search(&b, &z, len, o.assignment_budget)?;
        if report.inconclusive {
            ev.inconclusive(format!(
                "Z{n}: search complete only through length {}",
                report.complete_through
            ));
        } else {
            ev.check(
                report.found.is_empty(),
                format!(
                    "Z{n} = {z}: no other word of length <= {len} equals it in TB ({} candidates) {:?}",
                    report.candidates, report.found
                ),
            );
        }
    }
    Ok(())
}

pub(super) fn c20(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let g = GroupTable::symmetric3();
    let find = |l: &str| g.find_label(l).ok_or_else(|| Error::UnknownName(l.to_string()));
    let (a, b) = (find("(12)")?, find("(13)")?);
    let spec = CriticalSpec::commutator(g.clone(), a, b, 1)?;
    let (tk, p) = critical_tk(&spec)?;
    ev.note(format!(
        "T_1 over S3 with m = 2, n = {}: {} elements",
        spec.n(),
        tk.size()
    ));
    let assignment = diagonal_assignment(&tk);
    for variant in [WitnessVariant::Hermitian, WitnessVariant::Power(g.exponent())] {
        let (u, v) = substituted_identity(&spec, variant)?;
        let (lhs, rhs) = (evaluate(&u, &tk, &assignment)?, evaluate(&v, &tk, &assignment)?);
        ev.check(
            lhs != rhs,
            format!(
                "{variant:?} witness words at x_i = (i,e,i): {} != {}",
                tk.label(lhs),
                tk.label(rhs)
            ),
        );
    }
    let lambdas = all_lambdas(spec.m(), spec.n());
    for lambda in &lambdas {
        let restricted = restrict_tk(&spec, &p, lambda)?;
        let normalized = match normalize_sandwich(&spec, &restricted, lambda) {
            Ok(n) => n,
            Err(e) => {
                ev.fail(format!("lambda {lambda:?}: {e}"));
                continue;
            }
        };
        let (src, dst) = (restricted.spec.semigroup(), normalized.q.semigroup());
        let map = normalized.isomorphism_map(&src, &dst);
        if let Err(e) = verify_morphism(&src.to_table()?, &dst.to_table()?, &map, MorphismMode::Isomorphism) {
            ev.fail(format!("lambda {lambda:?}: scaling is not an isomorphism: {e}"));
            continue;
        }
        if let Err(e) = group_times_trivialized(&normalized.q) {
            ev.fail(format!("lambda {lambda:?}: G x U cover rejected: {e}"));
        }
    }
    ev.note(format!(
        "all {} lambda restrictions normalize to identity-only sandwiches with verified G x U onto homomorphisms",
        lambdas.len()
    ));
    Ok(())
}

pub(super) fn c21(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let sys = build_system(1)?;
    for m in 1..=3 {
        let w = sys.iterate(m)?;
        ev.check(
            is_square_free(&w),
            format!("gamma^{m}(a11) of length {} is square-free", w.len()),
        );
    }
    let (max_len, depth) = (16, 4);
    let model = twisted_model(&sys, max_len, depth)?;
    ev.note(format!(
        "model on factors of length <= {max_len} at depth {depth}; stabilized = {}",
        model.factors().stabilized()
    ));
    let elements = model.elements(max_len / 2);
    let zero = ModelValue::Element(TwistedElement::Zero);
    let bad = elements.iter().find(|e| {
        let x = ModelValue::Element((*e).clone());
        model.mul(&x, &model.star(&x)) != zero || model.mul(&x, &x) != zero
    });
    match bad {
        None => ev.note(format!(
            "xx* = x^2 = 0 for all {} elements of length <= {}",
            elements.len(),
            max_len / 2
        )),
        Some(e) => ev.fail(format!("xx* or x^2 is nonzero at {}", model.format_element(e))),
    }
    for text in ["x x' y = x x'", "y x x' = x x'", "x x y = x x", "y x x = x x"] {
        let (u, v) = parse_identity(text, 1)?;
        let check = model_check_identity(&model, &u, &v, 2)?;
        match &check.verdict {
            ModelVerdict::HoldsOnTested { .. } => ev.note(format!("{text}: {}", check.verdict)),
            ModelVerdict::Fails { assignment, .. } => ev.fail(format!("{text} fails at {assignment:?}")),
            ModelVerdict::Inconclusive { .. } => ev.inconclusive(format!("{text}: {}", check.verdict)),
        }
    }
    Ok(())
}

pub(super) fn c22(_: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let probe = sl2z_free_probe(10)?;
    match &probe.collision {
        None => ev.note(format!(
            "{} reduced words of length <= 10 have distinct values",
            probe.words
        )),
        Some((a, b)) => ev.fail(format!("words {a:?} and {b:?} have equal value")),
    }
    Ok(())
}

pub(super) fn c23(o: &ClaimOptions, ev: &mut Evidence) -> Result<()> {
    let f: Arc<InvolutiveField> = gf(3)?;
    let m = field_family(&f, 2, FieldFamily::Full, &[FieldUnary::Transpose])?;
    let s = m.semigroup();
    let height = green_r_height(s);
    ev.check(height.h == 3, format!("R-height of M2(GF(3)) is {}", height.h));
    let n = height.h + 1;
    let gl = field_family(&f, 2, FieldFamily::General, &[])?;
    let d = GroupTable::from_semigroup(gl.semigroup())?.exponent();
    let z = zimin(n, ZiminVariant::Full)?.to_term();
    let zp = zimin(n, ZiminVariant::Prefix)?.to_term();
    let rhs = UnaryTerm::concat(zp.clone(), omega(&zp, d));
    let lhs = UnaryTerm::concat(UnaryTerm::concat(z.clone(), omega(&z, d)), rhs.clone());
    let verdict = check_identity(s, &lhs, &rhs, o.assignment_budget)?;
    let name = format!(
        "Z{n} w(Z{n}) Z{n}' w(Z{n}') = Z{n}' w(Z{n}') with w(x) = x'(x x')^{}",
        d - 1
    );
    match verdict {
        IdentityVerdict::Holds { assignments } => ev.note(format!("{name} holds ({assignments} assignments)")),
        IdentityVerdict::Fails(w) => ev.fail(format!("{name} fails at {}", w.describe(s))),
        IdentityVerdict::Inconclusive { space, budget } => {
            ev.inconclusive(format!("{name}: {space} assignments exceed budget {budget}"))
        }
    }
    ev.identity(s, "M2(GF(3))", &format!("x = x (x' (x x')^{}) x", d - 1), true, o)?;
    let ip = index_period(s);
    ev.check(
        satisfies_periodic(s, ip.index, ip.period),
        format!("least index and period: x^{} = x^{}", ip.index, ip.index + ip.period),
    );
    ev.identity(
        s,
        "M2(GF(3))",
        &format!("x^{} = x^{}", ip.index, ip.index + ip.period),
        true,
        o,
    )?;
    Ok(())
}
