//! The substitution `γ(a_ij) = v_{(i−1)r+j}` over the alphabet
//! `{a_ij : 1 ≤ i,j ≤ r}`, `r = 6k+2`, the factor sets of `γ^m(a₁₁)` and a
//! bounded model of the 0-direct union of the factor semigroup with its
//! anti-isomorphic copy.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::terms::UnaryTerm;
use crate::{Error, Result};

/// Letter `a_ij` is stored as `(i−1)·r + (j−1)`.
pub type SapirLetter = u16;

/// Longest iterate `γ^m(a₁₁)` that is materialized.
pub const SAPIR_WORD_CAP: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SapirSystem {
    k: usize,
    r: usize,
    images: Vec<Vec<SapirLetter>>,
}

/// `r = 6k + 2` and the rows `v_t` of `M_A`.
pub fn build_system(k: usize) -> Result<SapirSystem> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let r = 6 * k + 2;
    if r * r > SapirLetter::MAX as usize {
        return Err(Error::InvalidArgument(format!(
            "alphabet of size {} is too large",
            r * r
        )));
    }
    // Row t = (i−1)r + j: odd columns carry i, even columns carry j.
    let images = (0..r * r)
        .map(|t| {
            let (i, j) = (t / r, t % r);
            (0..r)
                .map(|c| {
                    let block = if c % 2 == 0 { i } else { j };
                    (block * r + c) as SapirLetter
                })
                .collect()
        })
        .collect();
    Ok(SapirSystem { k, r, images })
}

impl SapirSystem {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn alphabet_size(&self) -> usize {
        self.r * self.r
    }

    /// `a_ij` from 1-based indices.
    pub fn letter(&self, i: usize, j: usize) -> SapirLetter {
        ((i - 1) * self.r + (j - 1)) as SapirLetter
    }

    /// Row `t` (1-based) of `M_A`.
    pub fn row(&self, t: usize) -> &[SapirLetter] {
        &self.images[t - 1]
    }

    pub fn gamma(&self, a: SapirLetter) -> &[SapirLetter] {
        &self.images[a as usize]
    }

    pub fn apply(&self, w: &[SapirLetter]) -> Vec<SapirLetter> {
        w.iter().flat_map(|&a| self.gamma(a).iter().copied()).collect()
    }

    /// `γ^m(a₁₁)` for `m ≥ 1`.
    pub fn iterate(&self, m: usize) -> Result<Vec<SapirLetter>> {
        let len = (self.r as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if len > SAPIR_WORD_CAP as u128 {
            return Err(Error::SizeCap {
                size: len,
                cap: SAPIR_WORD_CAP as u128,
            });
        }
        let mut w = vec![0];
        for _ in 0..m {
            w = self.apply(&w);
        }
        Ok(w)
    }

    pub fn format_letter(&self, a: SapirLetter) -> String {
        format!("a[{},{}]", a as usize / self.r + 1, a as usize % self.r + 1)
    }

    pub fn format_word(&self, w: &[SapirLetter]) -> String {
        w.iter().map(|&a| self.format_letter(a)).collect::<Vec<_>>().join(" ")
    }
}

fn factors_of(w: &[SapirLetter], max_len: usize) -> HashSet<Vec<SapirLetter>> {
    (0..w.len())
        .into_par_iter()
        .fold(HashSet::new, |mut set, start| {
            for len in 1..=max_len.min(w.len() - start) {
                set.insert(w[start..start + len].to_vec());
            }
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// The factors of length at most `max_len` of `γ^depth(a₁₁)`.
#[derive(Clone, Debug)]
pub struct FactorSet {
    max_len: usize,
    depth: usize,
    stabilized: bool,
    words: HashSet<Vec<SapirLetter>>,
}

impl FactorSet {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Depths `depth − 1` and `depth` give the same factors.
    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[SapirLetter]) -> bool {
        self.words.contains(w)
    }

    pub fn count_of_length(&self, len: usize) -> usize {
        self.words.iter().filter(|w| w.len() == len).count()
    }

    /// Members in order of length, then letters.
    pub fn sorted(&self) -> Vec<Vec<SapirLetter>> {
        let mut all: Vec<Vec<SapirLetter>> = self.words.iter().cloned().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }
}

/// Factors of length at most `max_len` of `γ^m(a₁₁)`, `m ≤ depth`. Since
/// `γ(a₁₁)` starts with `a₁₁`, every iterate is a prefix of the next, so the
/// deepest iterate carries all of them.
pub fn factors_upto(sys: &SapirSystem, max_len: usize, depth: usize) -> Result<FactorSet> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let deep = sys.iterate(depth)?;
    let words = factors_of(&deep, max_len);
    let shallow = if depth == 1 { vec![0] } else { sys.iterate(depth - 1)? };
    let stabilized = factors_of(&shallow, max_len).len() == words.len();
    Ok(FactorSet {
        max_len,
        depth,
        stabilized,
        words,
    })
}

/// No factor `uu` with `u` nonempty.
pub fn is_square_free<T: PartialEq>(w: &[T]) -> bool {
    let n = w.len();
    for period in 1..=n / 2 {
        let mut run = 0;
        for i in 0..n - period {
            if w[i] == w[i + period] {
                run += 1;
                if run == period {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistedElement {
    Zero,
    Plain(Vec<SapirLetter>),
    Starred(Vec<SapirLetter>),
}

/// Result of an operation in the bounded model: `Overflow` when a product
/// is longer than the factor set can decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelValue {
    Element(TwistedElement),
    Overflow,
}

/// The 0-direct union of `V⁰` and its anti-isomorphic copy, restricted to
/// factors of bounded length.
#[derive(Clone, Debug)]
pub struct TwistedModel {
    system: SapirSystem,
    factors: FactorSet,
}

pub fn twisted_model(sys: &SapirSystem, max_len: usize, depth: usize) -> Result<TwistedModel> {
    Ok(TwistedModel {
        system: sys.clone(),
        factors: factors_upto(sys, max_len, depth)?,
    })
}

impl TwistedModel {
    pub fn system(&self) -> &SapirSystem {
        &self.system
    }

    pub fn factors(&self) -> &FactorSet {
        &self.factors
    }

    fn join(&self, u: &[SapirLetter], v: &[SapirLetter]) -> Option<Option<Vec<SapirLetter>>> {
        if u.len() + v.len() > self.factors.max_len {
            return None;
        }
        let uv = [u, v].concat();
        Some(self.factors.contains(&uv).then_some(uv))
    }

    /// `u·v = uv` when `uv` is a factor, `0` otherwise; `u*·v* = (vu)*`;
    /// mixed products vanish.
    pub fn mul(&self, a: &ModelValue, b: &ModelValue) -> ModelValue {
        use TwistedElement::*;
        match (a, b) {
            (ModelValue::Element(Zero), _) | (_, ModelValue::Element(Zero)) => ModelValue::Element(Zero),
            (ModelValue::Overflow, _) | (_, ModelValue::Overflow) => ModelValue::Overflow,
            (ModelValue::Element(x), ModelValue::Element(y)) => match (x, y) {
                (Plain(u), Plain(v)) => match self.join(u, v) {
                    None => ModelValue::Overflow,
                    Some(w) => ModelValue::Element(w.map_or(Zero, Plain)),
                },
                (Starred(u), Starred(v)) => match self.join(v, u) {
                    None => ModelValue::Overflow,
                    Some(w) => ModelValue::Element(w.map_or(Zero, Starred)),
                },
                _ => ModelValue::Element(Zero),
            },
        }
    }

    pub fn star(&self, a: &ModelValue) -> ModelValue {
        match a {
            ModelValue::Overflow => ModelValue::Overflow,
            ModelValue::Element(TwistedElement::Zero) => a.clone(),
            ModelValue::Element(TwistedElement::Plain(u)) => ModelValue::Element(TwistedElement::Starred(u.clone())),
            ModelValue::Element(TwistedElement::Starred(u)) => ModelValue::Element(TwistedElement::Plain(u.clone())),
        }
    }

    /// Zero, then plain factors of length at most `max_word_len`, then their stars.
    pub fn elements(&self, max_word_len: usize) -> Vec<TwistedElement> {
        let words: Vec<Vec<SapirLetter>> = self
            .factors
            .sorted()
            .into_iter()
            .filter(|w| w.len() <= max_word_len)
            .collect();
        let mut out = vec![TwistedElement::Zero];
        out.extend(words.iter().cloned().map(TwistedElement::Plain));
        out.extend(words.into_iter().map(TwistedElement::Starred));
        out
    }

    pub fn evaluate(&self, t: &UnaryTerm, vars: &[String], assignment: &[&TwistedElement]) -> Result<ModelValue> {
        Ok(match t {
            UnaryTerm::Var(x) => {
                let pos = vars
                    .iter()
                    .position(|v| v == x)
                    .ok_or_else(|| Error::MissingVariable(x.clone()))?;
                ModelValue::Element(assignment[pos].clone())
            }
            UnaryTerm::Concat(a, b) => self.mul(
                &self.evaluate(a, vars, assignment)?,
                &self.evaluate(b, vars, assignment)?,
            ),
            UnaryTerm::Star(a, 1) => self.star(&self.evaluate(a, vars, assignment)?),
            UnaryTerm::Star(_, k) => return Err(Error::ArityMismatch(format!("star index {k} in a unary model"))),
        })
    }

    pub fn format_element(&self, e: &TwistedElement) -> String {
        match e {
            TwistedElement::Zero => "0".into(),
            TwistedElement::Plain(w) => self.system.format_word(w),
            TwistedElement::Starred(w) => format!("({})*", self.system.format_word(w)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelVerdict {
    /// Every decided assignment agrees; `overflowed` were undecidable.
    HoldsOnTested { tested: u64, overflowed: u64 },
    Fails {
        assignment: Vec<(String, TwistedElement)>,
        lhs: TwistedElement,
        rhs: TwistedElement,
    },
    /// No assignment could be decided.
    Inconclusive { overflowed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCheck {
    pub verdict: ModelVerdict,
    /// The factor set passed the consecutive-depth comparison.
    pub stabilized: bool,
    /// The identity has at most `k` variables.
    pub within_k: bool,
}

enum Outcome {
    Agree,
    Overflow,
    Differ(TwistedElement, TwistedElement),
}

/// Checks `u = v` over every assignment of model elements built from factors
/// of length at most `max_word_len`.
pub fn model_check_identity(
    model: &TwistedModel,
    u: &UnaryTerm,
    v: &UnaryTerm,
    max_word_len: usize,
) -> Result<ModelCheck> {
    let mut vars = u.vars();
    for x in v.vars() {
        if !vars.contains(&x) {
            vars.push(x);
        }
    }
    crate::terms::sort_vars(&mut vars);
    let elements = model.elements(max_word_len);
    let n = elements.len();
    let space = (n as u64).checked_pow(vars.len() as u32).ok_or(Error::SizeCap {
        size: u128::MAX,
        cap: u64::MAX as u128,
    })?;
    let outcome = |code: u64| -> Result<Outcome> {
        let mut rest = code;
        let mut assignment = vec![&elements[0]; vars.len()];
        for slot in assignment.iter_mut().rev() {
            *slot = &elements[(rest % n as u64) as usize];
            rest /= n as u64;
        }
        Ok(
            match (
                model.evaluate(u, &vars, &assignment)?,
                model.evaluate(v, &vars, &assignment)?,
            ) {
                (ModelValue::Element(a), ModelValue::Element(b)) if a == b => Outcome::Agree,
                (ModelValue::Element(a), ModelValue::Element(b)) => Outcome::Differ(a, b),
                _ => Outcome::Overflow,
            },
        )
    };
    let first_failure = (0..space)
        .into_par_iter()
        .map(|code| outcome(code).map(|o| (code, o)))
        .find_map_first(|r| match r {
            Ok((code, Outcome::Differ(a, b))) => Some(Ok((code, a, b))),
            Err(e) => Some(Err(e)),
            _ => None,
        })
        .transpose()?;
    let verdict = match first_failure {
        Some((code, lhs, rhs)) => {
            let mut rest = code;
            let mut assignment = vec![TwistedElement::Zero; vars.len()];
            for slot in assignment.iter_mut().rev() {
                *slot = elements[(rest % n as u64) as usize].clone();
                rest /= n as u64;
            }
            ModelVerdict::Fails {
                assignment: vars.iter().cloned().zip(assignment).collect(),
                lhs,
                rhs,
            }
        }
        None => {
            let overflowed = (0..space)
                .into_par_iter()
                .map(|code| outcome(code).map(|o| matches!(o, Outcome::Overflow) as u64))
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            if overflowed == space {
                ModelVerdict::Inconclusive { overflowed }
            } else {
                ModelVerdict::HoldsOnTested {
                    tested: space - overflowed,
                    overflowed,
                }
            }
        }
    };
    Ok(ModelCheck {
        verdict,
        stabilized: model.factors.stabilized,
        within_k: vars.len() <= model.system.k,
    })
}

impl fmt::Display for ModelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelVerdict::HoldsOnTested { tested, overflowed } => {
                write!(f, "holds on {tested} tested assignments ({overflowed} undecided)")
            }
            ModelVerdict::Fails { .. } => write!(f, "fails"),
            ModelVerdict::Inconclusive { overflowed } => write!(f, "inconclusive ({overflowed} undecided)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_identity;

    #[test]
    fn system_shape() {
        let sys = build_system(1).unwrap();
        assert_eq!(sys.r(), 8);
        assert_eq!(sys.alphabet_size(), 64);
        let first_row: Vec<SapirLetter> = (1..=8).map(|j| sys.letter(1, j)).collect();
        assert_eq!(sys.row(1), &first_row[..]);
        assert_eq!(sys.gamma(sys.letter(1, 1)), sys.row(1));
        // row (i−1)r + j of M has i in odd columns and j in even ones
        let t = 2 * 8 + 5;
        let expected: Vec<SapirLetter> = (1..=8).map(|c| sys.letter(if c % 2 == 1 { 3 } else { 5 }, c)).collect();
        assert_eq!(sys.row(t), &expected[..]);
    }

    #[test]
    fn iterates_are_prefixes() {
        let sys = build_system(1).unwrap();
        let w2 = sys.iterate(2).unwrap();
        let w3 = sys.iterate(3).unwrap();
        assert_eq!(w3.len(), 512);
        assert!(w3.starts_with(&w2));
        assert!(is_square_free(&w2));
        assert!(is_square_free(&w3));
    }

    #[test]
    fn square_free_examples() {
        assert!(is_square_free(b"aba"));
        assert!(!is_square_free(b"abab"));
        assert!(!is_square_free(b"xaa"));
        assert!(is_square_free(b"abcacb"));
    }

    #[test]
    fn model_products() {
        let sys = build_system(1).unwrap();
        let model = twisted_model(&sys, 4, 3).unwrap();
        let a = ModelValue::Element(TwistedElement::Plain(vec![sys.letter(1, 1)]));
        let zero = ModelValue::Element(TwistedElement::Zero);
        assert_eq!(model.mul(&a, &model.star(&a)), zero);
        assert_eq!(model.mul(&a, &a), zero);
        assert_eq!(model.star(&zero), zero);
        let b = ModelValue::Element(TwistedElement::Plain(vec![sys.letter(1, 2)]));
        let ab = model.mul(&a, &b);
        assert_eq!(
            ab,
            ModelValue::Element(TwistedElement::Plain(vec![sys.letter(1, 1), sys.letter(1, 2)]))
        );
        // (ab)* = b* a*
        assert_eq!(model.star(&ab), model.mul(&model.star(&b), &model.star(&a)));
        let long = ModelValue::Element(TwistedElement::Plain(sys.row(1)[..3].to_vec()));
        assert_eq!(model.mul(&long, &long), ModelValue::Overflow);
    }

    #[test]
    fn identities_in_the_model() {
        let sys = build_system(1).unwrap();
        let model = twisted_model(&sys, 6, 3).unwrap();
        for text in ["x = x", "x x = x x x", "x x' y = x x'", "x x y = y x x"] {
            let (u, v) = parse_identity(text, 1).unwrap();
            let check = model_check_identity(&model, &u, &v, 1).unwrap();
            assert!(
                matches!(check.verdict, ModelVerdict::HoldsOnTested { .. }),
                "{text}: {:?}",
                check.verdict
            );
        }
        let (u, v) = parse_identity("x y = y x", 1).unwrap();
        let check = model_check_identity(&model, &u, &v, 1).unwrap();
        assert!(matches!(check.verdict, ModelVerdict::Fails { .. }));
        assert!(!check.within_k);
    }
}
