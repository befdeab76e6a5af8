use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

/// A unary subsemigroup together with its embedding into the parent.
///
/// Sub-ids follow parent-id order: `embedding` is strictly increasing.
#[derive(Clone, Debug)]
pub struct Subsemigroup {
    pub semigroup: FiniteUnarySemigroup,
    pub embedding: Vec<ElementId>,
}

impl Subsemigroup {
    pub fn size(&self) -> usize {
        self.embedding.len()
    }

    /// Sub-id of a parent element, if it belongs to the subsemigroup.
    pub fn sub_id(&self, parent: ElementId) -> Option<ElementId> {
        self.embedding.binary_search(&parent).ok().map(|i| i as ElementId)
    }

    pub fn contains(&self, parent: ElementId) -> bool {
        self.sub_id(parent).is_some()
    }
}

/// Least subset containing `gens` and closed under multiplication and every star.
pub fn generated_closure<S: UnarySemigroup + ?Sized>(s: &S, gens: &[ElementId]) -> Result<Subsemigroup> {
    let members = closure_members(s, gens)?;
    restrict_to(s, members)
}

pub(crate) fn closure_members<S: UnarySemigroup + ?Sized>(s: &S, gens: &[ElementId]) -> Result<Vec<ElementId>> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("generating set is empty".into()));
    }
    let size = s.size();
    if let Some(&bad) = gens.iter().find(|&&g| g as usize >= size) {
        return Err(Error::InvalidElement { id: bad, size });
    }
    let mut seen = vec![false; size];
    let mut members: Vec<ElementId> = Vec::new();
    let mut queue = VecDeque::new();
    for &g in gens {
        if !seen[g as usize] {
            seen[g as usize] = true;
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        members.push(x);
        let mut found = Vec::new();
        for k in 0..s.arity() {
            found.push(s.star(k, x));
        }
        for &y in &members {
            found.push(s.mul(x, y));
            found.push(s.mul(y, x));
        }
        for z in found {
            if !seen[z as usize] {
                seen[z as usize] = true;
                queue.push_back(z);
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}

/// Tabulates `s` restricted to `members`, which must be sorted and closed.
pub(crate) fn restrict_to<S: UnarySemigroup + ?Sized>(s: &S, members: Vec<ElementId>) -> Result<Subsemigroup> {
    let n = members.len();
    let index = |parent: ElementId| -> Result<ElementId> {
        members
            .binary_search(&parent)
            .map(|i| i as ElementId)
            .map_err(|_| Error::Structural(format!("element {parent} escapes the subset")))
    };
    let mut mul = Vec::with_capacity(n * n);
    for &a in &members {
        for &b in &members {
            mul.push(index(s.mul(a, b))?);
        }
    }
    let stars = (0..s.arity())
        .map(|k| members.iter().map(|&a| index(s.star(k, a))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let labels = members.iter().map(|&a| s.label(a)).collect();
    let semigroup = FiniteUnarySemigroup::from_trusted_tables(n, mul, stars, Some(labels))?;
    Ok(Subsemigroup {
        semigroup,
        embedding: members,
    })
}

/// H(S): the unary subsemigroup generated by all `x x*` (first unary table).
pub fn hermitian_part<S: UnarySemigroup + ?Sized>(s: &S) -> Result<Subsemigroup> {
    if s.arity() == 0 {
        return Err(Error::InvalidArgument("hermitian part needs a unary operation".into()));
    }
    let gens: Vec<ElementId> = (0..s.size() as ElementId).map(|x| s.mul(x, s.star(0, x))).collect();
    generated_closure(s, &gens)
}

/// P_n(S): the unary subsemigroup generated by all `x^n`.
pub fn power_part<S: UnarySemigroup + ?Sized>(s: &S, n: u64) -> Result<Subsemigroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let gens: Vec<ElementId> = (0..s.size() as ElementId).map(|x| s.pow(x, n)).collect();
    generated_closure(s, &gens)
}

/// Componentwise product; the pair `(a, b)` has id `a * |T| + b`.
pub fn direct_product(s: &FiniteUnarySemigroup, t: &FiniteUnarySemigroup) -> Result<FiniteUnarySemigroup> {
    if s.arity() != t.arity() {
        return Err(Error::ArityMismatch(format!(
            "factors have {} and {} unary operations",
            s.arity(),
            t.arity()
        )));
    }
    let (ns, nt) = (s.size(), t.size());
    let n = ns * nt;
    let pair = |a: ElementId, b: ElementId| a * nt as ElementId + b;
    let split = |x: usize| ((x / nt) as ElementId, (x % nt) as ElementId);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, b) = split(x);
        for y in 0..n {
            let (c, d) = split(y);
            mul.push(pair(s.mul(a, c), t.mul(b, d)));
        }
    }
    let stars = (0..s.arity())
        .map(|k| {
            (0..n)
                .map(|x| {
                    let (a, b) = split(x);
                    pair(s.star(k, a), t.star(k, b))
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", s.label(a), t.label(b))
        })
        .collect();
    FiniteUnarySemigroup::from_trusted_tables(n, mul, stars, Some(labels))
}

/// S¹: appends a new identity (last id, label "1") fixed by every star.
pub fn adjoin_identity(s: &FiniteUnarySemigroup) -> Result<FiniteUnarySemigroup> {
    let old = s.size();
    let n = old + 1;
    let one = old as ElementId;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n as ElementId {
        for b in 0..n as ElementId {
            mul.push(match (a == one, b == one) {
                (true, _) => b,
                (false, true) => a,
                _ => s.mul(a, b),
            });
        }
    }
    let stars = s
        .star_tables()
        .iter()
        .map(|table| table.iter().copied().chain(std::iter::once(one)).collect())
        .collect();
    let labels = (0..old as ElementId)
        .map(|a| s.label(a))
        .chain(std::iter::once("1".to_string()))
        .collect();
    FiniteUnarySemigroup::from_trusted_tables(n, mul, stars, Some(labels))
}

/// Assignment of every element to a class. Classes are numbered by first
/// occurrence in element-id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementPartition {
    class_of: Vec<u32>,
    classes: usize,
}

impl ElementPartition {
    /// Partition induced by an arbitrary key function.
    pub fn from_fn<K: Eq + std::hash::Hash>(size: usize, mut key: impl FnMut(ElementId) -> K) -> Self {
        let mut ids = std::collections::HashMap::new();
        let class_of = (0..size as ElementId)
            .map(|a| {
                let next = ids.len() as u32;
                *ids.entry(key(a)).or_insert(next)
            })
            .collect();
        ElementPartition {
            class_of,
            classes: ids.len(),
        }
    }

    /// Partition from explicit blocks; elements not listed become singletons.
    pub fn from_blocks(size: usize, blocks: &[Vec<ElementId>]) -> Result<Self> {
        let mut block_of = vec![None; size];
        for (b, block) in blocks.iter().enumerate() {
            for &a in block {
                let slot = block_of
                    .get_mut(a as usize)
                    .ok_or(Error::InvalidElement { id: a, size })?;
                if slot.is_some() {
                    return Err(Error::InvalidArgument(format!("element {a} appears in two blocks")));
                }
                *slot = Some(b);
            }
        }
        Ok(Self::from_fn(size, |a| match block_of[a as usize] {
            Some(b) => (b, 0),
            None => (usize::MAX, a as usize),
        }))
    }

    pub fn discrete(size: usize) -> Self {
        Self::from_fn(size, |a| a)
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, a: ElementId) -> u32 {
        self.class_of[a as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.class_of
    }

    /// Members of each class in increasing id order.
    pub fn blocks(&self) -> Vec<Vec<ElementId>> {
        let mut blocks = vec![Vec::new(); self.classes];
        for (a, &c) in self.class_of.iter().enumerate() {
            blocks[c as usize].push(a as ElementId);
        }
        blocks
    }
}

/// Which operation separates two elements of the same class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSide {
    /// `a·c` and `b·c` land in different classes.
    Right,
    /// `c·a` and `c·b` land in different classes.
    Left,
    /// `a*` and `b*` (table index) land in different classes.
    Star(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    /// Representative (least id) of the class.
    pub a: ElementId,
    pub b: ElementId,
    pub side: WitnessSide,
    /// The other operand; equal to `a` for star witnesses.
    pub c: ElementId,
    pub result_a: ElementId,
    pub result_b: ElementId,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub semigroup: FiniteUnarySemigroup,
    /// Class id (= quotient element id) of every source element.
    pub projection: Vec<ElementId>,
}

#[derive(Clone, Debug)]
pub enum QuotientOutcome {
    Quotient(Quotient),
    NotACongruence(CongruenceWitness),
}

/// Quotient by `p` when it is a congruence.
///
/// Each `b` is compared with the least element `a` of its class; `b` runs in
/// increasing id order, then right products, left products and stars, each
/// in increasing `c`. The first mismatch is returned.
pub fn quotient_by_partition(s: &FiniteUnarySemigroup, p: &ElementPartition) -> Result<QuotientOutcome> {
    if p.size() != s.size() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} elements, semigroup has {}",
            p.size(),
            s.size()
        )));
    }
    let blocks = p.blocks();
    let cls = |x: ElementId| p.class_of(x);
    for b in s.elements() {
        let a = blocks[cls(b) as usize][0];
        if a == b {
            continue;
        }
        let witness = |side, c, result_a, result_b| CongruenceWitness {
            a,
            b,
            side,
            c,
            result_a,
            result_b,
        };
        for c in s.elements() {
            let (ra, rb) = (s.mul(a, c), s.mul(b, c));
            if cls(ra) != cls(rb) {
                return Ok(QuotientOutcome::NotACongruence(witness(WitnessSide::Right, c, ra, rb)));
            }
        }
        for c in s.elements() {
            let (ra, rb) = (s.mul(c, a), s.mul(c, b));
            if cls(ra) != cls(rb) {
                return Ok(QuotientOutcome::NotACongruence(witness(WitnessSide::Left, c, ra, rb)));
            }
        }
        for k in 0..s.arity() {
            let (ra, rb) = (s.star(k, a), s.star(k, b));
            if cls(ra) != cls(rb) {
                return Ok(QuotientOutcome::NotACongruence(witness(
                    WitnessSide::Star(k),
                    a,
                    ra,
                    rb,
                )));
            }
        }
    }

    let n = p.class_count();
    let reps: Vec<ElementId> = blocks.iter().map(|block| block[0]).collect();
    let mut mul = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            mul.push(cls(s.mul(a, b)));
        }
    }
    let stars = (0..s.arity())
        .map(|k| reps.iter().map(|&a| cls(s.star(k, a))).collect())
        .collect();
    let labels = blocks
        .iter()
        .map(|block| {
            let names: Vec<String> = block.iter().map(|&a| s.label(a)).collect();
            if names.len() == 1 {
                names[0].clone()
            } else {
                format!("[{}]", names.join(" "))
            }
        })
        .collect();
    let semigroup = FiniteUnarySemigroup::from_trusted_tables(n, mul, stars, Some(labels))?;
    Ok(QuotientOutcome::Quotient(Quotient {
        semigroup,
        projection: p.assignment().to_vec(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z_4 under addition with negation.
    fn z4() -> FiniteUnarySemigroup {
        let mul = (0..16).map(|i| ((i / 4 + i % 4) % 4) as ElementId).collect();
        let neg = (0..4).map(|a| ((4 - a) % 4) as ElementId).collect();
        FiniteUnarySemigroup::new(4, mul, vec![neg], None).unwrap()
    }

    #[test]
    fn closure_of_generator_is_cyclic_subgroup() {
        let sub = generated_closure(&z4(), &[2]).unwrap();
        assert_eq!(sub.embedding, vec![0, 2]);
        assert_eq!(sub.sub_id(2), Some(1));
        assert!(!sub.contains(1));
    }

    #[test]
    fn empty_generating_set_is_rejected() {
        assert!(generated_closure(&z4(), &[]).is_err());
        assert!(matches!(
            generated_closure(&z4(), &[9]),
            Err(Error::InvalidElement { .. })
        ));
    }

    #[test]
    fn hermitian_part_of_group_is_trivial() {
        let h = hermitian_part(&z4()).unwrap();
        assert_eq!(h.embedding, vec![0]);
    }

    #[test]
    fn first_power_part_is_everything() {
        assert_eq!(power_part(&z4(), 1).unwrap().size(), 4);
        assert_eq!(power_part(&z4(), 2).unwrap().embedding, vec![0, 2]);
    }

    #[test]
    fn product_and_identity() {
        let p = direct_product(&z4(), &z4()).unwrap();
        assert_eq!(p.size(), 16);
        assert_eq!(p.identity_id(), Some(0));
        let s1 = adjoin_identity(&z4()).unwrap();
        assert_eq!(s1.size(), 5);
        assert_eq!(s1.identity_id(), Some(4));
        assert_eq!(s1.label(4), "1");
    }

    #[test]
    fn blocks_are_validated() {
        assert!(ElementPartition::from_blocks(4, &[vec![0, 1], vec![1]]).is_err());
        let p = ElementPartition::from_blocks(4, &[vec![1, 3]]).unwrap();
        assert_eq!(p.class_count(), 3);
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn cosets_give_a_quotient() {
        let p = ElementPartition::from_fn(4, |a| a % 2);
        let QuotientOutcome::Quotient(q) = quotient_by_partition(&z4(), &p).unwrap() else {
            panic!("cosets of 2Z_4 form a congruence");
        };
        assert_eq!(q.semigroup.size(), 2);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
    }

    #[test]
    fn non_congruence_reports_first_witness() {
        let p = ElementPartition::from_blocks(4, &[vec![0, 1]]).unwrap();
        let QuotientOutcome::NotACongruence(w) = quotient_by_partition(&z4(), &p).unwrap() else {
            panic!("{{0,1}} is not a congruence class of Z_4");
        };
        assert_eq!((w.a, w.b, w.side, w.c), (0, 1, WitnessSide::Right, 1));
    }
}
