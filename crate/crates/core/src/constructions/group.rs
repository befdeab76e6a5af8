use num_integer::Integer;

use crate::semigroup::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    size: usize,
    mul: Vec<ElementId>,
    inv: Vec<ElementId>,
    identity: ElementId,
    labels: Vec<String>,
}

impl GroupTable {
    /// Validates the group axioms and derives identity and inverses.
    pub fn new(size: usize, mul: Vec<ElementId>, labels: Option<Vec<String>>) -> Result<Self> {
        let s = FiniteUnarySemigroup::new(size, mul, vec![], labels)?;
        Self::from_semigroup(&s)
    }

    /// Reads a semigroup table as a group; fails unless it has an identity
    /// and every element is invertible.
    pub fn from_semigroup(s: &FiniteUnarySemigroup) -> Result<Self> {
        let e = s
            .identity_id()
            .ok_or_else(|| Error::Construction("group table has no identity".into()))?;
        let inv = s
            .elements()
            .map(|a| {
                s.elements()
                    .find(|&b| s.mul(a, b) == e && s.mul(b, a) == e)
                    .ok_or_else(|| Error::Construction(format!("element {} has no inverse", s.label(a))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable {
            size: s.size(),
            mul: s.mul_table().to_vec(),
            inv,
            identity: e,
            labels: s.elements().map(|a| s.label(a)).collect(),
        })
    }

    pub fn trivial() -> Self {
        GroupTable {
            size: 1,
            mul: vec![0],
            inv: vec![0],
            identity: 0,
            labels: vec!["e".into()],
        }
    }

    /// ℤ/n with generator 1.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as ElementId).collect();
        Self::new(n, mul, Some((0..n).map(|a| a.to_string()).collect()))
    }

    /// S₃ on {1,2,3}: `()`, `(12)`, `(13)`, `(23)`, `(123)`, `(132)`.
    /// The product `pq` applies `p` first.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let labels = ["()", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed") as ElementId;
        let mut mul = Vec::with_capacity(36);
        for p in &perms {
            for q in &perms {
                mul.push(index([q[p[0]], q[p[1]], q[p[2]]]));
            }
        }
        Self::new(6, mul, Some(labels.iter().map(|s| s.to_string()).collect())).expect("S3 is a group")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a as usize]
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(|i| i as ElementId)
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size as ElementId
    }

    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    pub fn order(&self, a: ElementId) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least `d` with `g^d = e` for every `g`: the lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().fold(1, |acc, a| acc.lcm(&self.order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The group as a unary semigroup with inversion.
    pub fn to_semigroup(&self) -> FiniteUnarySemigroup {
        FiniteUnarySemigroup::from_trusted_tables(
            self.size,
            self.mul.clone(),
            vec![self.inv.clone()],
            Some(self.labels.clone()),
        )
        .expect("group tables are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_basics() {
        let g = GroupTable::symmetric3();
        assert_eq!(g.size(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
        let (a, b) = (g.find_label("(12)").unwrap(), g.find_label("(13)").unwrap());
        assert_ne!(g.mul(a, b), g.mul(b, a));
        assert_eq!(g.inv(g.find_label("(123)").unwrap()), g.find_label("(132)").unwrap());
    }

    #[test]
    fn cyclic_exponent() {
        let g = GroupTable::cyclic(4).unwrap();
        assert_eq!(g.exponent(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn non_group_is_rejected() {
        // {0, 1} under min has identity 1 but 0 is not invertible
        assert!(GroupTable::new(2, vec![0, 0, 0, 1], None).is_err());
    }
}
