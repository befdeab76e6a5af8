//! Table-backed finite unary semigroups.
//!
//! Elements are dense ids `0..size`. The multiplication is a flat
//! row-major `size * size` array and each unary operation is a flat array
//! of length `size`. Structures are immutable after construction.

mod closure;
mod green;
mod morphism;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use closure::{
    adjoin_identity, direct_product, generated_closure, hermitian_part, power_part, quotient_by_partition,
    CongruenceWitness, ElementPartition, Quotient, QuotientOutcome, Subsemigroup, WitnessSide,
};
pub use green::{green_r_height, index_period, satisfies_periodic, IndexPeriod, RHeightReport};
pub use morphism::{find_morphism, verify_morphism, Morphism, MorphismMode, MorphismSearch};

pub type ElementId = u32;

/// Read access shared by tabulated and on-the-fly structures.
///
/// Unary operations are indexed from 0; star index 1 in the term language
/// is table 0.
pub trait UnarySemigroup: Sync {
    fn size(&self) -> usize;
    fn arity(&self) -> usize;
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId;
    fn star(&self, table: usize, a: ElementId) -> ElementId;

    fn label(&self, a: ElementId) -> String {
        a.to_string()
    }

    fn pow(&self, a: ElementId, n: u64) -> ElementId {
        assert!(n >= 1, "powers start at 1");
        let mut result = a;
        for _ in 1..n {
            result = self.mul(result, a);
        }
        result
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteUnarySemigroup {
    size: usize,
    mul: Vec<ElementId>,
    stars: Vec<Vec<ElementId>>,
    labels: Option<Vec<String>>,
    zero: Option<ElementId>,
    identity: Option<ElementId>,
}

/// Where a table entry lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableRef {
    Mul { a: ElementId, b: ElementId },
    Star { table: usize, a: ElementId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    OutOfRange { at: TableRef, value: ElementId },
    NonAssociative { a: ElementId, b: ElementId, c: ElementId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange {
                at: TableRef::Mul { a, b },
                value,
            } => {
                write!(f, "mul({a},{b}) = {value} is out of range")
            }
            Violation::OutOfRange {
                at: TableRef::Star { table, a },
                value,
            } => {
                write!(f, "star{}({a}) = {value} is out of range", table + 1)
            }
            Violation::NonAssociative { a, b, c } => {
                write!(f, "(({a}·{b})·{c}) != ({a}·({b}·{c}))")
            }
        }
    }
}

/// Result of [`validate_structure`]: empty iff the tables form a unary semigroup.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
    /// Set when the scan stopped at the violation cap.
    pub truncated: bool,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn first_message(&self) -> String {
        self.violations.first().map(|v| v.to_string()).unwrap_or_default()
    }
}

pub const DEFAULT_VIOLATION_CAP: usize = 64;

/// Scans raw tables for out-of-range ids and non-associative triples.
///
/// Associativity is only scanned when every id is in range. Triples are
/// reported in lexicographic `(a, b, c)` order up to `cap`.
pub fn validate_structure(size: usize, mul: &[ElementId], stars: &[Vec<ElementId>], cap: usize) -> Result<Diagnostics> {
    if size == 0 {
        return Err(Error::Structural("a semigroup needs at least one element".into()));
    }
    if mul.len() != size * size {
        return Err(Error::Structural(format!(
            "multiplication table has {} entries, expected {}",
            mul.len(),
            size * size
        )));
    }
    for (k, table) in stars.iter().enumerate() {
        if table.len() != size {
            return Err(Error::Structural(format!(
                "unary table {} has {} entries, expected {size}",
                k + 1,
                table.len()
            )));
        }
    }

    let mut diagnostics = Diagnostics::default();
    let bound = size as ElementId;
    for (idx, &value) in mul.iter().enumerate() {
        if value >= bound {
            let (a, b) = ((idx / size) as ElementId, (idx % size) as ElementId);
            diagnostics.violations.push(Violation::OutOfRange {
                at: TableRef::Mul { a, b },
                value,
            });
        }
    }
    for (table, entries) in stars.iter().enumerate() {
        for (a, &value) in entries.iter().enumerate() {
            if value >= bound {
                diagnostics.violations.push(Violation::OutOfRange {
                    at: TableRef::Star {
                        table,
                        a: a as ElementId,
                    },
                    value,
                });
            }
        }
    }
    if !diagnostics.violations.is_empty() {
        diagnostics.truncated = diagnostics.violations.len() > cap;
        diagnostics.violations.truncate(cap);
        return Ok(diagnostics);
    }

    // Each row `a` is scanned independently; per-row lists are concatenated
    // in row order so the capped prefix does not depend on scheduling.
    let per_row: Vec<Vec<Violation>> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut found = Vec::new();
            for b in 0..size {
                let ab = mul[a * size + b] as usize;
                for c in 0..size {
                    let bc = mul[b * size + c] as usize;
                    if mul[ab * size + c] != mul[a * size + bc] {
                        found.push(Violation::NonAssociative {
                            a: a as ElementId,
                            b: b as ElementId,
                            c: c as ElementId,
                        });
                        if found.len() > cap {
                            return found;
                        }
                    }
                }
            }
            found
        })
        .collect();
    for row in per_row {
        diagnostics.violations.extend(row);
        if diagnostics.violations.len() > cap {
            diagnostics.truncated = true;
            diagnostics.violations.truncate(cap);
            break;
        }
    }
    Ok(diagnostics)
}

impl FiniteUnarySemigroup {
    /// Builds a structure after a full validation scan (including associativity).
    pub fn new(
        size: usize,
        mul: Vec<ElementId>,
        stars: Vec<Vec<ElementId>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let diagnostics = validate_structure(size, &mul, &stars, DEFAULT_VIOLATION_CAP)?;
        if !diagnostics.is_empty() {
            return Err(Error::NotASemigroup(diagnostics));
        }
        Self::from_trusted_tables(size, mul, stars, labels)
    }

    /// Builds a structure whose associativity is guaranteed by construction
    /// (matrix products, Rees multiplication, closures of valid structures).
    /// Dimensions and id ranges are still checked.
    pub fn from_trusted_tables(
        size: usize,
        mul: Vec<ElementId>,
        stars: Vec<Vec<ElementId>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 || mul.len() != size * size || stars.iter().any(|t| t.len() != size) {
            return Err(Error::Structural("table dimensions do not match the size".into()));
        }
        if stars.len() > 2 {
            return Err(Error::Structural(format!(
                "{} unary tables (at most 2 supported)",
                stars.len()
            )));
        }
        let bound = size as ElementId;
        if let Some(&bad) = mul.iter().chain(stars.iter().flatten()).find(|&&v| v >= bound) {
            return Err(Error::InvalidElement { id: bad, size });
        }
        if let Some(labels) = &labels {
            if labels.len() != size {
                return Err(Error::Structural(format!(
                    "{} labels for {size} elements",
                    labels.len()
                )));
            }
        }
        let mut semigroup = FiniteUnarySemigroup {
            size,
            mul,
            stars,
            labels,
            zero: None,
            identity: None,
        };
        semigroup.zero = semigroup.detect_zero();
        semigroup.identity = semigroup.detect_identity();
        Ok(semigroup)
    }

    /// Tabulates any [`UnarySemigroup`].
    pub fn tabulate<S: UnarySemigroup + ?Sized>(source: &S) -> Result<Self> {
        let size = source.size();
        let mul: Vec<ElementId> = (0..size as ElementId)
            .into_par_iter()
            .flat_map_iter(|a| (0..size as ElementId).map(move |b| source.mul(a, b)))
            .collect();
        let stars = (0..source.arity())
            .map(|k| (0..size as ElementId).map(|a| source.star(k, a)).collect())
            .collect();
        let labels = (0..size as ElementId).map(|a| source.label(a)).collect();
        Self::from_trusted_tables(size, mul, stars, Some(labels))
    }

    fn detect_zero(&self) -> Option<ElementId> {
        (0..self.size as ElementId).find(|&z| {
            (0..self.size as ElementId).all(|a| self.mul(z, a) == z && self.mul(a, z) == z)
                && (0..self.stars.len()).all(|k| self.star(k, z) == z)
        })
    }

    fn detect_identity(&self) -> Option<ElementId> {
        (0..self.size as ElementId)
            .find(|&u| (0..self.size as ElementId).all(|a| self.mul(u, a) == a && self.mul(a, u) == a))
    }

    pub fn zero_id(&self) -> Option<ElementId> {
        self.zero
    }

    pub fn identity_id(&self) -> Option<ElementId> {
        self.identity
    }

    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    pub fn star_tables(&self) -> &[Vec<ElementId>] {
        &self.stars
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Structural(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Element id carrying `label`, if any.
    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(|i| i as ElementId)
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size as ElementId
    }

    /// Same carrier and multiplication with different unary tables.
    pub fn with_stars(&self, stars: Vec<Vec<ElementId>>) -> Result<Self> {
        Self::from_trusted_tables(self.size, self.mul.clone(), stars, self.labels.clone())
    }

    pub fn is_idempotent(&self, a: ElementId) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotent_count(&self) -> usize {
        self.elements().filter(|&a| self.is_idempotent(a)).count()
    }

    pub fn check_id(&self, id: ElementId) -> Result<()> {
        if (id as usize) < self.size {
            Ok(())
        } else {
            Err(Error::InvalidElement { id, size: self.size })
        }
    }
}

impl UnarySemigroup for FiniteUnarySemigroup {
    fn size(&self) -> usize {
        self.size
    }

    fn arity(&self) -> usize {
        self.stars.len()
    }

    #[inline]
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    fn star(&self, table: usize, a: ElementId) -> ElementId {
        self.stars[table][a as usize]
    }

    fn label(&self, a: ElementId) -> String {
        match &self.labels {
            Some(labels) => labels[a as usize].clone(),
            None => a.to_string(),
        }
    }
}

/// Per-table classification of a unary operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryFlags {
    pub involutory: bool,
    pub regular_star: bool,
    /// First pair `(x, y)` with `(xy)* != y*x*`, or `(x, x)` when `x** != x`.
    pub involution_witness: Option<(ElementId, ElementId)>,
    /// First `x` with `x x* x != x` (only searched when involutory).
    pub regular_witness: Option<ElementId>,
}

/// Classifies every unary table against the involution laws and `x = x x* x`.
pub fn classify_unary<S: UnarySemigroup + ?Sized>(s: &S) -> Vec<UnaryFlags> {
    (0..s.arity())
        .map(|k| {
            let n = s.size() as ElementId;
            let mut involution_witness = (0..n).find(|&x| s.star(k, s.star(k, x)) != x).map(|x| (x, x));
            if involution_witness.is_none() {
                involution_witness = (0..n).find_map(|x| {
                    (0..n)
                        .find(|&y| s.star(k, s.mul(x, y)) != s.mul(s.star(k, y), s.star(k, x)))
                        .map(|y| (x, y))
                });
            }
            let involutory = involution_witness.is_none();
            let regular_witness = if involutory {
                (0..n).find(|&x| s.mul(s.mul(x, s.star(k, x)), x) != x)
            } else {
                None
            };
            UnaryFlags {
                involutory,
                regular_star: involutory && regular_witness.is_none(),
                involution_witness,
                regular_witness,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element_chain() -> (Vec<ElementId>, Vec<Vec<ElementId>>) {
        // {0, 1} under min, identity star
        (vec![0, 0, 0, 1], vec![vec![0, 1]])
    }

    #[test]
    fn valid_chain_has_no_violations() {
        let (mul, stars) = two_element_chain();
        let d = validate_structure(2, &mul, &stars, 10).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn out_of_range_entry_is_a_single_violation() {
        let mul = vec![0, 7, 0, 1];
        let d = validate_structure(2, &mul, &[vec![0, 1]], 10).unwrap();
        assert_eq!(
            d.violations,
            vec![Violation::OutOfRange {
                at: TableRef::Mul { a: 0, b: 1 },
                value: 7
            }]
        );
    }

    #[test]
    fn ragged_tables_are_structural_errors() {
        assert!(matches!(
            validate_structure(2, &[0, 0, 0], &[], 10),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_structure(2, &[0, 0, 0, 0], &[vec![0]], 10),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn broken_magma_reports_non_associative_triples() {
        // Left-zero band on 3 elements (xy = x) with one entry changed.
        let mut mul: Vec<ElementId> = (0..9).map(|i| (i / 3) as ElementId).collect();
        mul[2 * 3 + 2] = 0; // 2·2 = 0
        let d = validate_structure(3, &mul, &[], 64).unwrap();
        assert!(!d.is_empty());
        for v in &d.violations {
            let Violation::NonAssociative { a, b, c } = *v else {
                panic!("unexpected {v:?}")
            };
            let m = |x: ElementId, y: ElementId| mul[x as usize * 3 + y as usize];
            assert_ne!(m(m(a, b), c), m(a, m(b, c)));
        }
        let m = |x: usize, y: usize| mul[x * 3 + y];
        let naive: Vec<Violation> = (0..3)
            .flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| m(m(a, b) as usize, c) != m(a, m(b, c) as usize))
            .map(|(a, b, c)| Violation::NonAssociative {
                a: a as u32,
                b: b as u32,
                c: c as u32,
            })
            .collect();
        assert_eq!(d.violations, naive);
        assert_eq!(d.violations[0], Violation::NonAssociative { a: 2, b: 0, c: 2 });
    }

    #[test]
    fn violation_cap_truncates() {
        // xy = (x + 1) mod 3 is badly non-associative
        let mul: Vec<ElementId> = (0..9).map(|i| ((i / 3 + 1) % 3) as ElementId).collect();
        let d = validate_structure(3, &mul, &[], 2).unwrap();
        assert_eq!(d.violations.len(), 2);
        assert!(d.truncated);
    }

    #[test]
    fn zero_and_identity_are_detected() {
        let (mul, stars) = two_element_chain();
        let s = FiniteUnarySemigroup::new(2, mul, stars, None).unwrap();
        assert_eq!(s.zero_id(), Some(0));
        assert_eq!(s.identity_id(), Some(1));
    }

    #[test]
    fn zero_must_be_star_fixed() {
        let s = FiniteUnarySemigroup::new(2, vec![0, 0, 0, 1], vec![vec![1, 0]], None).unwrap();
        assert_eq!(s.zero_id(), None);
    }

    #[test]
    fn new_rejects_non_associative() {
        let mul: Vec<ElementId> = (0..9).map(|i| ((i / 3 + 1) % 3) as ElementId).collect();
        assert!(matches!(
            FiniteUnarySemigroup::new(3, mul, vec![], None),
            Err(Error::NotASemigroup(_))
        ));
    }
}
