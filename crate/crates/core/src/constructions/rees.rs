use std::fmt::Write as _;

use super::GroupTable;
use crate::semigroup::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

/// Largest Rees structure tabulated by [`ReesSemigroup::to_table`].
pub const TABULATION_LIMIT: usize = 5_000;

/// `M⁰(I, G, I; P)` data: `|I|`, the group and the sandwich matrix over
/// `G ∪ {0}` (`None` is 0). Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSpec {
    index: usize,
    group: GroupTable,
    sandwich: Vec<Option<ElementId>>,
}

impl ReesSpec {
    /// Checks `p_ij = p_ji⁻¹` (with `0⁻¹ = 0`).
    pub fn new(index: usize, group: GroupTable, sandwich: Vec<Option<ElementId>>) -> Result<Self> {
        if index == 0 {
            return Err(Error::Construction("index set is empty".into()));
        }
        if sandwich.len() != index * index {
            return Err(Error::Dimension(format!(
                "sandwich has {} entries, expected {}",
                sandwich.len(),
                index * index
            )));
        }
        if let Some(&bad) = sandwich.iter().flatten().find(|&&g| g as usize >= group.size()) {
            return Err(Error::InvalidElement {
                id: bad,
                size: group.size(),
            });
        }
        let spec = ReesSpec { index, group, sandwich };
        for i in 0..index {
            for j in i..index {
                if spec.entry(i, j) != spec.entry(j, i).map(|g| spec.group.inv(g)) {
                    return Err(Error::SandwichAsymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(spec)
    }

    /// Sandwich over the trivial group from a 0/1 pattern.
    pub fn over_trivial_group(index: usize, pattern: &[u8]) -> Result<Self> {
        let sandwich = pattern.iter().map(|&p| (p != 0).then_some(0)).collect();
        Self::new(index, GroupTable::trivial(), sandwich)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Option<ElementId> {
        self.sandwich[i * self.index + j]
    }

    pub fn sandwich(&self) -> &[Option<ElementId>] {
        &self.sandwich
    }

    /// `|I|²·|G| + 1`.
    pub fn semigroup_size(&self) -> u128 {
        (self.index as u128).pow(2) * self.group.size() as u128 + 1
    }

    /// Regular *-semigroup iff every diagonal entry is the identity.
    pub fn has_identity_diagonal(&self) -> bool {
        (0..self.index).all(|i| self.entry(i, i) == Some(self.group.identity()))
    }

    /// Sub-spec on the listed (0-based, increasing) indices.
    pub fn submatrix(&self, keep: &[usize]) -> Result<Self> {
        let mut sandwich = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                if i >= self.index || j >= self.index {
                    return Err(Error::InvalidArgument(format!("index {} out of range", i.max(j) + 1)));
                }
                sandwich.push(self.entry(i, j));
            }
        }
        Self::new(keep.len(), self.group.clone(), sandwich)
    }

    /// The same zero pattern over the trivial group.
    pub fn trivialize(&self) -> Self {
        ReesSpec {
            index: self.index,
            group: GroupTable::trivial(),
            sandwich: self.sandwich.iter().map(|p| p.map(|_| 0)).collect(),
        }
    }

    pub fn semigroup(&self) -> ReesSemigroup {
        ReesSemigroup { spec: self.clone() }
    }

    /// Text form: `rees |I| |G|`, the group table, then the sandwich rows.
    /// Group elements are written 1-based so that `0` is the zero entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("rees {} {}\n", self.index, self.group.size());
        let g = self.group.size();
        for a in 0..g {
            let row: Vec<String> = (0..g)
                .map(|b| (self.group.mul_table()[a * g + b] + 1).to_string())
                .collect();
            writeln!(out, "{}", row.join(" ")).expect("string write");
        }
        for i in 0..self.index {
            let row: Vec<String> = (0..self.index)
                .map(|j| self.entry(i, j).map_or("0".to_string(), |x| (x + 1).to_string()))
                .collect();
            writeln!(out, "{}", row.join(" ")).expect("string write");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Format {
            line: 1,
            msg: "empty input".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "rees" {
            return Err(Error::Format {
                line,
                msg: "expected `rees |I| |G|`".into(),
            });
        }
        let num = |s: &str, line: usize| -> Result<usize> {
            s.parse().map_err(|_| Error::Format {
                line,
                msg: format!("`{s}` is not a number"),
            })
        };
        let (index, order) = (num(fields[1], line)?, num(fields[2], line)?);
        let mut row = |width: usize| -> Result<(usize, Vec<usize>)> {
            let (line, text) = lines.next().ok_or(Error::Format {
                line: 0,
                msg: "unexpected end of input".into(),
            })?;
            let values = text
                .split_whitespace()
                .map(|s| num(s, line))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != width {
                return Err(Error::Format {
                    line,
                    msg: format!("expected {width} entries, found {}", values.len()),
                });
            }
            Ok((line, values))
        };
        let mut mul = Vec::with_capacity(order * order);
        for _ in 0..order {
            let (line, values) = row(order)?;
            for v in values {
                if v == 0 || v > order {
                    return Err(Error::Format {
                        line,
                        msg: format!("group id {v} outside 1..{order}"),
                    });
                }
                mul.push((v - 1) as ElementId);
            }
        }
        let group = GroupTable::new(order, mul, None)?;
        let mut sandwich = Vec::with_capacity(index * index);
        for _ in 0..index {
            let (line, values) = row(index)?;
            for v in values {
                if v > order {
                    return Err(Error::Format {
                        line,
                        msg: format!("sandwich entry {v} outside 0..{order}"),
                    });
                }
                sandwich.push(v.checked_sub(1).map(|x| x as ElementId));
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Format {
                line,
                msg: "trailing input".into(),
            });
        }
        Self::new(index, group, sandwich)
    }
}

/// Unary Rees matrix semigroup with multiplication computed from a `ReesSpec`.
///
/// `(i,g,j)` has id `(i·|G| + g)·|I| + j`; zero is the last id.
#[derive(Clone, Debug)]
pub struct ReesSemigroup {
    spec: ReesSpec,
}

impl ReesSemigroup {
    pub fn spec(&self) -> &ReesSpec {
        &self.spec
    }

    pub fn zero(&self) -> ElementId {
        (self.spec.semigroup_size() - 1) as ElementId
    }

    #[inline]
    pub fn encode(&self, i: usize, g: ElementId, j: usize) -> ElementId {
        ((i * self.spec.group.size() + g as usize) * self.spec.index + j) as ElementId
    }

    #[inline]
    pub fn decode(&self, id: ElementId) -> Option<(usize, ElementId, usize)> {
        if id == self.zero() {
            return None;
        }
        let n = self.spec.index;
        let id = id as usize;
        let j = id % n;
        let rest = id / n;
        Some((
            rest / self.spec.group.size(),
            (rest % self.spec.group.size()) as ElementId,
            j,
        ))
    }

    /// Tabulates the structure; refuses above [`TABULATION_LIMIT`] elements.
    pub fn to_table(&self) -> Result<FiniteUnarySemigroup> {
        let size = self.spec.semigroup_size();
        if size > TABULATION_LIMIT as u128 {
            return Err(Error::SizeCap {
                size,
                cap: TABULATION_LIMIT as u128,
            });
        }
        FiniteUnarySemigroup::tabulate(self)
    }
}

impl UnarySemigroup for ReesSemigroup {
    fn size(&self) -> usize {
        self.spec.semigroup_size() as usize
    }

    fn arity(&self) -> usize {
        1
    }

    #[inline]
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        let (Some((i, g, j)), Some((k, h, l))) = (self.decode(a), self.decode(b)) else {
            return self.zero();
        };
        match self.spec.entry(j, k) {
            Some(p) => {
                let grp = &self.spec.group;
                self.encode(i, grp.mul(grp.mul(g, p), h), l)
            }
            None => self.zero(),
        }
    }

    #[inline]
    fn star(&self, _table: usize, a: ElementId) -> ElementId {
        match self.decode(a) {
            Some((i, g, j)) => self.encode(j, self.spec.group.inv(g), i),
            None => a,
        }
    }

    fn label(&self, a: ElementId) -> String {
        match self.decode(a) {
            None => "0".into(),
            Some((i, _, j)) if self.spec.group.size() == 1 => format!("({},{})", i + 1, j + 1),
            Some((i, g, j)) => format!("({},{},{})", i + 1, self.spec.group.label(g), j + 1),
        }
    }
}
