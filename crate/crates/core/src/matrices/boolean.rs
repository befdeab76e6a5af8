use std::fmt;

use crate::{Error, Result};

/// Largest supported Boolean dimension (`n² ≤ 64` bits).
pub const BOOL_DIMENSION_CAP: usize = 8;

/// `n×n` matrix over `({0,1}, max, min)`; entry `(i,j)` is bit `i·n + j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatrix {
    n: u8,
    bits: u64,
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<&str> = (0..self.n()).map(|j| if self.get(i, j) { "1" } else { "0" }).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl BoolMatrix {
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > BOOL_DIMENSION_CAP {
            return Err(Error::Dimension(format!(
                "Boolean dimension {n} outside 1..={BOOL_DIMENSION_CAP}"
            )));
        }
        if n * n < 64 && bits >> (n * n) != 0 {
            return Err(Error::Dimension(format!("bits {bits:#x} exceed a {n}x{n} matrix")));
        }
        Ok(BoolMatrix { n: n as u8, bits })
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("Boolean matrix must be square".into()));
        }
        let mut bits = 0u64;
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::InvalidArgument(format!("Boolean entry {x}")));
                }
                bits |= (x as u64) << (i * n + j);
            }
        }
        Self::from_bits(n, bits)
    }

    /// Parses a literal such as `[[1,1],[0,1]]`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("Boolean literal `{text}`: {msg}"),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| bad("expected [[..],..]"))?;
        let rows: Vec<Vec<u8>> = inner
            .split("],[")
            .map(|row| {
                row.split(',')
                    .map(|a| a.parse::<u8>().map_err(|_| bad("bad entry")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
        Self::from_rows(&refs)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_bits(n, 0).expect("valid dimension")
    }

    pub fn identity(n: usize) -> Self {
        let bits = (0..n).fold(0u64, |acc, i| acc | 1 << (i * n + i));
        Self::from_bits(n, bits).expect("valid dimension")
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits >> (i * self.n() + j) & 1 == 1
    }

    #[inline]
    fn row_mask(&self, i: usize) -> u64 {
        (self.bits >> (i * self.n())) & ((1u64 << self.n()) - 1)
    }

    /// Boolean product: row `i` of `AB` is the union of the rows of `B`
    /// selected by row `i` of `A`.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.n();
        let mut bits = 0u64;
        for i in 0..n {
            let mut sel = self.row_mask(i);
            let mut row = 0u64;
            while sel != 0 {
                let k = sel.trailing_zeros() as usize;
                row |= other.row_mask(k);
                sel &= sel - 1;
            }
            bits |= row << (i * n);
        }
        BoolMatrix { n: self.n, bits }
    }

    pub fn transpose(&self) -> Self {
        self.map_positions(|i, j| (j, i))
    }

    /// Reflection in the secondary diagonal, `J Aᵀ J`.
    pub fn anti_diag(&self) -> Self {
        let n = self.n();
        self.map_positions(|i, j| (n - 1 - j, n - 1 - i))
    }

    /// Entry `(i,j)` of the result is entry `source(i,j)` of `self`.
    fn map_positions(&self, source: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let n = self.n();
        let mut bits = 0u64;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = source(i, j);
                if self.get(a, b) {
                    bits |= 1 << (i * n + j);
                }
            }
        }
        BoolMatrix { n: self.n, bits }
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n()).all(|i| (0..i).all(|j| !self.get(i, j)))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.n()).all(|i| self.get(i, i))
    }

    /// Perfect matching in the row/column bipartite graph (Kuhn's
    /// augmenting paths).
    pub fn is_hall(&self) -> bool {
        let n = self.n();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        (0..n).all(|row| {
            let mut seen = vec![false; n];
            self.augment(row, &mut seen, &mut owner)
        })
    }

    fn augment(&self, row: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for col in 0..self.n() {
            if self.get(row, col) && !seen[col] {
                seen[col] = true;
                if owner[col].is_none_or(|r| self.augment(r, seen, owner)) {
                    owner[col] = Some(row);
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let a = BoolMatrix::parse("[[1,1],[0,1]]").unwrap();
        assert_eq!(a.mul(&a), a);
        let e12 = BoolMatrix::parse("[[0,1],[0,0]]").unwrap();
        assert_eq!(e12.mul(&e12), BoolMatrix::zero(2));
        assert_eq!(a.mul(&BoolMatrix::identity(2)), a);
        assert_eq!(a.to_string(), "[[1,1],[0,1]]");
    }

    #[test]
    fn reflections() {
        let a = BoolMatrix::parse("[[1,1],[0,1]]").unwrap();
        assert_eq!(a.anti_diag(), a);
        assert_eq!(a.transpose().to_string(), "[[1,0],[1,1]]");
        let b = BoolMatrix::parse("[[1,1,0],[0,0,1],[0,0,0]]").unwrap();
        assert_eq!(b.anti_diag().to_string(), "[[0,1,0],[0,0,1],[0,0,1]]");
    }

    #[test]
    fn hall_examples() {
        assert!(BoolMatrix::identity(3).is_hall());
        assert!(!BoolMatrix::zero(3).is_hall());
        assert!(BoolMatrix::parse("[[1,1],[1,0]]").unwrap().is_hall());
        assert!(!BoolMatrix::parse("[[1,1,1],[1,0,0],[1,0,0]]").unwrap().is_hall());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BoolMatrix::parse("[[1,2],[0,1]]").is_err());
        assert!(BoolMatrix::from_bits(2, 1 << 4).is_err());
        assert!(BoolMatrix::from_bits(9, 0).is_err());
    }
}
