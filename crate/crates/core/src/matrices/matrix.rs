use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FieldElement, InvolutiveField};
use crate::{Error, Result};

/// Rectangular matrix over an [`InvolutiveField`], entries row-major.
#[derive(Clone)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: Arc<InvolutiveField>,
}

impl PartialEq for FieldMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for FieldMatrix {}

impl Hash for FieldMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// Elimination result: the reduced row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn new(field: &Arc<InvolutiveField>, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&a| a >= field.size()) {
            return Err(Error::Field(format!("{bad} is not an element of {field}")));
        }
        Ok(FieldMatrix {
            rows,
            cols,
            entries,
            field: Arc::clone(field),
        })
    }

    pub fn square(field: &Arc<InvolutiveField>, n: usize, entries: Vec<FieldElement>) -> Result<Self> {
        Self::new(field, n, n, entries)
    }

    pub fn zero(field: &Arc<InvolutiveField>, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field: Arc::clone(field),
        }
    }

    pub fn identity(field: &Arc<InvolutiveField>, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Parses a literal such as `[[1,0],[2,1]]`.
    pub fn parse(field: &Arc<InvolutiveField>, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("matrix literal `{text}`: {msg}"),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| bad("expected [[..],..]"))?;
        let rows: Vec<Vec<FieldElement>> = inner
            .split("],[")
            .map(|row| {
                row.split(',')
                    .map(|a| a.parse::<FieldElement>().map_err(|_| bad("bad entry")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(bad("ragged rows"));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> &Arc<InvolutiveField> {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    fn build_like(&self, rows: usize, cols: usize, f: impl Fn(usize, usize) -> FieldElement) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        FieldMatrix {
            rows,
            cols,
            entries,
            field: Arc::clone(&self.field),
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::Field(format!("{} and {} differ", self.field, other.field)))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.product(other))
    }

    /// Product without the dimension and field checks.
    pub(crate) fn product(&self, other: &Self) -> Self {
        let f = &*self.field;
        self.build_like(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), other.get(k, j))))
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("sum of matrices of different shapes".into()));
        }
        Ok(self.build_like(self.rows, self.cols, |i, j| {
            self.field.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        self.build_like(self.rows, self.cols, |i, j| self.field.mul(c, self.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        self.build_like(self.rows, self.cols, |i, j| self.field.neg(self.get(i, j)))
    }

    pub fn transpose(&self) -> Self {
        self.build_like(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise involution.
    pub fn conj(&self) -> Self {
        self.build_like(self.rows, self.cols, |i, j| self.field.conj(self.get(i, j)))
    }

    /// `A* = (āᵢⱼ)ᵀ`.
    pub fn conj_transpose(&self) -> Self {
        self.build_like(self.cols, self.rows, |i, j| self.field.conj(self.get(j, i)))
    }

    /// `(a_ij^σ)ᵀ` for `σ: x ↦ x^{p^s}`.
    pub fn sigma_transpose(&self, s: u32) -> Self {
        self.build_like(self.cols, self.rows, |i, j| self.field.frobenius(self.get(j, i), s))
    }

    /// `(A B; C D) ↦ (Dᵀ −Bᵀ; −Cᵀ Aᵀ)` with `m×m` blocks.
    pub fn symplectic(&self) -> Result<Self> {
        if !self.is_square() || !self.rows.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "symplectic transpose needs even square size, got {}x{}",
                self.rows, self.cols
            )));
        }
        let m = self.rows / 2;
        Ok(self.build_like(self.rows, self.cols, |i, j| {
            let (bi, bj) = (i / m, j / m);
            let (li, lj) = (i % m, j % m);
            // block (bi,bj) of the result is the transpose of block (1-bj, 1-bi)
            let a = self.get((1 - bj) * m + lj, (1 - bi) * m + li);
            if bi == bj {
                a
            } else {
                self.field.neg(a)
            }
        }))
    }

    /// Reflection in the secondary diagonal, `J Aᵀ J`.
    pub fn anti_diag(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        self.build_like(c, r, |i, j| self.get(r - 1 - j, c - 1 - i))
    }

    /// Gauss-Jordan elimination with leftmost pivots.
    pub fn echelon(&self) -> Echelon {
        let f = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            for k in 0..self.cols {
                m.entries.swap(row * self.cols + k, p * self.cols + k);
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for k in 0..self.cols {
                m.entries[row * self.cols + k] = f.mul(inv, m.get(row, k));
            }
            for i in 0..self.rows {
                let factor = m.get(i, col);
                if i != row && factor != 0 {
                    for k in 0..self.cols {
                        let v = f.sub(m.get(i, k), f.mul(factor, m.get(row, k)));
                        m.entries[i * self.cols + k] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let augmented = self.build_like(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                (j - n == i) as FieldElement
            }
        });
        let Echelon { reduced, pivots } = augmented.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(self.build_like(n, n, |i, j| reduced.get(i, n + j)))
    }

    /// Columns `cols` of `self`.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        self.build_like(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    /// The first `count` rows.
    pub fn top_rows(&self, count: usize) -> Self {
        self.build_like(count, self.cols, |i, j| self.get(i, j))
    }
}
