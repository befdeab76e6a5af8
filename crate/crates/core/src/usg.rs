//! The `.usg` text format:
//!
//! ```text
//! usg 1
//! elements N
//! unary K
//! <N rows of the multiplication table>
//! <K rows, one per unary table>
//! # label of element 0
//! # label of element 1
//! ...
//! ```
//!
//! Label lines are optional but, when present, there is one per element.

use std::fmt::Write as _;
use std::path::Path;

use crate::semigroup::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

pub fn usg_write(s: &FiniteUnarySemigroup) -> String {
    let n = s.size();
    let mut out = format!("usg 1\nelements {n}\nunary {}\n", s.arity());
    let row = |values: &[ElementId]| values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    for a in 0..n {
        writeln!(out, "{}", row(&s.mul_table()[a * n..(a + 1) * n])).expect("string write");
    }
    for table in s.star_tables() {
        writeln!(out, "{}", row(table)).expect("string write");
    }
    if let Some(labels) = s.labels() {
        for label in labels {
            writeln!(out, "# {label}").expect("string write");
        }
    }
    out
}

pub fn usg_read(text: &str) -> Result<FiniteUnarySemigroup> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(label) = line.strip_prefix('#') {
            labels.push(label.strip_prefix(' ').unwrap_or(label).to_string());
        } else if !line.trim().is_empty() {
            rows.push((i + 1, line.trim()));
        }
    }
    let mut rows = rows.into_iter();
    let mut header = |key: &str| -> Result<usize> {
        let (line, text) = rows.next().ok_or(Error::Format {
            line: 0,
            msg: format!("missing `{key}` line"),
        })?;
        text.strip_prefix(key)
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or(Error::Format {
                line,
                msg: format!("expected `{key} <number>`"),
            })
    };
    let version = header("usg")?;
    if version != 1 {
        return Err(Error::Format {
            line: 1,
            msg: format!("unsupported version {version}"),
        });
    }
    let n = header("elements")?;
    let k = header("unary")?;
    let mut table_row = || -> Result<Vec<ElementId>> {
        let (line, text) = rows.next().ok_or(Error::Format {
            line: 0,
            msg: "unexpected end of input".into(),
        })?;
        let values = text
            .split_whitespace()
            .map(|v| {
                v.parse::<ElementId>().map_err(|_| Error::Format {
                    line,
                    msg: format!("`{v}` is not an element id"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::Format {
                line,
                msg: format!("expected {n} entries, found {}", values.len()),
            });
        }
        if let Some(bad) = values.iter().find(|&&v| v as usize >= n) {
            return Err(Error::Format {
                line,
                msg: format!("element id {bad} out of range"),
            });
        }
        Ok(values)
    };
    let mut mul = Vec::with_capacity(n * n);
    for _ in 0..n {
        mul.extend(table_row()?);
    }
    let stars = (0..k).map(|_| table_row()).collect::<Result<Vec<_>>>()?;
    if let Some((line, _)) = rows.next() {
        return Err(Error::Format {
            line,
            msg: "trailing input".into(),
        });
    }
    let labels = match labels.len() {
        0 => None,
        m if m == n => Some(labels),
        m => {
            return Err(Error::Format {
                line: 0,
                msg: format!("{m} label lines for {n} elements"),
            })
        }
    };
    FiniteUnarySemigroup::new(n, mul, stars, labels)
}

pub fn usg_load(path: &Path) -> Result<FiniteUnarySemigroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    usg_read(&text)
}

pub fn usg_save(s: &FiniteUnarySemigroup, path: &Path) -> Result<()> {
    std::fs::write(path, usg_write(s))
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k3, tb};

    #[test]
    fn round_trip() {
        for s in [k3(), tb()] {
            let text = usg_write(&s);
            let back = usg_read(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(usg_write(&back), text);
        }
    }

    #[test]
    fn small_file() {
        let s = usg_read("usg 1\nelements 2\nunary 1\n0 0\n0 1\n0 1\n").unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.zero_id(), Some(0));
        assert!(s.labels().is_none());
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(
            usg_read("usg 2\nelements 1\nunary 0\n0\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(matches!(
            usg_read("usg 1\nelements 2\nunary 0\n0 0\n0 2\n"),
            Err(Error::Format { line: 5, .. })
        ));
        assert!(matches!(
            usg_read("usg 1\nelements 2\nunary 0\n0 0\n"),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            usg_read("usg 1\nelements 2\nunary 0\n1 0\n0 0\n"),
            Err(Error::NotASemigroup(_))
        ));
        assert!(usg_read("usg 1\nelements 1\nunary 0\n0\n# a\n# b\n").is_err());
    }
}
