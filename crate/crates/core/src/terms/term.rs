use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A unary semigroup term: variables, products and star applications.
///
/// Star indices are 1 (`'`) and 2 (`"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UnaryTerm {
    Var(String),
    Concat(Box<UnaryTerm>, Box<UnaryTerm>),
    Star(Box<UnaryTerm>, u8),
}

impl UnaryTerm {
    pub fn var(name: impl Into<String>) -> Self {
        UnaryTerm::Var(name.into())
    }

    pub fn concat(left: UnaryTerm, right: UnaryTerm) -> Self {
        UnaryTerm::Concat(Box::new(left), Box::new(right))
    }

    pub fn star(self) -> Self {
        UnaryTerm::Star(Box::new(self), 1)
    }

    pub fn star_k(self, k: u8) -> Self {
        UnaryTerm::Star(Box::new(self), k)
    }

    /// Right-nested product of a nonempty sequence.
    pub fn product(terms: impl IntoIterator<Item = UnaryTerm>) -> Option<Self> {
        let mut items: Vec<UnaryTerm> = terms.into_iter().collect();
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = UnaryTerm::concat(t, acc);
        }
        Some(acc)
    }

    /// `t^n` as a balanced product, so equal halves are shared after interning.
    pub fn pow(&self, n: u64) -> Self {
        assert!(n >= 1, "powers start at 1");
        if n == 1 {
            return self.clone();
        }
        let half = n / 2;
        UnaryTerm::concat(self.pow(half), self.pow(n - half))
    }

    /// Number of variable leaves.
    pub fn len(&self) -> usize {
        match self {
            UnaryTerm::Var(_) => 1,
            UnaryTerm::Concat(a, b) => a.len() + b.len(),
            UnaryTerm::Star(a, _) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_star_index(&self) -> u8 {
        match self {
            UnaryTerm::Var(_) => 0,
            UnaryTerm::Concat(a, b) => a.max_star_index().max(b.max_star_index()),
            UnaryTerm::Star(a, k) => (*k).max(a.max_star_index()),
        }
    }

    /// Distinct variable names in natural order (`x2` before `x10`).
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        sort_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            UnaryTerm::Var(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            UnaryTerm::Concat(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            UnaryTerm::Star(a, _) => a.collect_vars(out),
        }
    }

    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            arity,
        };
        let term = parser.term()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected input"));
        }
        Ok(term)
    }
}

/// Parses `"u = v"` into its two sides.
pub fn parse_identity(text: &str, arity: usize) -> Result<(UnaryTerm, UnaryTerm)> {
    let Some(eq) = text.find('=') else {
        return Err(Error::Parse {
            pos: text.len(),
            msg: "expected '=' between the two sides".into(),
        });
    };
    if text[eq + 1..].contains('=') {
        return Err(Error::Parse {
            pos: eq + 1 + text[eq + 1..].find('=').unwrap(),
            msg: "more than one '='".into(),
        });
    }
    let lhs = UnaryTerm::parse(&text[..eq], arity)?;
    let rhs = UnaryTerm::parse(&text[eq + 1..], arity).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + eq + 1, msg },
        other => other,
    })?;
    Ok((lhs, rhs))
}

/// Orders identifiers with numeric suffixes by value: `x1 < x2 < x10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let split = |s: &str| {
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (stem, num) = s.split_at(s.len() - digits);
        (
            stem.to_string(),
            num.trim_start_matches('0').len(),
            num.trim_start_matches('0').to_string(),
            num.len(),
        )
    };
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

pub fn sort_vars(vars: &mut [String]) {
    vars.sort_by(|a, b| natural_cmp(a, b));
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn starts_factor(c: u8) -> bool {
        c == b'(' || c.is_ascii_alphabetic() || c == b'_'
    }

    fn term(&mut self) -> Result<UnaryTerm> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if !Self::starts_factor(c) {
                break;
            }
            factors.push(self.factor()?);
        }
        UnaryTerm::product(factors).ok_or_else(|| self.error("expected a variable or '('"))
    }

    fn factor(&mut self) -> Result<UnaryTerm> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    t = t.star_k(1);
                }
                Some(b'"') => {
                    if self.arity < 2 {
                        return Err(self.error("second star used with a single unary operation"));
                    }
                    self.pos += 1;
                    t = t.star_k(2);
                }
                Some(b'^') => {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let n: u64 = digits.parse().map_err(|_| Error::Parse {
                        pos: start,
                        msg: "expected an exponent".into(),
                    })?;
                    if n == 0 {
                        return Err(Error::Parse {
                            pos: start,
                            msg: "exponent must be at least 1".into(),
                        });
                    }
                    t = t.pow(n);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<UnaryTerm> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(UnaryTerm::Var(
                    String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                ))
            }
            _ => Err(self.error("expected a variable or '('")),
        }
    }
}

impl fmt::Display for UnaryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnaryTerm::Var(name) => write!(f, "{name}"),
            UnaryTerm::Concat(a, b) => {
                if matches!(**a, UnaryTerm::Concat(..)) {
                    write!(f, "({a}) {b}")
                } else {
                    write!(f, "{a} {b}")
                }
            }
            UnaryTerm::Star(a, k) => {
                let mark = if *k == 2 { '"' } else { '\'' };
                if matches!(**a, UnaryTerm::Concat(..)) {
                    write!(f, "({a}){mark}")
                } else {
                    write!(f, "{a}{mark}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> UnaryTerm {
        UnaryTerm::var(name)
    }

    #[test]
    fn juxtaposition_nests_to_the_right() {
        let t = UnaryTerm::parse("x x' x", 1).unwrap();
        assert_eq!(t, UnaryTerm::concat(v("x"), UnaryTerm::concat(v("x").star(), v("x"))));
        assert_eq!(t.to_string(), "x x' x");
    }

    #[test]
    fn star_of_group() {
        let t = UnaryTerm::parse("(x y)'", 1).unwrap();
        assert_eq!(t, UnaryTerm::concat(v("x"), v("y")).star());
        assert_eq!(t.to_string(), "(x y)'");
    }

    #[test]
    fn second_star_needs_arity_two() {
        let err = UnaryTerm::parse("x (x x')\" ", 1).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 8, .. }));
        assert_eq!(UnaryTerm::parse("x\"", 2).unwrap(), v("x").star_k(2));
    }

    #[test]
    fn powers_expand() {
        let t = UnaryTerm::parse("(x x')^3", 1).unwrap();
        assert_eq!(t.len(), 6);
        let round = UnaryTerm::parse(&t.to_string(), 1).unwrap();
        assert_eq!(round, t);
        assert!(UnaryTerm::parse("x^0", 1).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(UnaryTerm::parse("x (y", 1), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(UnaryTerm::parse("", 1), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(UnaryTerm::parse("x ) y", 1), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn identity_sides() {
        let (u, w) = parse_identity("x y = y x", 1).unwrap();
        assert_eq!(u.vars(), vec!["x", "y"]);
        assert_eq!(w.to_string(), "y x");
        assert!(matches!(parse_identity("x = (", 1), Err(Error::Parse { pos: 5, .. })));
        assert!(parse_identity("x y", 1).is_err());
    }

    #[test]
    fn natural_variable_order() {
        let mut names: Vec<String> = ["x10", "x2", "y", "x1", "x"].iter().map(|s| s.to_string()).collect();
        sort_vars(&mut names);
        assert_eq!(names, vec!["x", "x1", "x2", "x10", "y"]);
    }
}
