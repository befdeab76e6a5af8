use std::collections::HashMap;
use std::fmt;

use super::term::sort_vars;
use super::UnaryTerm;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub starred: bool,
}

impl Letter {
    pub fn plain(name: impl Into<String>) -> Self {
        Letter {
            name: name.into(),
            starred: false,
        }
    }

    pub fn starred(name: impl Into<String>) -> Self {
        Letter {
            name: name.into(),
            starred: true,
        }
    }

    pub fn flip(&self) -> Self {
        Letter {
            name: self.name.clone(),
            starred: !self.starred,
        }
    }
}

/// A nonempty word over `X ∪ X*`: the normal form of terms in the free
/// involutory semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvolutoryWord {
    letters: Vec<Letter>,
}

impl InvolutoryWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("involutory words are nonempty".into()));
        }
        Ok(InvolutoryWord { letters })
    }

    /// Word of plain letters.
    pub fn plain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| Letter::plain(n.as_ref())).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(x₁⋯x_m)* = x_m*⋯x₁*`.
    pub fn star(&self) -> Self {
        InvolutoryWord {
            letters: self.letters.iter().rev().map(Letter::flip).collect(),
        }
    }

    pub fn concat(&self, other: &InvolutoryWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        InvolutoryWord { letters }
    }

    pub fn has_starred_letter(&self) -> bool {
        self.letters.iter().any(|l| l.starred)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for l in &self.letters {
            if !names.contains(&l.name) {
                names.push(l.name.clone());
            }
        }
        sort_vars(&mut names);
        names
    }

    /// Drops the last letter; `None` for a one-letter word.
    pub fn without_last(&self) -> Option<Self> {
        (self.letters.len() > 1).then(|| InvolutoryWord {
            letters: self.letters[..self.letters.len() - 1].to_vec(),
        })
    }

    pub fn is_prefix_of(&self, other: &InvolutoryWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, other: &InvolutoryWord) -> bool {
        other.letters.ends_with(&self.letters)
    }

    /// Left-nested product of the letters, so every prefix is a subterm.
    pub fn to_term(&self) -> UnaryTerm {
        let letter_term = |l: &Letter| {
            let v = UnaryTerm::var(l.name.clone());
            if l.starred {
                v.star()
            } else {
                v
            }
        };
        let mut iter = self.letters.iter();
        let mut acc = letter_term(iter.next().expect("nonempty"));
        for l in iter {
            acc = UnaryTerm::concat(acc, letter_term(l));
        }
        acc
    }

    /// Normal form of a one-star term under the involution laws.
    pub fn from_term(t: &UnaryTerm) -> Result<Self> {
        fn walk(t: &UnaryTerm, starred: bool, out: &mut Vec<Letter>) -> Result<()> {
            match t {
                UnaryTerm::Var(name) => out.push(Letter {
                    name: name.clone(),
                    starred,
                }),
                UnaryTerm::Concat(a, b) => {
                    let (first, second) = if starred { (b, a) } else { (a, b) };
                    walk(first, starred, out)?;
                    walk(second, starred, out)?;
                }
                UnaryTerm::Star(a, 1) => walk(a, !starred, out)?,
                UnaryTerm::Star(_, k) => {
                    return Err(Error::ArityMismatch(format!("star {k} has no involutory word form")))
                }
            }
            Ok(())
        }
        let mut letters = Vec::new();
        walk(t, false, &mut letters)?;
        Self::new(letters)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_term(&UnaryTerm::parse(text, 1)?)
    }
}

impl fmt::Display for InvolutoryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", l.name, if l.starred { "'" } else { "" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZiminVariant {
    Full,
    /// `Z_n'`: `Z_n` without its final `x₁`.
    Prefix,
}

/// `Z₁ = x1`, `Z_{n+1} = Z_n x_{n+1} Z_n`.
pub fn zimin(n: usize, variant: ZiminVariant) -> Result<InvolutoryWord> {
    if n == 0 {
        return Err(Error::InvalidArgument("Zimin words start at n = 1".into()));
    }
    let mut letters = vec![Letter::plain("x1")];
    for i in 2..=n {
        let prev = letters.clone();
        letters.push(Letter::plain(format!("x{i}")));
        letters.extend(prev);
    }
    let full = InvolutoryWord { letters };
    match variant {
        ZiminVariant::Full => Ok(full),
        ZiminVariant::Prefix => full
            .without_last()
            .ok_or_else(|| Error::InvalidArgument("Z_1 has no proper prefix word".into())),
    }
}

/// Variable-to-term replacement.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    pub map: HashMap<String, UnaryTerm>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, term: UnaryTerm) -> Self {
        self.map.insert(name.into(), term);
        self
    }

    pub fn apply(&self, t: &UnaryTerm) -> Result<UnaryTerm> {
        Ok(match t {
            UnaryTerm::Var(name) => self
                .map
                .get(name)
                .cloned()
                .ok_or_else(|| Error::MissingVariable(name.clone()))?,
            UnaryTerm::Concat(a, b) => UnaryTerm::concat(self.apply(a)?, self.apply(b)?),
            UnaryTerm::Star(a, k) => self.apply(a)?.star_k(*k),
        })
    }
}

/// Letter-to-word replacement respecting the involution: a starred letter
/// `x*` becomes `σ(x)*`.
#[derive(Clone, Debug, Default)]
pub struct WordSubstitution {
    pub map: HashMap<String, InvolutoryWord>,
}

impl WordSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, word: InvolutoryWord) -> Self {
        self.map.insert(name.into(), word);
        self
    }

    /// `σ(x) = x*` for the listed variables and `σ(x) = x` otherwise.
    pub fn star_flip<S: AsRef<str>>(flipped: &[S]) -> Self {
        let map = flipped
            .iter()
            .map(|n| {
                (
                    n.as_ref().to_string(),
                    InvolutoryWord {
                        letters: vec![Letter::starred(n.as_ref())],
                    },
                )
            })
            .collect();
        WordSubstitution { map }
    }

    /// Flips exactly the variables that occur starred somewhere in `w`.
    pub fn star_flip_for(w: &InvolutoryWord) -> Self {
        let mut flipped: Vec<String> = w.letters.iter().filter(|l| l.starred).map(|l| l.name.clone()).collect();
        flipped.dedup();
        Self::star_flip(&flipped)
    }

    pub fn apply(&self, w: &InvolutoryWord) -> InvolutoryWord {
        let mut letters = Vec::new();
        for l in &w.letters {
            match self.map.get(&l.name) {
                Some(image) if l.starred => letters.extend(image.star().letters),
                Some(image) => letters.extend(image.letters.iter().cloned()),
                None => letters.push(l.clone()),
            }
        }
        InvolutoryWord { letters }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zimin_words() {
        assert_eq!(zimin(2, ZiminVariant::Full).unwrap().to_string(), "x1 x2 x1");
        assert_eq!(zimin(3, ZiminVariant::Full).unwrap().len(), 7);
        assert_eq!(zimin(3, ZiminVariant::Prefix).unwrap().to_string(), "x1 x2 x1 x3 x1 x2");
        assert!(zimin(1, ZiminVariant::Prefix).is_err());
    }

    #[test]
    fn star_reverses_and_flips() {
        let w = InvolutoryWord::parse("x y'").unwrap();
        assert_eq!(w.star().to_string(), "y x'");
        assert_eq!(w.star().star(), w);
    }

    #[test]
    fn normal_form_of_terms() {
        let w = InvolutoryWord::parse("(x y')' z''").unwrap();
        assert_eq!(w.to_string(), "y x' z");
        assert_eq!(InvolutoryWord::from_term(&w.to_term()).unwrap(), w);
    }

    #[test]
    fn star_flip_removes_stars() {
        let p = InvolutoryWord::parse("x y'").unwrap();
        let sigma = WordSubstitution::star_flip(&["y"]);
        assert_eq!(sigma.apply(&p).to_string(), "x y");
        assert_eq!(sigma.apply(&sigma.apply(&p)), p);
        assert!(!WordSubstitution::star_flip_for(&p).apply(&p).has_starred_letter());
    }

    #[test]
    fn term_substitution() {
        let u = UnaryTerm::parse("x y", 1).unwrap();
        let sigma = Substitution::new()
            .with("x", UnaryTerm::parse("a b", 1).unwrap())
            .with("y", UnaryTerm::parse("b'", 1).unwrap());
        assert_eq!(sigma.apply(&u).unwrap().to_string(), "(a b) b'");
        assert!(matches!(Substitution::new().apply(&u), Err(Error::MissingVariable(_))));
    }
}
