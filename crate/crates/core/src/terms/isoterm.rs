use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{assignment_space, check_identity};
use super::word::{InvolutoryWord, Letter};
use crate::semigroup::{ElementId, UnarySemigroup};
use crate::{Error, Result};

/// Outcome of a bounded search for words `z ≠ w` with `S ⊨ w = z`.
///
/// Candidates use only the letters of `w` and their starred forms; words
/// with other letters are not examined.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsotermReport {
    pub word: String,
    pub max_len: usize,
    pub alphabet: Vec<String>,
    /// Words equal to `w` in `S`, shortest first, each re-verified exhaustively.
    pub found: Vec<String>,
    pub candidates: u64,
    /// Every candidate of length up to this bound was examined.
    pub complete_through: usize,
    /// Set when the budget stopped the search before `max_len`.
    pub inconclusive: bool,
}

impl IsotermReport {
    pub fn is_isoterm_evidence(&self) -> bool {
        self.found.is_empty() && !self.inconclusive
    }
}

/// Enumerates candidate words up to `max_len` and keeps those equal to `w`
/// under every assignment. `budget` bounds `candidates × assignments`;
/// lengths whose cost would exceed it are skipped as a whole.
pub fn isoterm_search<S: UnarySemigroup + ?Sized>(
    s: &S,
    w: &InvolutoryWord,
    max_len: usize,
    budget: u64,
) -> Result<IsotermReport> {
    if w.has_starred_letter() && s.arity() == 0 {
        return Err(Error::ArityMismatch(
            "word has starred letters but the structure has no star".into(),
        ));
    }
    let vars = w.vars();
    let mut alphabet = Vec::new();
    for v in &vars {
        alphabet.push(Letter::plain(v.clone()));
        if s.arity() > 0 {
            alphabet.push(Letter::starred(v.clone()));
        }
    }
    let n = s.size();
    let space = assignment_space(n, vars.len());
    if space > budget as u128 {
        return Ok(IsotermReport {
            word: w.to_string(),
            max_len,
            alphabet: alphabet.iter().map(letter_text).collect(),
            found: Vec::new(),
            candidates: 0,
            complete_through: 0,
            inconclusive: true,
        });
    }
    let space = space as usize;

    // Value of each letter under each assignment (lexicographic order).
    let letter_values: Vec<Vec<ElementId>> = alphabet
        .iter()
        .map(|l| {
            let pos = vars.iter().position(|v| *v == l.name).expect("letter of w");
            (0..space)
                .map(|idx| {
                    let digit = (idx / n.pow((vars.len() - 1 - pos) as u32)) % n;
                    let a = digit as ElementId;
                    if l.starred {
                        s.star(0, a)
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();
    let index_of = |l: &Letter| alphabet.iter().position(|a| a == l).expect("alphabet letter");
    let mut target = letter_values[index_of(&w.letters()[0])].clone();
    for l in &w.letters()[1..] {
        let lv = &letter_values[index_of(l)];
        for (t, &b) in target.iter_mut().zip(lv) {
            *t = s.mul(*t, b);
        }
    }

    let k = alphabet.len() as u128;
    let mut reach = 0usize;
    let mut spent: u128 = 0;
    for len in 1..=max_len {
        let cost = k.saturating_pow(len as u32).saturating_mul(space as u128);
        if spent.saturating_add(cost) > budget as u128 {
            break;
        }
        spent += cost;
        reach = len;
    }

    let ctx = Dfs {
        s,
        letter_values: &letter_values,
        target: &target,
        reach,
    };
    let per_first: Vec<(Vec<Vec<usize>>, u64)> = (0..alphabet.len())
        .into_par_iter()
        .map(|first| {
            let mut hits = Vec::new();
            let mut count = 0;
            if reach >= 1 {
                let mut prefix = vec![first];
                ctx.walk(&mut prefix, letter_values[first].clone(), &mut hits, &mut count);
            }
            (hits, count)
        })
        .collect();

    let mut hits: Vec<Vec<usize>> = Vec::new();
    let mut candidates = 0;
    for (h, c) in per_first {
        hits.extend(h);
        candidates += c;
    }
    hits.sort_by_key(|h| h.len());
    let w_term = w.to_term();
    let mut found = Vec::new();
    for h in hits {
        let z = InvolutoryWord::new(h.iter().map(|&i| alphabet[i].clone()).collect())?;
        if z == *w {
            continue;
        }
        let verdict = check_identity(s, &w_term, &z.to_term(), budget)?;
        if !verdict.holds() {
            return Err(Error::InvalidArgument(format!("candidate {z} failed re-verification")));
        }
        found.push(z.to_string());
    }
    Ok(IsotermReport {
        word: w.to_string(),
        max_len,
        alphabet: alphabet.iter().map(letter_text).collect(),
        found,
        candidates,
        complete_through: reach,
        inconclusive: reach < max_len,
    })
}

fn letter_text(l: &Letter) -> String {
    format!("{}{}", l.name, if l.starred { "'" } else { "" })
}

struct Dfs<'a, S: ?Sized> {
    s: &'a S,
    letter_values: &'a [Vec<ElementId>],
    target: &'a [ElementId],
    reach: usize,
}

impl<S: UnarySemigroup + ?Sized> Dfs<'_, S> {
    fn walk(&self, prefix: &mut Vec<usize>, values: Vec<ElementId>, hits: &mut Vec<Vec<usize>>, count: &mut u64) {
        *count += 1;
        if values == self.target {
            hits.push(prefix.clone());
        }
        if prefix.len() == self.reach {
            return;
        }
        for (l, lv) in self.letter_values.iter().enumerate() {
            let next: Vec<ElementId> = values.iter().zip(lv).map(|(&a, &b)| self.s.mul(a, b)).collect();
            prefix.push(l);
            self.walk(prefix, next, hits, count);
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::FiniteUnarySemigroup;
    use crate::terms::{zimin, ZiminVariant};

    #[test]
    fn trivial_structure_collapses_everything() {
        let one = FiniteUnarySemigroup::new(1, vec![0], vec![vec![0]], None).unwrap();
        let z2 = zimin(2, ZiminVariant::Full).unwrap();
        let r = isoterm_search(&one, &z2, 2, 1_000_000).unwrap();
        // 4 one-letter and 16 two-letter words
        assert_eq!(r.found.len(), 20);
        assert_eq!(r.candidates, 20);
        assert!(!r.is_isoterm_evidence());
    }

    #[test]
    fn budget_limits_length() {
        let one = FiniteUnarySemigroup::new(1, vec![0], vec![vec![0]], None).unwrap();
        let z2 = zimin(2, ZiminVariant::Full).unwrap();
        let r = isoterm_search(&one, &z2, 3, 20).unwrap();
        assert_eq!(r.complete_through, 2);
        assert!(r.inconclusive);
    }
}
