//! Unary terms and involutory words: parsing, evaluation, exhaustive
//! identity checking, Zimin words, substitutions and bounded isoterm search.
//!
//! Term grammar: juxtaposition is concatenation (nested to the right),
//! postfix `'` is the first star, postfix `"` the second, postfix `^N`
//! a power, and parentheses group. Identities are written `u = v`.

mod engine;
mod isoterm;
mod term;
mod word;

pub use engine::{
    assignment_space, check_identities, check_identity, evaluate, CompiledTerms, IdentityVerdict, Witness,
};
pub use isoterm::{isoterm_search, IsotermReport};
pub use term::{natural_cmp, parse_identity, sort_vars, UnaryTerm};
pub use word::{zimin, InvolutoryWord, Letter, Substitution, WordSubstitution, ZiminVariant};

/// `ω(t) = t* (t t*)^(d-1)`; for `d = 1` this is `t*`.
pub fn omega(t: &UnaryTerm, d: u64) -> UnaryTerm {
    assert!(d >= 1, "omega exponent starts at 1");
    let star = t.clone().star();
    if d == 1 {
        return star;
    }
    UnaryTerm::concat(star.clone(), UnaryTerm::concat(t.clone(), star).pow(d - 1))
}

/// Parses a term for a structure with `arity` unary operations.
pub fn parse_term(text: &str, arity: usize) -> crate::Result<UnaryTerm> {
    UnaryTerm::parse(text, arity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_shape() {
        let x = UnaryTerm::var("x");
        assert_eq!(omega(&x, 1).to_string(), "x'");
        assert_eq!(omega(&x, 3).len(), 5);
        assert_eq!(omega(&x, 2).to_string(), "x' x x'");
    }
}
