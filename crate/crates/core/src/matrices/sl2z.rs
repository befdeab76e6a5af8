use std::collections::HashMap;

use num_bigint::BigInt;

use crate::{Error, Result};

/// Longest word length accepted by the probes.
pub const SL2Z_MAX_WORD_LENGTH: usize = 20;

type Mat = [BigInt; 4];

/// `ζ = [[1,0],[2,1]]`, `η = [[1,2],[0,1]]` and their inverses, written
/// `z`, `h`, `Z`, `H`.
const LETTERS: [(char, [i64; 4]); 4] = [
    ('z', [1, 0, 2, 1]),
    ('h', [1, 2, 0, 1]),
    ('Z', [1, 0, -2, 1]),
    ('H', [1, -2, 0, 1]),
];

fn inverse_letter(c: usize) -> usize {
    (c + 2) % 4
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

fn letter(c: usize) -> Mat {
    LETTERS[c].1.map(BigInt::from)
}

pub fn zeta() -> [i64; 4] {
    LETTERS[0].1
}

pub fn eta() -> [i64; 4] {
    LETTERS[1].1
}

/// Outcome of a bounded freeness probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProbe {
    pub max_len: usize,
    pub words: u64,
    /// Two distinct words with equal matrices, if found.
    pub collision: Option<(String, String)>,
}

impl FreeProbe {
    pub fn is_free(&self) -> bool {
        self.collision.is_none()
    }
}

/// Evaluates every reduced word over `ζ, η, ζ⁻¹, η⁻¹` of length at most
/// `max_len` (the empty word included) and looks for two with equal value.
pub fn sl2z_free_probe(max_len: usize) -> Result<FreeProbe> {
    probe(max_len, &[0, 1, 2, 3])
}

/// The same probe over the positive words in `ζ, η` only.
pub fn sl2z_positive_probe(max_len: usize) -> Result<FreeProbe> {
    probe(max_len, &[0, 1])
}

fn probe(max_len: usize, alphabet: &[usize]) -> Result<FreeProbe> {
    if max_len > SL2Z_MAX_WORD_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "word length {max_len} exceeds {SL2Z_MAX_WORD_LENGTH}"
        )));
    }
    let identity: Mat = [1, 0, 0, 1].map(BigInt::from);
    let mut seen: HashMap<Mat, String> = HashMap::new();
    seen.insert(identity.clone(), String::new());
    let mut layer: Vec<(String, Option<usize>, Mat)> = vec![(String::new(), None, identity)];
    let mut words = 1u64;
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for (word, last, value) in &layer {
            for &c in alphabet {
                if last.is_some_and(|l| inverse_letter(l) == c) {
                    continue;
                }
                let mut w = word.clone();
                w.push(LETTERS[c].0);
                let v = mat_mul(value, &letter(c));
                words += 1;
                if let Some(prev) = seen.get(&v) {
                    return Ok(FreeProbe {
                        max_len,
                        words,
                        collision: Some((prev.clone(), w)),
                    });
                }
                seen.insert(v.clone(), w.clone());
                next.push((w, Some(c), v));
            }
        }
        layer = next;
    }
    Ok(FreeProbe {
        max_len,
        words,
        collision: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_is_zeta_transposed() {
        let (z, h) = (zeta(), eta());
        assert_eq!([z[0], z[2], z[1], z[3]], h);
        assert_ne!(z, h);
    }

    #[test]
    fn short_probes() {
        let p = sl2z_positive_probe(3).unwrap();
        assert!(p.is_free());
        assert_eq!(p.words, 1 + 2 + 4 + 8);
        let f = sl2z_free_probe(4).unwrap();
        assert!(f.is_free());
        assert_eq!(f.words, 1 + 4 + 12 + 36 + 108);
        assert!(sl2z_free_probe(21).is_err());
    }
}
