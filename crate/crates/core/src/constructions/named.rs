use super::ReesSpec;
use crate::semigroup::{adjoin_identity, ElementId, FiniteUnarySemigroup};
use crate::{Error, Result};

pub const NAMED_STRUCTURES: [&str; 6] = ["k3", "tb", "ta", "a2", "b21_transpose", "k3_double"];

/// Sandwich rows `(e,e,e), (e,e,0), (e,0,e)` over the trivial group.
pub fn k3_spec() -> ReesSpec {
    ReesSpec::over_trivial_group(3, &[1, 1, 1, 1, 1, 0, 1, 0, 1]).expect("symmetric")
}

/// Sandwich `(0,e; e,0)`.
pub fn brandt_spec() -> ReesSpec {
    ReesSpec::over_trivial_group(2, &[0, 1, 1, 0]).expect("symmetric")
}

/// Sandwich `(0,e; e,e)`.
pub fn a2_spec() -> ReesSpec {
    ReesSpec::over_trivial_group(2, &[0, 1, 1, 1]).expect("symmetric")
}

/// K₃: ids `(1,1), (1,2), …, (3,3), 0`.
pub fn k3() -> FiniteUnarySemigroup {
    k3_spec().semigroup().to_table().expect("10 elements")
}

/// K₃ with its unary operation present twice.
pub fn k3_double() -> FiniteUnarySemigroup {
    let k = k3();
    let star = k.star_tables()[0].clone();
    k.with_stars(vec![star.clone(), star]).expect("same size")
}

/// The twisted Brandt monoid: ids `(1,1), (1,2), (2,1), (2,2), 0, 1`.
pub fn tb() -> FiniteUnarySemigroup {
    adjoin_identity(&brandt_spec().semigroup().to_table().expect("5 elements")).expect("valid")
}

/// A₂ with the Rees star: ids `(1,1), (1,2), (2,1), (2,2), 0`.
pub fn a2() -> FiniteUnarySemigroup {
    a2_spec().semigroup().to_table().expect("5 elements")
}

/// The twisted A₂¹: ids `(1,1), (1,2), (2,1), (2,2), 0, 1`.
pub fn ta() -> FiniteUnarySemigroup {
    adjoin_identity(&a2()).expect("valid")
}

type Mat2 = [[u8; 2]; 2];

const O: Mat2 = [[0, 0], [0, 0]];
const E11: Mat2 = [[1, 0], [0, 0]];
const E12: Mat2 = [[0, 1], [0, 0]];
const E21: Mat2 = [[0, 0], [1, 0]];
const E22: Mat2 = [[0, 0], [0, 1]];
const I2: Mat2 = [[1, 0], [0, 1]];

fn mat_mul(a: &Mat2, b: &Mat2) -> [[u32; 2]; 2] {
    let mut c = [[0u32; 2]; 2];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..2).map(|k| a[i][k] as u32 * b[k][j] as u32).sum();
        }
    }
    c
}

fn mat_label(m: &Mat2) -> String {
    format!("[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Six 0/1 matrices closed under the ordinary product, with the star given
/// as a permutation of their positions.
fn six_matrices(mats: [Mat2; 6], star: [ElementId; 6]) -> FiniteUnarySemigroup {
    let index = |m: [[u32; 2]; 2]| {
        mats.iter()
            .position(|x| (0..2).all(|i| (0..2).all(|j| x[i][j] as u32 == m[i][j])))
            .expect("closed under multiplication") as ElementId
    };
    let mut mul = Vec::with_capacity(36);
    for a in &mats {
        for b in &mats {
            mul.push(index(mat_mul(a, b)));
        }
    }
    FiniteUnarySemigroup::new(6, mul, vec![star.to_vec()], Some(mats.iter().map(mat_label).collect()))
        .expect("matrix multiplication is associative")
}

/// `B₂¹` as six matrices `O, E11, E12, E21, E22, I` under transposition.
pub fn b21_transpose() -> FiniteUnarySemigroup {
    six_matrices([O, E11, E12, E21, E22, I2], [0, 1, 3, 2, 4, 5])
}

/// `B₂¹` as six matrices whose star fixes `O, E12, E21, I` and swaps `E11, E22`.
pub fn tb_matrices() -> FiniteUnarySemigroup {
    six_matrices([O, E11, E12, E21, E22, I2], [0, 4, 2, 3, 1, 5])
}

/// The six matrices of the twisted `A₂¹`; the star swaps `E11` and
/// `[[0,1],[0,1]]` and fixes the rest.
pub fn ta_matrices() -> FiniteUnarySemigroup {
    let c1: Mat2 = [[1, 0], [1, 0]];
    let c2: Mat2 = [[0, 1], [0, 1]];
    six_matrices([O, E11, E12, c1, c2, I2], [0, 4, 2, 3, 1, 5])
}

pub fn named_semigroup(name: &str) -> Result<FiniteUnarySemigroup> {
    Ok(match name {
        "k3" => k3(),
        "tb" => tb(),
        "ta" => ta(),
        "a2" => a2(),
        "b21_transpose" => b21_transpose(),
        "k3_double" => k3_double(),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::UnarySemigroup;

    #[test]
    fn sizes_and_names() {
        for name in NAMED_STRUCTURES {
            named_semigroup(name).unwrap();
        }
        assert_eq!(k3().size(), 10);
        assert_eq!(tb().size(), 6);
        assert_eq!(k3_double().arity(), 2);
        assert!(matches!(named_semigroup("k4"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn tb_products() {
        let s = tb();
        let id = |l: &str| s.find_label(l).unwrap();
        assert_eq!(s.mul(id("(1,2)"), id("(2,1)")), id("0"));
        assert_eq!(s.mul(id("(1,1)"), id("(2,1)")), id("(1,1)"));
        assert_eq!(s.identity_id(), Some(id("1")));
        assert_eq!(s.zero_id(), Some(id("0")));
    }

    #[test]
    fn ta_products() {
        let s = ta();
        let id = |l: &str| s.find_label(l).unwrap();
        assert_eq!(s.mul(id("(1,1)"), id("(1,1)")), id("0"));
        assert_eq!(s.mul(id("(2,2)"), id("(2,2)")), id("(2,2)"));
    }
}
