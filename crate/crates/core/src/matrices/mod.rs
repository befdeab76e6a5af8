//! Exact matrices over finite fields with involution and over the Boolean
//! semiring, their unary operations and semigroup families.

mod boolean;
mod families;
mod field;
mod matrix;
mod mp;
mod sl2z;

pub use boolean::{BoolMatrix, BOOL_DIMENSION_CAP};
pub use families::{
    all_field_matrices, bool_family, bool_generated_monoid, bool_matrix_set, field_family, field_matrix_set,
    BoolFamily, BoolMatrixSemigroup, BoolUnary, FieldFamily, FieldUnary, MatrixSemigroup, UnaryOp, BOOL_FREE_ENTRY_CAP,
    MATRIX_ENUMERATION_LIMIT, MATRIX_TABULATION_LIMIT,
};
pub use field::{is_prime, FieldElement, Involution, InvolutiveField, FIELD_ORDER_CAP};
pub use matrix::{Echelon, FieldMatrix};
pub use mp::{
    isotropic_vectors, mp_inverse, mp_rank1, nontrivial_isotropic, penrose_holds, rank_factorization, RankOneInverse,
};
pub use sl2z::{eta, sl2z_free_probe, sl2z_positive_probe, zeta, FreeProbe, SL2Z_MAX_WORD_LENGTH};
