//! Builders for groups, unary Rees matrix semigroups, the named small
//! examples and the critical semigroups `T_k`.

mod critical;
mod group;
mod named;
mod rees;

pub use critical::{
    all_lambdas, apply_row_column_scaling, check_lambda, critical_tk, critical_tk_capped, diagonal_assignment,
    group_times_trivialized, normalize_sandwich, restrict_tk, sapir_witness_words, substituted_identity, CriticalSpec,
    Normalized, ProductCover, Restricted, WitnessVariant, CRITICAL_SIZE_CAP,
};
pub use group::GroupTable;
pub use named::{
    a2, a2_spec, b21_transpose, brandt_spec, k3, k3_double, k3_spec, named_semigroup, ta, ta_matrices, tb, tb_matrices,
    NAMED_STRUCTURES,
};
pub use rees::{ReesSemigroup, ReesSpec, TABULATION_LIMIT};
