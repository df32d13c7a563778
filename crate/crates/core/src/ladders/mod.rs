//! The su(2,2) generators acting on algebraic Jacobi functions.

mod casimir;
mod differential;
mod expr;
mod generator;
mod table;

pub use casimir::{casimir_apply, casimir_apply_diff, factorization_check, Casimir, Family};
pub use differential::{
    apply_generator_diff, apply_generator_diff_or_limit, differential_form, k_minus_numerator,
    k_via_products, symbolic_op, weyl_substitution_check, ConcreteOp, LabelAffine, SymbolicOp,
    SymbolicTerm,
};
pub use expr::{
    operator_matrix, transpose_matches, BasisWindow, Column, OperatorExpr, OperatorMatrix, State,
    Word,
};
pub use generator::{apply_generator_closed, Action, Generator};
pub use table::{
    check_relation, commutator_table, covers_all_pairs, CommutatorTable, Relation, RelationCheck,
};

/// `K±` on `t` by closed form.
pub fn k_operators(t: &crate::params::JmqTriple, raise: bool) -> Action {
    apply_generator_closed(if raise { Generator::KPlus } else { Generator::KMinus }, t)
}
