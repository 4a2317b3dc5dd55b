//! Exact dense linear algebra over the rationals, prime fields, and
//! complex doubles, with Drazin-family generalized inverses, entwining
//! condition predicates, transfer formulas, and deterministic sample
//! generators.

pub mod drazin;
pub mod field;
pub mod identities;
pub mod json;
pub mod matrix;
pub mod quadgen;
pub mod solve;

pub use drazin::{
    drazin_inverse, group_inverse, index_of, spectral_idempotent, verify_drazin_axioms,
    DrazinDecomposition, DrazinError, OracleCheck, OracleReport,
};
pub use field::{is_prime, FieldError, FieldSpec, Scalar, DEFAULT_EPS_REL};
pub use identities::{
    check_condition, check_condition_triple, cline_full, cline_triple, cline_triple_c6,
    cline_two_condition, condition_hierarchy_check, drazin_version_check, jacobson_gdrazin,
    jacobson_group, jacobson_proof_obligations, jacobson_triple, nilpotent_transfer,
    triple_hierarchy_check, ConditionId, ConditionReport, EqualityCheck, FormulaResult, Gate,
    HierarchyReport, IdentityError, Quadruple, TransferReport, Triple, TripleHierarchyReport,
    VersionCheck, VersionReport,
};
pub use json::{
    elements_from_value, genspec_from_value, genspec_to_value, matrix_from_value,
    matrix_to_value, quadruple_to_value, triple_to_value, ElementsInput, JsonError,
};
pub use matrix::{Matrix, MatrixError};
pub use quadgen::{
    gen_aba_aca, gen_classic, gen_mosic, gen_nilpotent_ac, gen_rejection, generate,
    counterexample_triple, sample_matrix, GenError, GenSpec, Generated, Strategy,
};
pub use solve::{
    column_space_basis, mat_inverse, nullspace_basis, poly_span_membership, rank, rref,
    solve_general, Rref, Solution, SolveError,
};
