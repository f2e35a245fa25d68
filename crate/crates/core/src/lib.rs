//! Exact elementary vectors, sign vectors and oriented matroids of rational
//! subspaces, linear-inequality feasibility with certificates, and
//! sign-vector conditions for generalized mass-action networks.

pub mod elementary;
pub mod crn;
pub mod error;
pub mod feasibility;
pub mod io;
pub mod matrix;
pub mod oriented_matroid;
pub mod scalars;
pub mod sign_vector;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, IndexSet, MaximalMinors};
pub use scalars::{
    normalize_constraint, parse_scalar, scalar_sign, AssumptionSet, ConditionDisjunction,
    Constraint, Normalized, Polynomial, Rational, Relation, Scalar, Sign,
};
pub use elementary::{elementary_vector_for_index_set, elementary_vectors, ElementaryVectorList, Subspace};
pub use oriented_matroid::{
    chirotope, cocircuits_from_matrix, covectors_from_cocircuits, covectors_from_matrix,
    nonnegative_cocircuits,
};
pub use sign_vector::{lower_closure, sign_vector_of, SignVector, SignVectorSet};
pub use feasibility::{
    exists_vector, exists_vector_assuming, feasibility_oracle, intervals_from_bounds,
    linear_form_positive_on_box, ConcentrationVector, FeasibilityResult, Interval, IntervalBox,
};
pub use crn::{
    check_robust_existence, check_robust_existence_pair, check_unique_existence, check_unique_existence_pair,
    condition_closure_minors, condition_closure_sign_vectors, condition_faces, condition_nondegenerate,
    condition_uniqueness_minors, condition_uniqueness_sign_vectors, deficiency, incidence_matrix,
    is_weakly_reversible, kinetic_order_generators, laplacian, ode_rhs, source_matrix, stoichiometric_generators,
    Network, RateVector, Report, SubspacePair, Verdict,
};
