//! Generalized mass-action networks and the sign-vector conditions for
//! existence and uniqueness of complex-balanced equilibria.

mod conditions;
mod degeneracy;
mod network;
mod report;

pub use conditions::{
    condition_closure_minors, condition_closure_sign_vectors, condition_faces, condition_uniqueness_minors,
    condition_uniqueness_sign_vectors, SubspacePair,
};
pub use degeneracy::{condition_nondegenerate, is_degenerate, DegeneracyState};
pub use network::{
    certified_rank, deficiency, incidence_matrix, is_weakly_reversible, kinetic_order_generators, laplacian,
    ode_rhs, source_matrix, stoichiometric_generators, Deficiencies, Network, RateVector, Vertex,
};
pub use report::{
    check_robust_existence, check_robust_existence_pair, check_unique_existence, check_unique_existence_pair,
    Finding, Report, Verdict,
};
