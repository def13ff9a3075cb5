//! Exact linear algebra over ordered fields and their complexifications.

mod congruence;
mod elimination;
mod hermitian;
pub mod json;
mod matrix;
mod inequalities;

pub use congruence::{classify_symmetric, congruence_diagonalize, congruence_fraction_free, Congruence, Definiteness};
pub use elimination::{determinant, echelon, kernel, normalize, rank, Echelon};
pub use hermitian::{HermitianForm, RealSplit};
pub use matrix::Matrix;
pub use inequalities::{
    equality_case_from, hadamard_from, real_part_bound_from, robertson_from, trace_from,
    check_all, check_equality_case, check_hadamard_robertson, check_real_part_bound, check_robertson, check_trace_bounds,
    EqualityCaseReport, FormFacts, FullReport, HadamardReport, InequalityReport, RealPartReport, Relation,
    RobertsonReport, TraceBoundsReport,
};
