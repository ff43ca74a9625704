//! Realignment and partial-transpose separability criteria for bipartite
//! quantum states.
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigenvalues, singular values.
//! - [`qstate`]: validated density matrices, partial transposition, realignment.
//! - [`criteria`]: PPT, realignment (CCNR), the two-qubit X-class test, the
//!   minimum-singular-value test for `d x d` states, and the SPA-PT map.
//! - [`families`]: built-in state families and seeded random ensembles.
//!
//! ```
//! use realign_core::{evaluate_all, families, Verdict, CRITERION_TOL};
//!
//! let rho = families::rho1();
//! let eval = evaluate_all(&rho, CRITERION_TOL);
//! assert_eq!(eval.overall, Verdict::Entangled);
//! ```

pub mod criteria;
pub mod error;
pub mod families;
pub mod linalg;
pub mod qstate;

pub use criteria::{
    evaluate_all, min_singular_criterion, ppt_criterion, quadratic_witness, realignment_criterion,
    spa_pt, xstate_theorem1, CriterionResult, Evaluation, ParabolaWitness, Verdict, CRITERION_TOL,
};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use linalg::{
    hermitian_eigenvalues, is_positive_semidefinite, min_singular_value, singular_values,
    trace_norm, ComplexMatrix, HermitianSpectrum, SingularSpectrum,
};
pub use num_complex::Complex64;
pub use qstate::{
    block, partial_transpose, realign, validate_density_matrix, BipartiteDims, DensityMatrix,
    STATE_TOL,
};
