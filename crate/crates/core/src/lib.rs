//! Exact workbench for integrally closed rank-two modules over the local ring
//! ℚ[x,y] localized at (x,y).
//!
//! Given a complete m-primary monomial ideal `I`, [`construct::classify`]
//! decides whether `I` is the ideal of 2×2 minors of an indecomposable
//! integrally closed module of rank two, and returns either a fully verified
//! witness module with an indecomposability certificate, or an explicit
//! decomposition showing why no such module exists.

pub mod construct;
pub mod grammar;
pub mod linalg;
pub mod modrank2;
pub mod qpoly;
pub mod staircase;
pub mod trunclin;

pub use construct::{
    classify, construct_mprime, construct_order2_module, verify_witness, Branch,
    ClassificationResult, ConstructError, Settings, Verdict,
};
pub use grammar::{parse_ideal, parse_matrix, GrammarError};
pub use modrank2::{
    certify_indecomposable, decompose_nonexis, minimal_generators, module_closure,
    row_integrality_filter, scaled_free_check, Certificate, CertificateKind, ClosureResult,
    ColumnOp, FamilyParams, ModuleError, ModuleMat, NonexisDecomposition,
};
pub use qpoly::{apply_change, is_local_unit, parse_poly, GL2Change, Monomial, Poly, Q};
pub use staircase::{minimalize, newton_closure, SimpleFactor, Staircase, StaircaseError};
