//! Theorem verifiers with explicit error budgets, the level-set
//! symmetrization pipeline, and the fixed verification corpus.

pub mod corpus;
pub mod pfs;
pub mod report;
pub mod verify;

pub use corpus::corpus_domains;
pub use pfs::{verify_pfs, PfsSpec, SymmetrizationTrace};
pub use report::{suite_exit_code, verdict, InequalityReport, TheoremId, Verdict};
pub use verify::{
    adm_mass_with_budget, verify_corollaries, verify_isoperimetric, verify_lemma_zas,
    verify_minkowski, verify_mixed, verify_thm_general2_delta, verify_thm_main, verify_thm_zas,
    Instance, SuiteError,
};
