//! Sample-level audits of the identifiability premises (continuity of the
//! encoders, equal generated σ-algebras, compact support, independent
//! support) and of the conclusion that the two representations differ only
//! by a permutation and coordinate-wise bijections.
//!
//! Every check is a numerical falsification or consistency test, not a
//! proof. All of them are deterministic given their inputs and seed.

mod audit;
mod continuity;
mod relation;
mod sigma;
mod support;
mod uniformity;

pub use audit::{
    audit_external, run_audit, run_audit_on, AuditConfig, AuditParameters, AuditReport,
    CompactSupportPremise, ContinuityPremise, Outcome, PremiseResult, PremiseStatus,
};
pub use continuity::{
    check_continuity, ContinuityCheck, CONTINUITY_PAIR_SEPARATION, MIN_CONTINUITY_PAIRS,
};
pub use relation::{
    check_coordinatewise_relation, functional_score, Assignment, AssignmentScores,
    CoordRelationVerdict, CoordinateScores, Monotonicity, Relation,
};
pub use sigma::{check_sigma_algebra_proxy, SigmaCheck, ROUND_TRIP_TOLERANCE};
pub use support::{
    check_compact_support, check_independent_support, CompactSupportCheck, IndependentSupportCheck,
    SupportGrid, SUPPORT_SLACK,
};
pub use uniformity::{check_uniformity, UniformityCheck};
