//! Types, contexts and typecheckers for both calculi.

pub mod context;
pub mod derivation;
pub mod lbar;
pub mod lmu;
pub mod subject;
pub mod types;

pub use context::{ContextParseError, LbarContexts, LmuContext};
pub use derivation::{Derivation, TypeError, TypeErrorKind};
pub use lbar::{lbar_type_of, typecheck_lbar, verify_lbar, LbarDerivation, LbarJudgment};
pub use lmu::{lmu_type_of, typecheck_lmu, verify_lmu, LmuDerivation, LmuJudgment};
pub use subject::{
    check_subject_reduction_lbar, check_subject_reduction_lmu, subject_lbar_on, subject_lmu_on, SubjectReport, Violation,
};
pub use types::{LbarType, LmuType};
