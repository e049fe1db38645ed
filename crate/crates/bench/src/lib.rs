//! Fixed inputs shared by the benchmarks.

use symcalc::analyzer::enumerate::{enumerate_lbar, enumerate_lmu};
use symcalc::analyzer::VarPool;
use symcalc::lbar::{parse_any, LbarTerm};
use symcalc::lmu::{parse_lmu, LmuTerm};

/// The λ̄μμ̃ critical pair ⟨μα c | μx c′⟩.
pub const LBAR_WITNESS: &str = "< mu @a. < x | @b > | mu y. < x | @a > >";

/// A λμ term with a few overlapping μ/μ′ redexes and a β-redex.
pub const LMU_MIXED: &str = "((mu @a. [@a] x mu @b. [@b] y) (\\z. (z z) mu @c. [@c] w))";

pub fn lbar_witness() -> LbarTerm {
    parse_any(LBAR_WITNESS).expect("fixed input parses")
}

pub fn lmu_mixed() -> LmuTerm {
    parse_lmu(LMU_MIXED).expect("fixed input parses")
}

pub fn restricted_corpus(max: usize) -> Vec<LbarTerm> {
    enumerate_lbar(max, true, &VarPool::default())
}

pub fn lmu_corpus(max: usize) -> Vec<LmuTerm> {
    enumerate_lmu(max, &VarPool::default())
}
