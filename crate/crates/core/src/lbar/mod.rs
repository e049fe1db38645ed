//! The λ̄μμ̃-calculus: terms, substitution, parsing and reduction.

pub mod engine;
mod json;
pub mod parse;
pub mod postpone;
pub mod subst;
pub mod term;

pub use engine::{contract, find_redexes, is_l0, normalize, Lbar, LbarRedex, LbarRule, LbarSequence};
pub use parse::{parse_any, parse_lbar, LbarParseError};
pub use postpone::{postpone, postpone_once, Branch, PostponeError, Postponed};
pub use subst::{subst_l, subst_r, LbarSubst};
pub use term::{LbarKey, LbarTerm, Sort};
