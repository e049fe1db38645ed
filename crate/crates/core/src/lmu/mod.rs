//! The symmetric λμ-calculus: terms, addresses, substitutions and reduction.

pub mod address;
pub mod engine;
mod json;
pub mod parse;
pub mod subst;
pub mod term;

pub use address::{addr_get, addr_set, decompose_addr_subst, Address, Dir, Elementary};
pub use engine::{contract, contract_in, find_redexes, normalize, Lmu, LmuRedex, LmuRule, LmuSequence};
pub use parse::parse_lmu;
pub use subst::{apply_chain, rename_mu, subst_beta, subst_mu_addr, subst_mu_l, subst_mu_r, LmuSubst, MuAction};
pub use term::{LmuKey, LmuTerm};
