//! Terms, reduction, typing and reduction-graph analysis for the
//! λ̄μμ̃-calculus and the symmetric λμ-calculus.

pub mod analyzer;
pub mod json;
pub mod lbar;
pub mod lexer;
pub mod lmu;
pub mod names;
pub mod rewrite;
pub mod typing;
