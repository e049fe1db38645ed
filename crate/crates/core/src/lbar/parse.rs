//! Surface syntax for λ̄μμ̃ terms.
//!
//! ```text
//! command ::= "<" l-term "|" r-term ">"
//! term    ::= atom ("::" term)?
//! atom    ::= var | "\" var (":" type)? "." term | "mu" var (":" type)? "." command
//!           | "<" ... ">" | "(" term ")"
//! ```
//!
//! The kind of a bound variable (`x` or `@a`) decides which sort a binder
//! builds, and the sort of a cons head decides the sort of the cons.

use thiserror::Error;

use super::term::{LbarTerm, Sort};
use crate::lexer::{ParseError, Tok, Tokens};
use crate::names::Name;
use crate::typing::types::parse_raw;
use crate::typing::LbarType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LbarParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("sort error at byte {pos}: expected {expected}, found {found}")]
    Sort {
        pos: usize,
        expected: Sort,
        found: Sort,
    },
}

impl LbarParseError {
    pub fn pos(&self) -> usize {
        match self {
            LbarParseError::Syntax(e) => e.pos,
            LbarParseError::Sort { pos, .. } => *pos,
        }
    }
}

/// Parses a term and checks that it has the `expected` sort.
pub fn parse_lbar(text: &str, expected: Sort) -> Result<LbarTerm, LbarParseError> {
    let t = parse_any(text)?;
    if t.sort() != expected {
        return Err(LbarParseError::Sort {
            pos: 0,
            expected,
            found: t.sort(),
        });
    }
    Ok(t)
}

/// Parses a term of whatever sort the text denotes.
pub fn parse_any(text: &str) -> Result<LbarTerm, LbarParseError> {
    let mut toks = Tokens::new(text)?;
    let (_, t) = term(&mut toks)?;
    toks.expect_eof()?;
    Ok(t)
}

type Parsed = (usize, LbarTerm);

fn want(pos: usize, t: &LbarTerm, expected: Sort) -> Result<(), LbarParseError> {
    if t.sort() == expected {
        Ok(())
    } else {
        Err(LbarParseError::Sort {
            pos,
            expected,
            found: t.sort(),
        })
    }
}

fn term(toks: &mut Tokens) -> Result<Parsed, LbarParseError> {
    let (pos, head) = atom(toks)?;
    if !toks.eat(&Tok::ColonColon) {
        return Ok((pos, head));
    }
    let (tpos, tail) = term(toks)?;
    let t = match head.sort() {
        Sort::RTerm => {
            want(tpos, &tail, Sort::LTerm)?;
            LbarTerm::rcons(head, tail)
        }
        Sort::LTerm => {
            want(tpos, &tail, Sort::RTerm)?;
            LbarTerm::lcons(head, tail)
        }
        Sort::Command => {
            return Err(LbarParseError::Sort {
                pos,
                expected: Sort::LTerm,
                found: Sort::Command,
            })
        }
    };
    Ok((pos, t))
}

fn annotation(toks: &mut Tokens) -> Result<Option<LbarType>, LbarParseError> {
    if !toks.eat(&Tok::Colon) {
        return Ok(None);
    }
    let raw = parse_raw(toks)?;
    let ty = raw.into_lbar().map_err(|(pos, m)| ParseError::new(pos, m))?;
    Ok(Some(ty))
}

enum Var {
    L(Name),
    R(Name),
}

fn binder_var(toks: &mut Tokens) -> Result<Var, LbarParseError> {
    match toks.peek().clone() {
        Tok::LIdent(x) => {
            toks.bump();
            Ok(Var::L(Name::from(x)))
        }
        Tok::RIdent(a) => {
            toks.bump();
            Ok(Var::R(Name::from(a)))
        }
        _ => Err(toks.unexpected("a variable").into()),
    }
}

fn atom(toks: &mut Tokens) -> Result<Parsed, LbarParseError> {
    let pos = toks.pos();
    let t = match toks.peek().clone() {
        Tok::LIdent(x) => {
            toks.bump();
            LbarTerm::LVar(Name::from(x))
        }
        Tok::RIdent(a) => {
            toks.bump();
            LbarTerm::RVar(Name::from(a))
        }
        Tok::Lt => {
            toks.bump();
            let (lpos, l) = term(toks)?;
            want(lpos, &l, Sort::LTerm)?;
            toks.expect(&Tok::Bar)?;
            let (rpos, r) = term(toks)?;
            want(rpos, &r, Sort::RTerm)?;
            toks.expect(&Tok::Gt)?;
            LbarTerm::command(l, r)
        }
        Tok::LParen => {
            toks.bump();
            let (_, t) = term(toks)?;
            toks.expect(&Tok::RParen)?;
            t
        }
        Tok::Backslash => {
            toks.bump();
            let v = binder_var(toks)?;
            let ty = annotation(toks)?;
            toks.expect(&Tok::Dot)?;
            let (bpos, body) = term(toks)?;
            match v {
                Var::L(x) => {
                    want(bpos, &body, Sort::LTerm)?;
                    LbarTerm::LAbs(x, ty, Box::new(body))
                }
                Var::R(a) => {
                    want(bpos, &body, Sort::RTerm)?;
                    LbarTerm::RAbs(a, ty, Box::new(body))
                }
            }
        }
        Tok::Mu => {
            toks.bump();
            let v = binder_var(toks)?;
            let ty = annotation(toks)?;
            toks.expect(&Tok::Dot)?;
            let (bpos, body) = atom(toks)?;
            want(bpos, &body, Sort::Command)?;
            match v {
                Var::R(a) => LbarTerm::LMu(a, ty, Box::new(body)),
                Var::L(x) => LbarTerm::RMu(x, ty, Box::new(body)),
            }
        }
        _ => return Err(toks.unexpected("a term").into()),
    };
    Ok((pos, t))
}
