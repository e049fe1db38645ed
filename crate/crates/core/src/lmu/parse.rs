//! Surface syntax for λμ terms.
//!
//! ```text
//! M ::= x | "\" x (":" type)? "." M | "(" M M* ")" | "mu" @a (":" type)? "." M | "[" @a "]" M
//! ```
//!
//! Application is left-associative inside mandatory parentheses.

use super::term::LmuTerm;
use crate::lexer::{ParseError, Tok, Tokens};
use crate::names::Name;
use crate::typing::types::parse_raw;
use crate::typing::LmuType;

pub fn parse_lmu(text: &str) -> Result<LmuTerm, ParseError> {
    let mut toks = Tokens::new(text)?;
    let t = term(&mut toks)?;
    toks.expect_eof()?;
    Ok(t)
}

fn annotation(toks: &mut Tokens) -> Result<Option<LmuType>, ParseError> {
    if !toks.eat(&Tok::Colon) {
        return Ok(None);
    }
    let raw = parse_raw(toks)?;
    raw.into_lmu().map(Some).map_err(|(pos, m)| ParseError::new(pos, m))
}

fn lvar(toks: &mut Tokens) -> Result<Name, ParseError> {
    match toks.peek().clone() {
        Tok::LIdent(x) => {
            toks.bump();
            Ok(Name::from(x))
        }
        _ => Err(toks.unexpected("a λ-variable")),
    }
}

fn rvar(toks: &mut Tokens) -> Result<Name, ParseError> {
    match toks.peek().clone() {
        Tok::RIdent(a) => {
            toks.bump();
            Ok(Name::from(a))
        }
        _ => Err(toks.unexpected("a μ-variable")),
    }
}

fn starts_term(t: &Tok) -> bool {
    matches!(t, Tok::LIdent(_) | Tok::Backslash | Tok::LParen | Tok::Mu | Tok::LBracket)
}

fn term(toks: &mut Tokens) -> Result<LmuTerm, ParseError> {
    match toks.peek().clone() {
        Tok::LIdent(x) => {
            toks.bump();
            Ok(LmuTerm::Var(Name::from(x)))
        }
        Tok::Backslash => {
            toks.bump();
            let x = lvar(toks)?;
            let ty = annotation(toks)?;
            toks.expect(&Tok::Dot)?;
            Ok(LmuTerm::Abs(x, ty, Box::new(term(toks)?)))
        }
        Tok::Mu => {
            toks.bump();
            let a = rvar(toks)?;
            let ty = annotation(toks)?;
            toks.expect(&Tok::Dot)?;
            Ok(LmuTerm::Mu(a, ty, Box::new(term(toks)?)))
        }
        Tok::LBracket => {
            toks.bump();
            let a = rvar(toks)?;
            toks.expect(&Tok::RBracket)?;
            Ok(LmuTerm::Named(a, Box::new(term(toks)?)))
        }
        Tok::LParen => {
            toks.bump();
            let mut t = term(toks)?;
            while starts_term(toks.peek()) {
                t = LmuTerm::app(t, term(toks)?);
            }
            toks.expect(&Tok::RParen)?;
            Ok(t)
        }
        Tok::RIdent(_) => Err(toks.unexpected("a term (μ-variables appear only as `[@a] M`)")),
        _ => Err(toks.unexpected("a term")),
    }
}
