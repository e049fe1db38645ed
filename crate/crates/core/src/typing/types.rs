//! Type syntax for both calculi.
//!
//! Surface syntax: atoms are capitalized identifiers, `bot` is ⊥, `A -> B`
//! is right-associative, and `A - B` ("A and not B") is right-associative
//! with lower precedence than `->`.

use std::fmt;

use crate::lexer::{ParseError, Tok, Tokens};
use crate::names::Name;

/// Types of the λ̄μμ̃-calculus: atoms, `→` and `−`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LbarType {
    Atom(Name),
    Arrow(Box<LbarType>, Box<LbarType>),
    Minus(Box<LbarType>, Box<LbarType>),
}

/// Types of the λμ-calculus: atoms, `⊥` and `→`. `¬A` is `A → ⊥`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LmuType {
    Atom(Name),
    Bottom,
    Arrow(Box<LmuType>, Box<LmuType>),
}

impl LbarType {
    pub fn atom(name: &str) -> Self {
        LbarType::Atom(Name::new(name))
    }

    pub fn arrow(a: LbarType, b: LbarType) -> Self {
        LbarType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn minus(a: LbarType, b: LbarType) -> Self {
        LbarType::Minus(Box::new(a), Box::new(b))
    }

    /// Size of the type: every atom and connective counts one.
    pub fn lg(&self) -> usize {
        match self {
            LbarType::Atom(_) => 1,
            LbarType::Arrow(a, b) | LbarType::Minus(a, b) => 1 + a.lg() + b.lg(),
        }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(src)?;
        let raw = parse_raw(&mut toks)?;
        toks.expect_eof()?;
        raw.into_lbar().map_err(|(pos, m)| ParseError::new(pos, m))
    }

    /// All types over `atoms` with `lg` at most `max_lg`, smallest first.
    pub fn enumerate(atoms: &[Name], max_lg: usize) -> Vec<LbarType> {
        let mut by_size: Vec<Vec<LbarType>> = vec![Vec::new(); max_lg + 1];
        for n in 1..=max_lg {
            let mut here = Vec::new();
            if n == 1 {
                here.extend(atoms.iter().cloned().map(LbarType::Atom));
            }
            for i in 1..n.saturating_sub(1) {
                let j = n - 1 - i;
                for a in &by_size[i] {
                    for b in &by_size[j] {
                        here.push(LbarType::arrow(a.clone(), b.clone()));
                        here.push(LbarType::minus(a.clone(), b.clone()));
                    }
                }
            }
            by_size[n] = here;
        }
        by_size.into_iter().flatten().collect()
    }
}

impl LmuType {
    pub fn atom(name: &str) -> Self {
        LmuType::Atom(Name::new(name))
    }

    pub fn arrow(a: LmuType, b: LmuType) -> Self {
        LmuType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn neg(a: LmuType) -> Self {
        LmuType::arrow(a, LmuType::Bottom)
    }

    /// Size of the type: atoms and ⊥ count one, `→` counts one plus its
    /// operands, so `lg(¬A) = lg(A) + 2`.
    pub fn lg(&self) -> usize {
        match self {
            LmuType::Atom(_) | LmuType::Bottom => 1,
            LmuType::Arrow(a, b) => 1 + a.lg() + b.lg(),
        }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(src)?;
        let raw = parse_raw(&mut toks)?;
        toks.expect_eof()?;
        raw.into_lmu().map_err(|(pos, m)| ParseError::new(pos, m))
    }

    pub fn enumerate(atoms: &[Name], max_lg: usize) -> Vec<LmuType> {
        let mut by_size: Vec<Vec<LmuType>> = vec![Vec::new(); max_lg + 1];
        for n in 1..=max_lg {
            let mut here = Vec::new();
            if n == 1 {
                here.extend(atoms.iter().cloned().map(LmuType::Atom));
                here.push(LmuType::Bottom);
            }
            for i in 1..n.saturating_sub(1) {
                let j = n - 1 - i;
                for a in &by_size[i] {
                    for b in &by_size[j] {
                        here.push(LmuType::arrow(a.clone(), b.clone()));
                    }
                }
            }
            by_size[n] = here;
        }
        by_size.into_iter().flatten().collect()
    }
}

/// Parsed type before it is checked against one calculus' connectives.
#[derive(Debug)]
pub(crate) enum RawType {
    Atom(String),
    Bot(usize),
    Arrow(Box<RawType>, Box<RawType>),
    Minus(usize, Box<RawType>, Box<RawType>),
}

impl RawType {
    pub(crate) fn into_lbar(self) -> Result<LbarType, (usize, String)> {
        Ok(match self {
            RawType::Atom(a) => LbarType::Atom(Name::from(a)),
            RawType::Bot(pos) => return Err((pos, "`bot` is not a λ̄μμ̃ type".into())),
            RawType::Arrow(a, b) => LbarType::arrow(a.into_lbar()?, b.into_lbar()?),
            RawType::Minus(_, a, b) => LbarType::minus(a.into_lbar()?, b.into_lbar()?),
        })
    }

    pub(crate) fn into_lmu(self) -> Result<LmuType, (usize, String)> {
        Ok(match self {
            RawType::Atom(a) => LmuType::Atom(Name::from(a)),
            RawType::Bot(_) => LmuType::Bottom,
            RawType::Arrow(a, b) => LmuType::arrow(a.into_lmu()?, b.into_lmu()?),
            RawType::Minus(pos, _, _) => {
                return Err((pos, "`-` is not a λμ connective".into()))
            }
        })
    }
}

pub(crate) fn parse_raw(toks: &mut Tokens) -> Result<RawType, ParseError> {
    let lhs = parse_arrow(toks)?;
    if *toks.peek() == Tok::Minus {
        let pos = toks.pos();
        toks.bump();
        let rhs = parse_raw(toks)?;
        return Ok(RawType::Minus(pos, Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn parse_arrow(toks: &mut Tokens) -> Result<RawType, ParseError> {
    let lhs = parse_atom(toks)?;
    if toks.eat(&Tok::Arrow) {
        let rhs = parse_arrow(toks)?;
        return Ok(RawType::Arrow(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn parse_atom(toks: &mut Tokens) -> Result<RawType, ParseError> {
    let pos = toks.pos();
    match toks.peek().clone() {
        Tok::TIdent(a) => {
            toks.bump();
            Ok(RawType::Atom(a))
        }
        Tok::Bot => {
            toks.bump();
            Ok(RawType::Bot(pos))
        }
        Tok::LParen => {
            toks.bump();
            let t = parse_raw(toks)?;
            toks.expect(&Tok::RParen)?;
            Ok(t)
        }
        _ => Err(toks.unexpected("a type")),
    }
}

impl fmt::Display for LbarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LbarType::Atom(a) => write!(f, "{a}"),
            LbarType::Arrow(a, b) => {
                match **a {
                    LbarType::Atom(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                match **b {
                    LbarType::Minus(..) => write!(f, " -> ({b})"),
                    _ => write!(f, " -> {b}"),
                }
            }
            LbarType::Minus(a, b) => {
                match **a {
                    LbarType::Minus(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " - {b}")
            }
        }
    }
}

impl fmt::Display for LmuType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmuType::Atom(a) => write!(f, "{a}"),
            LmuType::Bottom => write!(f, "bot"),
            LmuType::Arrow(a, b) => match **a {
                LmuType::Arrow(..) => write!(f, "({a}) -> {b}"),
                _ => write!(f, "{a} -> {b}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lg_counts_nodes() {
        let a = LmuType::atom("A");
        assert_eq!(a.lg(), 1);
        assert_eq!(LmuType::arrow(a.clone(), LmuType::atom("B")).lg(), 3);
        assert_eq!(LmuType::neg(a.clone()).lg(), a.lg() + 2);
        assert_eq!(LbarType::parse("A - B -> C").unwrap().lg(), 5);
    }

    #[test]
    fn precedence_and_associativity() {
        let t = LbarType::parse("A -> B - C").unwrap();
        assert_eq!(
            t,
            LbarType::minus(
                LbarType::arrow(LbarType::atom("A"), LbarType::atom("B")),
                LbarType::atom("C")
            )
        );
        let t = LbarType::parse("A - B - C").unwrap();
        assert_eq!(
            t,
            LbarType::minus(LbarType::atom("A"), LbarType::minus(LbarType::atom("B"), LbarType::atom("C")))
        );
        let t = LmuType::parse("A -> B -> bot").unwrap();
        assert_eq!(
            t,
            LmuType::arrow(LmuType::atom("A"), LmuType::neg(LmuType::atom("B")))
        );
    }

    #[test]
    fn printing_reparses() {
        for src in ["(A -> B) -> A", "A -> (B - C)", "(A - B) - C", "A - B -> C"] {
            let t = LbarType::parse(src).unwrap();
            assert_eq!(LbarType::parse(&t.to_string()).unwrap(), t, "{src}");
        }
        for src in ["(A -> bot) -> bot", "A -> A -> A"] {
            let t = LmuType::parse(src).unwrap();
            assert_eq!(LmuType::parse(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn connectives_are_calculus_specific() {
        assert!(LbarType::parse("bot").is_err());
        assert!(LmuType::parse("A - B").is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let atoms = [Name::new("A")];
        assert_eq!(LbarType::enumerate(&atoms, 3).len(), 3);
        assert_eq!(LmuType::enumerate(&atoms, 3).len(), 6);
    }
}
