//! Tokenizer shared by the term and type parsers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// `[a-z][A-Za-z0-9_]*`, other than the keywords.
    LIdent(String),
    /// `@[a-z][A-Za-z0-9_]*`, stored without the sigil.
    RIdent(String),
    /// `[A-Z][A-Za-z0-9_]*`: a type atom.
    TIdent(String),
    Mu,
    Bot,
    Backslash,
    Dot,
    Colon,
    ColonColon,
    Lt,
    Gt,
    Bar,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::LIdent(s) => format!("variable `{s}`"),
            Tok::RIdent(s) => format!("variable `@{s}`"),
            Tok::TIdent(s) => format!("type `{s}`"),
            Tok::Mu => "`mu`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::ColonColon => "`::`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn ident_tail(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let take_ident = |from: usize| {
            let mut j = from;
            while j < bytes.len() && ident_tail(bytes[j] as char) {
                j += 1;
            }
            j
        };
        let tok = match c {
            'a'..='z' => {
                let end = take_ident(i + 1);
                let word = &src[i..end];
                i = end;
                match word {
                    "mu" => Tok::Mu,
                    "bot" => Tok::Bot,
                    _ => Tok::LIdent(word.to_string()),
                }
            }
            'A'..='Z' => {
                let end = take_ident(i + 1);
                let word = &src[i..end];
                i = end;
                Tok::TIdent(word.to_string())
            }
            '@' => {
                if i + 1 >= bytes.len() || !(bytes[i + 1] as char).is_ascii_lowercase() {
                    return Err(ParseError::new(i, "`@` must be followed by a lowercase letter"));
                }
                let end = take_ident(i + 2);
                let word = &src[i + 1..end];
                i = end;
                Tok::RIdent(word.to_string())
            }
            ':' => {
                if bytes.get(i + 1) == Some(&b':') {
                    i += 2;
                    Tok::ColonColon
                } else {
                    i += 1;
                    Tok::Colon
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::Arrow
                } else {
                    i += 1;
                    Tok::Minus
                }
            }
            _ => {
                i += 1;
                match c {
                    '\\' => Tok::Backslash,
                    '.' => Tok::Dot,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '|' => Tok::Bar,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    other => {
                        return Err(ParseError::new(start, format!("unexpected character `{other}`")))
                    }
                }
            }
        };
        out.push((start, tok));
    }
    out.push((src.len(), Tok::Eof));
    Ok(out)
}

/// Cursor over a token stream.
pub struct Tokens {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Tokens {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Tokens {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}
