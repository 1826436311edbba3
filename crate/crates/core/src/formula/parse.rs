//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula := impl
//! impl    := disj ("->" impl)?
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | "(" formula ")" | "true" | "false" | IDENT
//! ```
//!
//! `~` binds tightest, then `&`, then `|`, then right-associative `->`.

use super::{Atom, Formula};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

/// 1-based line/column of byte `offset` in `text`.
pub(crate) fn line_col(text: &str, offset: usize) -> (u32, u32) {
    let mut line = 1u32;
    let mut col = 1u32;
    for (i, c) in text.char_indices() {
        if i >= offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.text, at);
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let bytes = self.text.as_bytes();
        let mut out = Vec::new();
        while self.pos < bytes.len() {
            let start = self.pos;
            let c = bytes[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'~' => {
                    self.pos += 1;
                    out.push((Tok::Tilde, start));
                }
                b'&' => {
                    self.pos += 1;
                    out.push((Tok::Amp, start));
                }
                b'|' => {
                    self.pos += 1;
                    out.push((Tok::Pipe, start));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((Tok::LParen, start));
                }
                b')' => {
                    self.pos += 1;
                    out.push((Tok::RParen, start));
                }
                b'-' => {
                    if bytes.get(self.pos + 1) == Some(&b'>') {
                        self.pos += 2;
                        out.push((Tok::Arrow, start));
                    } else {
                        return Err(self.err(start, "expected '->'"));
                    }
                }
                c if c.is_ascii_alphabetic() => {
                    let mut end = self.pos + 1;
                    while end < bytes.len()
                        && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                    {
                        end += 1;
                    }
                    let word = &self.text[self.pos..end];
                    self.pos = end;
                    let tok = match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word.to_string()),
                    };
                    out.push((tok, start));
                }
                _ => {
                    let ch = self.text[self.pos..].chars().next().unwrap();
                    return Err(self.err(start, format!("unexpected character {ch:?}")));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, off: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.text, off);
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let off = self
            .toks
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.text.len());
        self.err_at(off, message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Pipe) {
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Some(Tok::Tilde) => Ok(Formula::not(self.unary()?)),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                if self.eat(&Tok::RParen) {
                    Ok(f)
                } else {
                    Err(self.err_here("expected ')'"))
                }
            }
            Some(Tok::True) => Ok(Formula::True),
            Some(Tok::False) => Ok(Formula::False),
            Some(Tok::Ident(name)) => Ok(Formula::Atom(Atom::new(&name))),
            Some(_) => {
                self.pos -= 1;
                Err(self.err_here("expected a formula"))
            }
            None => Err(self.err_here("unexpected end of formula")),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = Lexer { text, pos: 0 }.tokens()?;
    let mut p = Parser { text, toks, pos: 0 };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(f)
}
