//! Text grammar for polynomials.
//!
//! Terms are `c*x^e*y*...` joined by `+`/`-`; the coefficient is an integer or
//! `p/q` and may be omitted when it is 1. Whitespace is insignificant.
//! Variables must come from the declared list.

use num_traits::One;

use super::QPoly;
use crate::rat::Rat;
use crate::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Number(String),
    Ident(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let c = match self.peek() {
            None => return Ok(Tok::End),
            Some(c) => c,
        };
        match c {
            b'+' => {
                self.bump();
                Ok(Tok::Plus)
            }
            b'-' => {
                self.bump();
                Ok(Tok::Minus)
            }
            b'*' => {
                self.bump();
                Ok(Tok::Star)
            }
            b'^' => {
                self.bump();
                Ok(Tok::Caret)
            }
            b'0'..=b'9' => {
                let mut s = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    s.push(self.bump().unwrap() as char);
                }
                // Attached denominator: digits '/' digits.
                if self.peek() == Some(b'/') {
                    let save = (self.pos, self.line, self.col);
                    self.bump();
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        s.push('/');
                        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                            s.push(self.bump().unwrap() as char);
                        }
                    } else {
                        (self.pos, self.line, self.col) = save;
                    }
                }
                Ok(Tok::Number(s))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut s = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    s.push(self.bump().unwrap() as char);
                }
                Ok(Tok::Ident(s))
            }
            other => Err(self.err(format!("unexpected character `{}`", other as char))),
        }
    }
}

/// Parse a polynomial over the declared variables.
pub fn parse_poly(vars: &[&str], src: &str) -> Result<QPoly> {
    let mut lex = Lexer::new(src);
    let mut out = QPoly::zero(vars);
    let mut tok = lex.next_tok()?;

    // Leading sign (or empty input meaning 0 is rejected; "0" parses fine).
    loop {
        let mut sign = Rat::one();
        loop {
            match tok {
                Tok::Plus => {
                    tok = lex.next_tok()?;
                }
                Tok::Minus => {
                    sign = -sign;
                    tok = lex.next_tok()?;
                }
                _ => break,
            }
        }
        // One term: optional coefficient, then factors.
        let mut coeff = sign;
        let mut exps = vec![0u32; vars.len()];
        let mut saw_factor = false;
        if let Tok::Number(ref s) = tok {
            coeff *= crate::rat::parse_rat(s)?;
            saw_factor = true;
            tok = lex.next_tok()?;
            if tok == Tok::Star {
                tok = lex.next_tok()?;
            }
        }
        loop {
            match tok {
                Tok::Ident(ref name) => {
                    let i = vars.iter().position(|v| v == name).ok_or_else(|| {
                        lex.err(format!("unknown variable `{name}`"))
                    })?;
                    saw_factor = true;
                    tok = lex.next_tok()?;
                    let mut e: u32 = 1;
                    if tok == Tok::Caret {
                        tok = lex.next_tok()?;
                        match tok {
                            Tok::Number(ref s) if !s.contains('/') => {
                                e = s
                                    .parse()
                                    .map_err(|_| lex.err(format!("bad exponent `{s}`")))?;
                            }
                            _ => return Err(lex.err("expected integer exponent after `^`")),
                        }
                        tok = lex.next_tok()?;
                    }
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or_else(|| lex.err("exponent overflow"))?;
                    if tok == Tok::Star {
                        tok = lex.next_tok()?;
                    }
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(lex.err("expected a term"));
        }
        out.add_term(exps, coeff);
        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => continue,
            _ => return Err(lex.err("expected `+`, `-` or end of input")),
        }
    }
    Ok(out)
}
