//! Recursive-descent parser for rational-function expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | power)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | 'x' | 'w{' uint '}' | '(' expr ')'
//! ```
//! `w{r}` is `ζ_r = exp(2πi/r)`.

use num_bigint::BigInt;

use super::RationalFunction;
use crate::error::{Error, Result};
use crate::exactnum::{root_of_unity, CycloNum};

/// Conductor cap applied when none is given.
pub const DEFAULT_CONDUCTOR_LIMIT: u64 = 10_000;

const MAX_EXPONENT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    W(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn digits_at(chars: &[(usize, char)], mut i: usize) -> (String, usize) {
    let mut s = String::new();
    while i < chars.len() && chars[i].1.is_ascii_digit() {
        s.push(chars[i].1);
        i += 1;
    }
    (s, i)
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'x' | 'X' => Some(Tok::X),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let (s, next) = digits_at(&chars, i);
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            i = next;
            continue;
        }
        if ch == 'w' {
            if chars.get(i + 1).map(|c| c.1) != Some('{') {
                return Err(err(pos, "expected '{' after 'w'"));
            }
            let (s, next) = digits_at(&chars, i + 2);
            if s.is_empty() {
                return Err(err(pos, "expected an order inside w{...}"));
            }
            if chars.get(next).map(|c| c.1) != Some('}') {
                return Err(err(pos, "expected '}' closing w{...}"));
            }
            let r: u64 = s.parse().map_err(|_| err(pos, "root order out of range"))?;
            if r == 0 {
                return Err(err(pos, "root order must be positive"));
            }
            out.push((pos, Tok::W(r)));
            i = next + 1;
            continue;
        }
        return Err(err(pos, format!("unexpected character '{ch}'")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    limit: u64,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs)?;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::X | Tok::W(_) | Tok::LParen)
            ) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<Option<u64>> {
        if !self.eat(&Tok::Caret) {
            return Ok(None);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                let e: u64 = n
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| err(pos, "exponent too large"))?;
                Ok(Some(e))
            }
            _ => Err(err(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::W(r)) => {
                self.i += 1;
                if r > self.limit {
                    return Err(Error::ConductorLimit {
                        conductor: r,
                        limit: self.limit,
                    });
                }
                let e = self.exponent()?.unwrap_or(1);
                Ok(RationalFunction::constant(root_of_unity(r, (e % r) as i64)))
            }
            Some(Tok::X) => {
                self.i += 1;
                let e = self.exponent()?.unwrap_or(1);
                Ok(RationalFunction::x_pow(e as i64))
            }
            Some(Tok::Num(n)) => {
                self.i += 1;
                let base = RationalFunction::constant(CycloNum::from_bigint(n, 1));
                Ok(match self.exponent()? {
                    Some(e) => base.pow(e as u32),
                    None => base,
                })
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(match self.exponent()? {
                    Some(e) => inner.pow(e as u32),
                    None => inner,
                })
            }
            Some(_) => Err(err(pos, "expected a number, 'x', 'w{r}' or '('")),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parses with the default conductor cap.
pub fn parse_expression(src: &str) -> Result<RationalFunction> {
    parse_expression_with_limit(src, DEFAULT_CONDUCTOR_LIMIT)
}

/// Parses an expression; `w{r}` with `r > limit` is rejected.
pub fn parse_expression_with_limit(src: &str, limit: u64) -> Result<RationalFunction> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
        limit,
    };
    if p.peek().is_none() {
        return Err(err(0, "empty expression"));
    }
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(r)
}
