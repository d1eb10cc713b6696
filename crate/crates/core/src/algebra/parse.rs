//! Tokenizer and recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*        juxtaposition multiplies
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `9/2 x_2^2` and
//! `x_1/3` both parse.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{MultiPoly, Rational, Vars};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

pub(crate) struct Lexer;

impl Lexer {
    /// Splits `text` into tokens paired with their byte offsets.
    pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let tok = match c {
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((start, Token::Int(text[start..i].parse().unwrap())));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    out.push((start, Token::Ident(text[start..i].to_string())));
                    continue;
                }
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '(' => Token::LParen,
                ')' => Token::RParen,
                '[' => Token::LBracket,
                ']' => Token::RBracket,
                ',' => Token::Comma,
                other => {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            out.push((start, tok));
            i += 1;
        }
        Ok(out)
    }
}

pub(crate) struct PolyParser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    vars: &'a Vars,
}

impl<'a> PolyParser<'a> {
    pub(crate) fn new(tokens: &'a [(usize, Token)], vars: &'a Vars) -> Self {
        let end = tokens.last().map_or(0, |(p, _)| p + 1);
        Self {
            tokens,
            pos: 0,
            end,
            vars,
        }
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    pub(crate) fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    pub(crate) fn retreat(&mut self) {
        self.pos -= 1;
    }

    pub(crate) fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.vars);
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                negate = true;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    pub(crate) fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Int(_) | Token::Ident(_) | Token::LParen)
        )
    }

    pub(crate) fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let divisor = self.power()?;
                    match divisor.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / c)),
                        Some(_) => return self.error("division by zero"),
                        None => return self.error("division by a non-constant polynomial"),
                    }
                }
                _ if self.starts_factor() => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Token::Int(n)) => match n.to_u32() {
                    Some(e) => Ok(base.pow(e)),
                    None => self.error("exponent too large"),
                },
                _ => {
                    self.pos -= 1;
                    self.error("expected a non-negative integer exponent")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MultiPoly::var(self.vars, i))
                }
                None => self.error(format!("unknown variable `{name}`")),
            },
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.error("expected a number, variable or `(`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, VariableTable};

    #[test]
    fn parses_common_forms() {
        let v = VariableTable::new(["x", "y"]).unwrap();
        let p = MultiPoly::parse("9/2 y^2 - 3*x y + (x+1)^2 - x/2", &v).unwrap();
        let q = MultiPoly::parse("x^2 + 3/2 x - 3 x y + 9/2 y^2 + 1", &v).unwrap();
        assert_eq!(p, q);
        assert_eq!(MultiPoly::parse("-x", &v).unwrap().scale(&rat(-1, 1)), MultiPoly::var(&v, 0));
    }

    #[test]
    fn reports_positions() {
        let v = VariableTable::new(["x"]).unwrap();
        assert_eq!(
            MultiPoly::parse("x + z", &v).unwrap_err(),
            Error::Parse { pos: 4, msg: "unknown variable `z`".into() }
        );
        assert!(matches!(MultiPoly::parse("x / 0", &v), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(MultiPoly::parse("x / x", &v), Err(Error::Parse { .. })));
        assert!(matches!(MultiPoly::parse("(x", &v), Err(Error::Parse { .. })));
        assert!(matches!(MultiPoly::parse("x $", &v), Err(Error::Parse { pos: 2, .. })));
    }
}
