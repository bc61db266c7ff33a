//! A small recursive-descent parser for polynomial strings such as
//! `"x^2 - 3/2*y*xi + (x + 1)*e"`. Products follow the graded-commutative
//! multiplication of the algebra, left to right.

use std::iter::Peekable;
use std::str::CharIndices;

use dgsymp_core::cdga::{GcAlgebra, Poly};
use dgsymp_core::kernel::Scalar;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("undeclared symbol {0}")]
    Undeclared(String),
    #[error("{0}")]
    Syntax(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let mut out = Vec::new();
    let mut chars: Peekable<CharIndices> = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push(Token::Int(text[start..end].parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push(Token::Name(text[start..end].to_string()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            chars.next();
        } else {
            return Err(PolyError::Syntax(format!("unexpected character {c:?} at offset {start}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    alg: &'a GcAlgebra,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, PolyError> {
        match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            other => Err(PolyError::Syntax(format!("expected an integer, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let mut acc = Poly::zero();
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.alg.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let k: u32 = self.int()?.try_into().map_err(|_| PolyError::Syntax("exponent too large".into()))?;
            return Ok(self.alg.pow(&base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let mut value = Scalar::from_integer(n);
                if self.eat('/') {
                    let d = self.int()?;
                    if d == BigInt::from(0) {
                        return Err(PolyError::Syntax("division by zero".into()));
                    }
                    value /= Scalar::from_integer(d);
                }
                Ok(Poly::constant(value))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                let i = self.alg.index_of(&name).ok_or(PolyError::Undeclared(name))?;
                Ok(Poly::var(i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Syntax("missing )".into()));
                }
                Ok(inner)
            }
            other => Err(PolyError::Syntax(format!("unexpected {other:?}"))),
        }
    }
}

pub fn parse_poly(text: &str, alg: &GcAlgebra) -> Result<Poly, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Syntax("empty polynomial".into()));
    }
    let mut p = Parser { tokens, pos: 0, alg };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(PolyError::Syntax(format!("trailing input after token {}", p.pos)));
    }
    Ok(out)
}

/// A rational number written as `a`, `-a` or `a/b`.
pub fn parse_scalar(text: &str) -> Result<Scalar, PolyError> {
    let ground = GcAlgebra::new(Vec::new());
    parse_poly(text, &ground)?
        .as_constant()
        .ok_or_else(|| PolyError::Syntax(format!("{text:?} is not a rational number")))
}
