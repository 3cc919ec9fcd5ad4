//! Parser for the scalar literal grammar: rationals like `-3/4`, polynomials
//! in `e` like `1 + 2*e - 3/2*e^2`, and rational functions `(p)/(q)`.
//! Whitespace-insensitive; `e` is reserved for the infinitesimal.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::FieldElement;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line_offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Epsilon,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line_offset: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line_offset,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::ParseError {
            line: self.line_offset,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Tok> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Tok::Plus),
            b'-' => Ok(Tok::Minus),
            b'*' => Ok(Tok::Star),
            b'/' => Ok(Tok::Slash),
            b'^' => Ok(Tok::Caret),
            b'(' => Ok(Tok::LParen),
            b')' => Ok(Tok::RParen),
            b'e' => Ok(Tok::Epsilon),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(text.parse().unwrap()))
            }
            other => Err(self.error(format!(
                "unexpected character `{}` in scalar literal",
                other as char
            ))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Tok,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line_offset: usize) -> Result<Self> {
        let mut lexer = Lexer::new(src, line_offset);
        let current = lexer.next()?;
        Ok(Parser { lexer, current })
    }

    fn bump(&mut self) -> Result<Tok> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.current, next))
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            match self.current {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            match self.current {
                Tok::Star => {
                    self.bump()?;
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump()?;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|_| {
                        self.lexer.error("division by zero in scalar literal")
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.current.clone() {
            Tok::Minus => {
                self.bump()?;
                Ok(self.factor()?.neg())
            }
            Tok::Plus => {
                self.bump()?;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.primary()?;
        if self.current == Tok::Caret {
            self.bump()?;
            let exp = match self.bump()? {
                Tok::Int(n) => n,
                _ => return Err(self.lexer.error("expected integer exponent after `^`")),
            };
            let exp: i64 = exp
                .try_into()
                .map_err(|_| self.lexer.error("exponent out of range"))?;
            base.pow(exp)
                .map_err(|_| self.lexer.error("zero raised to a negative power"))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<FieldElement> {
        match self.bump()? {
            Tok::Int(n) => Ok(FieldElement::from_rational(BigRational::from_integer(n))),
            Tok::Epsilon => Ok(FieldElement::epsilon()),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump()? {
                    Tok::RParen => Ok(inner),
                    _ => Err(self.lexer.error("expected `)`")),
                }
            }
            Tok::End => Err(self.lexer.error("unexpected end of scalar literal")),
            other => Err(self
                .lexer
                .error(format!("unexpected token {:?} in scalar literal", other))),
        }
    }
}

/// Parse a scalar literal into a canonical `FieldElement`.
pub fn parse_scalar(src: &str) -> Result<FieldElement> {
    parse_scalar_at(src, 1)
}

/// Like [`parse_scalar`] but reporting errors at the given source line.
pub fn parse_scalar_at(src: &str, line: usize) -> Result<FieldElement> {
    let mut parser = Parser::new(src, line)?;
    let value = parser.expr()?;
    if parser.current != Tok::End {
        return Err(parser
            .lexer
            .error("trailing input after scalar literal"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Valuation;
    use num_traits::One;

    #[test]
    fn parses_grammar_forms() {
        assert_eq!(parse_scalar("-3/4").unwrap(), FieldElement::from_ratio(-3, 4));
        let p = parse_scalar("1 + 2*e - 3/2*e^2").unwrap();
        assert_eq!(p.numerator().coeff(2), BigRational::new((-3).into(), 2.into()));
        let rf = parse_scalar("(1+2*e)/(1-e)").unwrap();
        assert_eq!(rf.valuation(), Valuation::Finite(0));
        assert!(rf.standard_part().unwrap().is_one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("(1").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
