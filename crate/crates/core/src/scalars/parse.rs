use num_bigint::BigInt;

use super::{Polynomial, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            tokens.push((start, Token::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            tokens.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                position: i,
                message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
            });
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    variables: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.offset(), message: message.to_string() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Token::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                let divisor = self.unary()?;
                match divisor {
                    Scalar::Rational(q) if num_traits::Zero::is_zero(&q) => {
                        return Err(Error::ZeroDenominator)
                    }
                    Scalar::Rational(q) => acc = acc.scale(&q.recip()),
                    Scalar::Polynomial(_) => {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division by a non-constant expression".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = match self.peek() {
            Some(Token::Int(n)) => match u32::try_from(n) {
                Ok(e) => e,
                Err(_) => return self.syntax("exponent too large"),
            },
            _ => return self.syntax("expected a nonnegative integer exponent"),
        };
        self.pos += 1;
        Ok(match base {
            Scalar::Rational(q) => Scalar::Rational(super::polynomial::pow_rational(&q, exp)),
            Scalar::Polynomial(p) => Scalar::from_polynomial(p.pow(exp)),
        })
    }

    fn atom(&mut self) -> Result<Scalar> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::Rational(Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                if !self.variables.contains(&name.as_str()) {
                    return Err(Error::UnknownIdentifier { name, position: at });
                }
                self.pos += 1;
                Ok(Scalar::from_polynomial(Polynomial::variable(&name)))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.syntax("expected a number, identifier or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses a scalar from text such as `3/4`, `a - c` or `2*a^2 - b/2`.
///
/// Identifiers must be listed in `variables`; division is only allowed by
/// nonzero constants.
pub fn parse_scalar(text: &str, variables: &[&str]) -> Result<Scalar> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), variables };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(value)
}
