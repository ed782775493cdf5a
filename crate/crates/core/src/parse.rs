//! Polynomial expression parser.
//!
//! ```text
//! expr    := ["+" | "-"] term { ("+" | "-") term }
//! term    := factor { ("*" | "/") factor }
//! factor  := ("+" | "-") factor | power
//! power   := atom [ "^" integer ]
//! atom    := integer | identifier | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/2*x` and `x/4` parse
//! while `1/x` is rejected. Whitespace is insignificant.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let v: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(v)));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(String::from(&self.src[start..self.pos]))));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::Syntax { position: start, message: format!("unexpected character `{ch}`") })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    ring: &'a Ring,
    tok: Tok,
    tok_pos: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (p, t) = self.lexer.next()?;
        self.tok = t;
        self.tok_pos = p;
        Ok(())
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.tok_pos, message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump()?;
                    let at = self.tok_pos;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    acc = acc.scale(&d.constant_coeff().inv().expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.tok {
            Tok::Minus => {
                self.bump()?;
                Ok(-&self.factor()?)
            }
            Tok::Plus => {
                self.bump()?;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Int(e) = &self.tok else {
            return self.syntax("expected a non-negative integer exponent");
        };
        let Ok(e) = u32::try_from(e.clone()) else {
            return self.syntax("exponent too large");
        };
        self.bump()?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match core::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(v) => {
                self.bump()?;
                Ok(Polynomial::constant(self.ring, Scalar::from_bigint(v)))
            }
            Tok::Ident(name) => {
                let Some(i) = self.ring.index_of(&name) else {
                    return Err(Error::UnknownVariable { name, position: self.tok_pos });
                };
                self.bump()?;
                Polynomial::var(self.ring, i)
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of input"),
            other => {
                self.tok = other;
                self.syntax("expected a number, a variable or `(`")
            }
        }
    }
}

/// Parses `src` as a polynomial in `ring`.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { lexer: Lexer { src, pos: 0 }, ring, tok: Tok::End, tok_pos: 0 };
    p.bump()?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use alloc::string::ToString;

    fn ring() -> Ring {
        RingContext::new(["x", "y", "z", "w"]).unwrap()
    }

    #[test]
    fn germ_with_two_terms() {
        let p = parse_polynomial("x^2 - z^3", &ring()).unwrap();
        assert_eq!(p.nterms(), 2);
        assert_eq!(p.to_string(), "-z^3 + x^2");
    }

    #[test]
    fn zero_and_identities() {
        let r = ring();
        assert!(parse_polynomial("0", &r).unwrap().terms().is_empty());
        let p = parse_polynomial("(x+y)^2 - x^2 - 2*x*y", &r).unwrap();
        assert_eq!(p.to_string(), "y^2");
        assert_eq!(parse_polynomial("-x^2", &r).unwrap().to_string(), "-x^2");
        assert_eq!(parse_polynomial("3/2*x + x/2", &r).unwrap().to_string(), "2*x");
        assert_eq!(parse_polynomial("x^0", &r).unwrap().to_string(), "1");
    }

    #[test]
    fn diagnostics() {
        let r = ring();
        assert_eq!(
            parse_polynomial("x + q", &r).unwrap_err(),
            Error::UnknownVariable { name: "q".into(), position: 4 }
        );
        assert!(matches!(
            parse_polynomial("x +* y", &r).unwrap_err(),
            Error::Syntax { position: 3, .. }
        ));
        assert!(matches!(parse_polynomial("(x", &r).unwrap_err(), Error::Syntax { position: 2, .. }));
        assert!(matches!(parse_polynomial("1/x", &r).unwrap_err(), Error::Syntax { position: 2, .. }));
        assert!(matches!(parse_polynomial("x^y", &r).unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(parse_polynomial("x y", &r).unwrap_err(), Error::Syntax { position: 2, .. }));
        assert!(matches!(parse_polynomial("x # y", &r).unwrap_err(), Error::Syntax { position: 2, .. }));
        assert!(matches!(parse_polynomial("", &r).unwrap_err(), Error::Syntax { .. }));
    }
}
