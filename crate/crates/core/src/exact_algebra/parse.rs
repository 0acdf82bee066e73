//! Text format for polynomials: `+ - * ^`, parentheses, integer or `a/b`
//! coefficients, and the ring's variable names (`x[i,j]`, `X`, ...).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::poly::{PolyRing, Polynomial};
use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let txt: String = chars[start..i].iter().collect();
                out.push(Tok::Num(txt.parse().unwrap()));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '[' {
                    while i < chars.len() && chars[i] != ']' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(AlgebraError::Parse(format!("unclosed '[' in {s:?}")));
                    }
                    i += 1;
                }
                let txt: String = chars[start..i]
                    .iter()
                    .filter(|c| !c.is_whitespace())
                    .collect();
                out.push(Tok::Ident(txt));
            }
            other => {
                return Err(AlgebraError::Parse(format!(
                    "unexpected character {other:?} in {s:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a, K: Field> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    _k: std::marker::PhantomData<K>,
}

impl<K: Field> Parser<'_, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial<K>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.try_mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<K>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                other => {
                    return Err(AlgebraError::Parse(format!(
                        "expected exponent, found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<K>> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut den = BigInt::one();
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) => den = d,
                        other => {
                            return Err(AlgebraError::Parse(format!(
                                "expected denominator, found {other:?}"
                            )))
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring, K::from_ratio(&n, &den)?))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(AlgebraError::Parse(format!("unknown variable {name}"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(AlgebraError::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(AlgebraError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial in the text format over `ring`.
pub fn parse_poly<K: Field>(ring: &Arc<PolyRing>, s: &str) -> Result<Polynomial<K>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        _k: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(AlgebraError::Parse(format!(
            "trailing input after position {} in {s:?}",
            p.pos
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::field::{Rational, F32003};
    use crate::exact_algebra::monomial::TermOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["x[1,1]".into(), "x[1,2]".into(), "X".into()],
            TermOrder::GrevLex,
        )
    }

    #[test]
    fn parses_fractions_powers_and_parentheses() {
        let r = ring();
        let p: Polynomial<Rational> = parse_poly(&r, "3/2*x[1,1]^2 - (x[1,2] + X)*X").unwrap();
        assert_eq!(p.to_string(), "3/2*x[1,1]^2 - x[1,2]*X - X^2");
        let q: Polynomial<F32003> = parse_poly(&r, "1/2*x[1, 1] + 1/2*x[1,1]").unwrap();
        assert_eq!(q.to_string(), "x[1,1]");
    }

    #[test]
    fn rejects_garbage() {
        let r = ring();
        assert!(parse_poly::<Rational>(&r, "x[3,3]").is_err());
        assert!(parse_poly::<Rational>(&r, "x[1,1] +").is_err());
        assert!(parse_poly::<Rational>(&r, "").is_err());
        assert!(parse_poly::<F32003>(&r, "1/32003").is_err());
    }
}
