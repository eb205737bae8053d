//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power ('*' power)*
//! power   := atom ('^' integer)?
//! atom    := integer ['/' integer] | identifier | '(' expr ')'
//! ```

use super::{Monomial, Polynomial, RingDescriptor};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(src[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*^/()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingDescriptor,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Int(s))) => {
                    self.pos += 1;
                    let e: u32 = s.parse().map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
                    if e > 1000 {
                        return Err(Error::Syntax { pos: at, msg: "exponent too large".into() });
                    }
                    Ok(base.pow(e))
                }
                _ => Err(Error::Syntax { pos: at, msg: "expected integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                let mut lit = n;
                if self.peek() == Some(&Tok::Sym('/')) {
                    self.pos += 1;
                    match self.toks.get(self.pos).cloned() {
                        Some((_, Tok::Int(d))) => {
                            self.pos += 1;
                            lit = format!("{lit}/{d}");
                        }
                        _ => return Err(Error::Syntax { pos: self.offset(), msg: "expected integer denominator".into() }),
                    }
                }
                let q: Rational =
                    parse_rational(&lit).ok_or_else(|| Error::Syntax { pos: at, msg: format!("invalid literal `{lit}`") })?;
                Ok(Polynomial::constant(q))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let idx = self.ring.var_index(&name).ok_or(Error::UnknownVariable { pos: at, name: name.clone() })?;
                Ok(Polynomial::term(Rational::one(), Monomial::var(idx)))
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some((_, t)) => Err(Error::Syntax { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses and canonicalizes a homogeneous polynomial.
pub fn parse_polynomial(src: &str, ring: &RingDescriptor) -> Result<Polynomial> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), ring };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    if let Some((m0, _)) = f.terms().first() {
        let d0 = m0.degree();
        if let Some((m1, _)) = f.terms().iter().find(|(m, _)| m.degree() != d0) {
            return Err(Error::NonHomogeneous { first: d0, second: m1.degree() });
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::RingDescriptor;

    #[test]
    fn spec_examples() {
        let r = RingDescriptor::p4();
        let fermat = parse_polynomial("x0^5+x1^5+x2^5+x3^5+x4^5", &r).unwrap();
        assert_eq!((fermat.degree(), fermat.len()), (Some(5), 5));
        let f = parse_polynomial("x2*x0^4 + x3*x1^4 + x4*x0^3*x1", &r).unwrap();
        assert_eq!((f.degree(), f.len()), (Some(5), 3));
        match parse_polynomial("x0^2 + x1", &r) {
            Err(Error::NonHomogeneous { first: 2, second: 1 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let r = RingDescriptor::p4();
        match parse_polynomial("x0 + y7", &r) {
            Err(Error::UnknownVariable { pos: 5, name }) => assert_eq!(name, "y7"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("x0 + * x1", &r) {
            Err(Error::Syntax { pos: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("(x0 + x1", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x0 $", &r), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn rationals_and_parentheses() {
        let r = RingDescriptor::p4();
        let f = parse_polynomial("3/6*(x0+x1)^2 - x0*x1", &r).unwrap();
        assert_eq!(f, parse_polynomial("1/2*x0^2 + 1/2*x1^2", &r).unwrap());
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }
}
