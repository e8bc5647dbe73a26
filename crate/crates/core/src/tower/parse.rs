//! Element literals: `+ - * / ^`, parentheses, integers and generator
//! names. Division needs a monomial unit on the right.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::engine::{add_terms, neg_terms, sub_terms};
use super::{Terms, TowerData};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(Error::parse(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    data: &'a TowerData,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Terms> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = neg_terms(&acc);
        }
        loop {
            if self.eat('+') {
                acc = add_terms(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = sub_terms(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = self.data.mul(&acc, &self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_empty() {
                    return Err(Error::DivisionByZero);
                }
                let inv = self
                    .data
                    .unit_inverse(&d)
                    .ok_or_else(|| Error::NotAUnit(self.data.render(&d)))?;
                acc = self.data.mul(&acc, &inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Terms> {
        if self.eat('-') {
            Ok(neg_terms(&self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Terms> {
        let ident = match self.peek() {
            Some(Tok::Ident(s)) => Some(s.clone()),
            _ => None,
        };
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let col = self.col();
        let k = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return Err(Error::parse(col, "expected an integer exponent")),
        };
        self.pos += 1;
        let k = k
            .to_u32()
            .ok_or_else(|| Error::parse(col, "exponent too large"))?;
        let b = if negative {
            match self.data.unit_inverse(&base) {
                Some(inv) => inv,
                None => {
                    return Err(match ident {
                        Some(name) => Error::NegativeExponent(name),
                        None => Error::NotAUnit(self.data.render(&base)),
                    })
                }
            }
        } else {
            base
        };
        let mut acc = self.data.one_terms();
        for _ in 0..k {
            acc = self.data.mul(&acc, &b)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Terms> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self.data.base.constant(BigRational::from_integer(n));
                Ok(self.data.const_terms(c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .data
                    .gen_index(&name)
                    .ok_or(Error::UnknownSymbol(name))?;
                Ok(self.data.gen_terms(g))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.col(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(Error::parse(col, format!("unexpected `{c}`"))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_terms(data: &TowerData, s: &str) -> Result<Terms> {
    let toks = lex(s)?;
    let end = s.chars().count() + 1;
    if toks.is_empty() {
        return Err(Error::parse(end, "empty expression"));
    }
    let mut p = Parser {
        data,
        toks,
        pos: 0,
        end,
    };
    let t = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.col(), "trailing input"));
    }
    debug_assert!(t.values().all(|c| !c.is_zero()));
    Ok(t)
}
