//! Text form shared by every ring: signed sums of `coef*var^k*...` terms in
//! descending graded-lex order, e.g. `2*q^2*a*d - b*c`. Integers and
//! residues are plain base-10 numbers; digit groups may be separated with
//! underscores on input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{RingDescriptor, RingValue};
use crate::error::{Error, Result};

pub(super) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(super) fn render(v: &RingValue) -> String {
    match v {
        RingValue::Int(a) => a.to_string(),
        RingValue::Mod { value, .. } => value.to_string(),
        RingValue::Poly(p) => {
            let terms = p.terms().map(|(m, c)| {
                let factors = m
                    .exponents()
                    .iter()
                    .zip(p.vars().iter())
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, name)| {
                        if *e == 1 {
                            name.clone()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect::<Vec<_>>();
                (c.clone(), factors)
            });
            join_terms(terms)
        }
        RingValue::Nil([c0, c1, c2]) => join_terms(
            [
                (c1.clone(), vec!["x".to_string()]),
                (c2.clone(), vec!["y".to_string()]),
                (c0.clone(), vec![]),
            ]
            .into_iter()
            .filter(|(c, _)| !c.is_zero()),
        ),
    }
}

fn join_terms(terms: impl Iterator<Item = (BigInt, Vec<String>)>) -> String {
    let mut out = String::new();
    for (c, factors) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
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
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '_') {
                    i += 1;
                }
                let raw: String = bytes[start..i].iter().collect();
                if raw.ends_with('_') || raw.contains("__") {
                    return Err(Error::parse(
                        input,
                        format!("misplaced underscore in `{raw}`"),
                    ));
                }
                let digits: String = raw.chars().filter(|c| *c != '_').collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(bytes[start..i].iter().collect()));
            }
            other => {
                return Err(Error::parse(
                    input,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingDescriptor,
    input: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.input, reason)
    }

    fn expr(&mut self) -> Result<RingValue> {
        let mut acc = self.ring.zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    false
                }
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingValue> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingValue> {
        let base = match self.bump() {
            Some(Tok::Num(n)) => self.ring.from_bigint(&n),
            Some(Tok::Ident(name)) => self
                .ring
                .generator(&name)
                .map_err(|_| self.err(format!("`{name}` is not a generator of {}", self.ring)))?,
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("missing `)`"));
                }
                inner
            }
            Some(t) => return Err(self.err(format!("unexpected token {t:?}"))),
            None => return Err(self.err("unexpected end of input")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected exponent after `^`")),
            }
        }
        Ok(base)
    }
}

pub(super) fn parse(ring: &RingDescriptor, input: &str) -> Result<RingValue> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::parse(input, "empty expression"));
    }
    let mut p = Parser {
        ring,
        input,
        toks,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}
