//! Text grammar for polynomials.
//!
//! ```text
//! polynomial = term { ("+" | "-") term }
//! term       = [sign] [rational "*"] [x ["^" int]] ["*"] [y ["^" int]]
//! rational   = int ["/" int]
//! ```
//!
//! The renderer emits exactly this grammar, so `parse_poly(&p.to_string()) == p`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{abs_q, is_integer, Monomial, Poly, Q};

/// A position-tagged parse failure. `offset` counts characters from 0;
/// `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column} (offset {offset}): expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

/// Character cursor shared by every text grammar.
#[derive(Debug, Clone)]
pub struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    /// Move back to an earlier position, e.g. to report an error there.
    pub fn seek(&mut self, pos: usize) {
        self.pos = pos.min(self.chars.len());
    }

    pub fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next non-blank character, without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("'{c}'")))
        }
    }

    pub fn error(&mut self, expected: impl Into<String>) -> ParseError {
        self.skip_ws();
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            offset: self.pos,
            line,
            column,
            expected: expected.into(),
        }
    }

    fn eat_sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub fn uint(&mut self) -> Result<u32, ParseError> {
        let save = self.pos;
        match self.digits() {
            Some(d) => d.parse().map_err(|_| {
                self.pos = save;
                self.error("exponent fitting in 32 bits")
            }),
            None => Err(self.error("non-negative integer")),
        }
    }

    fn rational(&mut self) -> Result<Option<Q>, ParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digits");
        if self.eat('/') {
            let Some(den) = self.digits() else {
                return Err(self.error("denominator"));
            };
            let den: BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err(self.error("nonzero denominator"));
            }
            return Ok(Some(Q::new(num, den)));
        }
        Ok(Some(Q::from_integer(num)))
    }

    fn var_power(&mut self, var: char) -> Result<Option<u32>, ParseError> {
        if !self.eat(var) {
            return Ok(None);
        }
        if self.eat('^') {
            return self.uint().map(Some);
        }
        Ok(Some(1))
    }

    fn term_body(&mut self) -> Result<(Q, Monomial), ParseError> {
        let coeff = self.rational()?;
        if coeff.is_some() {
            let save = self.pos;
            if self.eat('*') {
                if !matches!(self.peek(), Some('x') | Some('y')) {
                    return Err(self.error("'x' or 'y'"));
                }
            } else {
                self.pos = save;
            }
        }
        let a = self.var_power('x')?;
        if a.is_some() {
            let save = self.pos;
            if self.eat('*') && self.peek() != Some('y') {
                return Err(self.error("'y'"));
            }
            if self.peek() != Some('y') {
                self.pos = save;
            }
        }
        let b = self.var_power('y')?;
        if coeff.is_none() && a.is_none() && b.is_none() {
            return Err(self.error("term"));
        }
        Ok((
            coeff.unwrap_or_else(Q::one),
            Monomial::new(a.unwrap_or(0), b.unwrap_or(0)),
        ))
    }

    /// Parse one polynomial, stopping at the first character that cannot
    /// continue it, such as a comma or a closing bracket.
    pub fn polynomial(&mut self) -> Result<Poly, ParseError> {
        let mut out = Poly::zero();
        let mut negative = self.eat_sign().unwrap_or(false);
        loop {
            let (c, m) = self.term_body()?;
            out.add_term(m, if negative { -c } else { c });
            match self.eat_sign() {
                Some(neg) => negative = neg,
                None => return Ok(out),
            }
        }
    }
}

pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut cur = Cursor::new(text);
    let p = cur.polynomial()?;
    if !cur.at_end() {
        return Err(cur.error("'+', '-' or end of input"));
    }
    Ok(p)
}

pub(crate) fn render_monomial(m: Monomial) -> String {
    let mut s = String::new();
    match m.a {
        0 => {}
        1 => s.push('x'),
        a => {
            let _ = write!(s, "x^{a}");
        }
    }
    if m.b > 0 {
        if m.a > 0 {
            s.push('*');
        }
        match m.b {
            1 => s.push('y'),
            b => {
                let _ = write!(s, "y^{b}");
            }
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn render_abs_coeff(c: &Q) -> String {
    if is_integer(c) {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let ac = abs_q(c);
        if *m == Monomial::ONE {
            s.push_str(&render_abs_coeff(&ac));
        } else if ac.is_one() {
            s.push_str(&render_monomial(*m));
        } else {
            let _ = write!(s, "{}*{}", render_abs_coeff(&ac), render_monomial(*m));
        }
    }
    s
}
