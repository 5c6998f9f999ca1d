//! Text form of biquaternions.
//!
//! ```text
//! literal := term (('+' | '-') term)*
//! term    := complex ('i' | 'j' | 'k')?
//! complex := real | real 'I' | '(' real ('+' | '-') real 'I' ')'
//! ```
//!
//! `i j k` are the quaternion units and `I` is the commuting complex unit.
//! Whitespace is ignored. A leading sign is accepted, and a bare unit such as
//! `k` or `Ik` reads as coefficient one. Numbers go through `f64::from_str`,
//! so decimal input parses exactly as the nearest double.

use num_complex::Complex64;
use thiserror::Error;

use crate::biquat::Biquaternion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid biquaternion literal {input:?} at offset {offset}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub reason: String,
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            input: self.src.to_string(),
            offset: self.pos,
            reason: reason.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn real(&mut self) -> Result<Option<f64>, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            _ => {
                self.pos = start;
                self.fail(format!("bad number {text:?}"))
            }
        }
    }

    fn signed_real(&mut self) -> Result<f64, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        match self.real()? {
            Some(v) => Ok(if neg { -v } else { v }),
            None => self.fail("expected a number"),
        }
    }

    fn complex(&mut self) -> Result<Complex64, ParseError> {
        if self.eat('(') {
            let re = self.signed_real()?;
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else {
                return self.fail("expected '+' or '-' inside parentheses");
            };
            let im = self.real()?.unwrap_or(1.0);
            if !self.eat('I') {
                return self.fail("expected 'I'");
            }
            if !self.eat(')') {
                return self.fail("expected ')'");
            }
            return Ok(Complex64::new(re, if neg { -im } else { im }));
        }
        let value = self.real()?;
        if self.eat('I') {
            return Ok(Complex64::new(0.0, value.unwrap_or(1.0)));
        }
        match value {
            Some(v) => Ok(Complex64::new(v, 0.0)),
            None if matches!(self.peek(), Some('i') | Some('j') | Some('k')) => {
                Ok(Complex64::new(1.0, 0.0))
            }
            None => self.fail("expected a term"),
        }
    }

    fn term(&mut self, acc: &mut Biquaternion, sign: f64) -> Result<(), ParseError> {
        let c = self.complex()? * sign;
        match self.peek() {
            Some('i') => {
                self.pos += 1;
                acc.x += c;
            }
            Some('j') => {
                self.pos += 1;
                acc.y += c;
            }
            Some('k') => {
                self.pos += 1;
                acc.z += c;
            }
            _ => acc.w += c,
        }
        Ok(())
    }

    fn literal(&mut self) -> Result<Biquaternion, ParseError> {
        let mut acc = Biquaternion::ZERO;
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            self.term(&mut acc, sign)?;
            match self.peek() {
                None => return Ok(acc),
                Some('+') => sign = 1.0,
                Some('-') => sign = -1.0,
                Some(c) => return self.fail(format!("unexpected character {c:?}")),
            }
            self.pos += 1;
        }
    }
}

/// Parses a biquaternion literal such as `"1+2i+3j+4k"` or `"(1+1I)+(0+2I)j"`.
pub fn parse_literal(src: &str) -> Result<Biquaternion, ParseError> {
    let mut parser = Parser {
        src,
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    if parser.chars.is_empty() {
        return parser.fail("empty literal");
    }
    parser.literal()
}

impl std::str::FromStr for Biquaternion {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s)
    }
}

/// Formats `q` so that [`parse_literal`] returns the identical value.
pub fn format_literal(q: &Biquaternion) -> String {
    let mut out = String::new();
    for (c, unit) in [(q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")] {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let body = if c.im == 0.0 {
            let sep = if c.re.is_sign_negative() { "-" } else { "+" };
            format!("{sep}{}", c.re.abs())
        } else if c.re == 0.0 {
            let sep = if c.im.is_sign_negative() { "-" } else { "+" };
            format!("{sep}{}I", c.im.abs())
        } else {
            let inner = if c.im.is_sign_negative() { "-" } else { "+" };
            format!("+({}{inner}{}I)", c.re, c.im.abs())
        };
        out.push_str(&body);
        out.push_str(unit);
    }
    if out.is_empty() {
        return "0".to_string();
    }
    match out.strip_prefix('+') {
        Some(rest) => rest.to_string(),
        None => out,
    }
}
