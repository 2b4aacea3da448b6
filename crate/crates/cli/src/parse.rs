//! Polynomial and rational-function expressions in the variable `t`.
//!
//! ```text
//! ratfunc := expr ( '/' expr )?
//! expr    := term ( ('+' | '-') term )*
//! term    := unary ( '*' unary )*
//! unary   := ('+' | '-') unary | power
//! power   := atom ( '^' digits )?
//! atom    := digits ( '/' digits )? | 't' | '(' expr ')'
//! ```
//!
//! A sum next to the top-level `/` must be parenthesized.

use eds_core::algebra::{Field, Poly, RatFunc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

const MAX_EXPONENT: u32 = 4096;

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    field: &'a F,
}

type PResult<T> = Result<T, ParseError>;

impl<'a, F: Field> Parser<'a, F> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (
            start,
            std::str::from_utf8(&self.src[start..self.pos]).unwrap(),
        )
    }

    /// Returns the polynomial and its number of top-level summands.
    fn expr(&mut self) -> PResult<(Poly<F>, usize)> {
        let mut acc = self.term()?;
        let mut terms = 1;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok((acc, terms)),
            }
            terms += 1;
        }
    }

    fn term(&mut self) -> PResult<Poly<F>> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Poly<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Poly<F>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let (start, text) = self.digits();
        if text.is_empty() {
            return self.err(start, "expected a non-negative integer exponent");
        }
        match text.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => self.err(start, format!("exponent exceeds {MAX_EXPONENT}")),
        }
    }

    fn literal(&mut self) -> PResult<Poly<F>> {
        let (start, num) = self.digits();
        let num: BigInt = num.parse().unwrap();
        let save = self.pos;
        let mut den = BigInt::from(1);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let (dstart, text) = self.digits();
                den = text.parse().unwrap();
                if den.is_zero() {
                    return self.err(dstart, "zero denominator in literal");
                }
            } else {
                self.pos = save;
            }
        }
        let q = BigRational::new(num, den);
        match self.field.from_rational(&q) {
            Some(c) => Ok(Poly::constant(self.field, c)),
            None => self.err(
                start,
                format!("literal {q} is not defined in {}", self.field.descriptor()),
            ),
        }
    }

    fn atom(&mut self) -> PResult<Poly<F>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::t(self.field))
            }
            Some(b'(') => {
                self.pos += 1;
                let (p, _) = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(p)
                    }
                    Some(b'/') => self.err(self.pos, "division is only allowed at the top level"),
                    _ => self.err(self.pos, "expected ')'"),
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected character '{}'", c as char)),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses `num` or `num / den`.
pub fn parse_ratfunc<F: Field>(field: &F, text: &str) -> Result<RatFunc<F>, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
    };
    let (num, num_terms) = p.expr()?;
    let mut den = Poly::one(field);
    if p.peek() == Some(b'/') {
        let slash = p.pos;
        p.pos += 1;
        let (d, den_terms) = p.expr()?;
        if num_terms > 1 || den_terms > 1 {
            return p.err(
                slash,
                "parenthesize the numerator and denominator of a quotient",
            );
        }
        if d.is_zero() {
            return p.err(slash, "division by zero");
        }
        den = d;
    }
    if let Some(c) = p.peek() {
        let msg = if c == b'/' {
            "only one top-level division is allowed".to_string()
        } else {
            format!("unexpected character '{}'", c as char)
        };
        return p.err(p.pos, msg);
    }
    Ok(RatFunc::new(num, den).expect("nonzero denominator"))
}

/// Parses a polynomial; a top-level quotient must simplify to one.
pub fn parse_poly<F: Field>(field: &F, text: &str) -> Result<Poly<F>, ParseError> {
    let r = parse_ratfunc(field, text)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError {
            offset: 0,
            message: format!("{r} is not a polynomial"),
        }),
    }
}

/// Parses a constant.
pub fn parse_elem<F: Field>(field: &F, text: &str) -> Result<F::Elem, ParseError> {
    let p = parse_poly(field, text)?;
    if !p.is_constant() {
        return Err(ParseError {
            offset: 0,
            message: format!("{p} is not a constant"),
        });
    }
    Ok(p.coeff(0))
}

pub fn print_poly<F: Field>(p: &Poly<F>) -> String {
    p.format_with("t")
}

pub fn print_ratfunc<F: Field>(r: &RatFunc<F>) -> String {
    r.format_with("t")
}
