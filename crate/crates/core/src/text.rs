//! Text form of jet polynomials and Laurent expansions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := 'x' NAT ['^' NAT]
//! coeff  := ['-'] NAT ['/' NAT]
//! ```
//!
//! Whitespace is insignificant. A leading sign is also accepted in front of a
//! bare factor (`-x2`), which is how negative unit coefficients print.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentExpansion;
use crate::poly::{JetMonomial, JetPolynomial};
use crate::rational::Rational;
use crate::{Error, Result};

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Factors from the highest derivative order down, `"1"` for the unit.
pub fn format_monomial(m: &JetMonomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts: Vec<String> = m
        .iter()
        .map(|(r, e)| {
            if e == 1 {
                format!("x{r}")
            } else {
                format!("x{r}^{e}")
            }
        })
        .collect();
    parts.reverse();
    parts.join("*")
}

fn push_term(out: &mut String, first: bool, c: &Rational, body: Option<String>) {
    let negative = c.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let mag = c.abs();
    match body {
        None => out.push_str(&format_rational(&mag)),
        Some(b) if mag.is_one() => out.push_str(&b),
        Some(b) => {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&b);
        }
    }
}

pub fn format_poly(p: &JetPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let body = (!m.is_one()).then(|| format_monomial(m));
        push_term(&mut out, i == 0, c, body);
    }
    out
}

/// Terms as `c*N/x0^k` (or `c*N*x0^k` for positive powers).
pub fn format_laurent(e: &LaurentExpansion) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in e.terms().enumerate() {
        let x0 = match k.x0_power {
            0 => None,
            1 => Some("x0".to_string()),
            p if p > 0 => Some(format!("x0^{p}")),
            -1 => Some("/x0".to_string()),
            p => Some(format!("/x0^{}", -p)),
        };
        let body = match (k.numerator.is_one(), x0) {
            (true, None) => None,
            (true, Some(x)) if x.starts_with('/') => Some(format!("1{x}")),
            (true, Some(x)) => Some(x),
            (false, None) => Some(format_monomial(&k.numerator)),
            (false, Some(x)) if x.starts_with('/') => Some(format!("{}{x}", format_monomial(&k.numerator))),
            (false, Some(x)) => Some(format!("{}*{x}", format_monomial(&k.numerator))),
        };
        push_term(&mut out, i == 0, c, body);
    }
    out
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let offset = self.chars.get(self.pos).map_or(self.src.len(), |(o, _)| *o);
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error("expected a natural number"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_nat(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.nat()?;
        u32::try_from(v).map_err(|_| {
            self.pos = at;
            self.error(format!("{what} is too large"))
        })
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = self.nat()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.nat()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<JetMonomial> {
        if !self.eat('x') {
            return Err(self.error("expected a variable 'x<order>'"));
        }
        let order = self.small_nat("variable order")? as usize;
        let exp = if self.eat('^') {
            self.small_nat("exponent")?
        } else {
            1
        };
        Ok(JetMonomial::var_pow(order, exp))
    }

    fn term(&mut self) -> Result<(JetMonomial, Rational)> {
        let mut sign = Rational::one();
        if self.eat('-') {
            sign = -sign;
        }
        let mut coeff = Rational::one();
        let mut mono = JetMonomial::one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coeff()?;
                if !self.eat('*') {
                    return Ok((mono, sign * coeff));
                }
                mono = self.factor()?;
            }
            Some('x') => mono = self.factor()?,
            _ => return Err(self.error("expected a coefficient or variable")),
        }
        while self.eat('*') {
            mono = mono.mul(&self.factor()?);
        }
        Ok((mono, sign * coeff))
    }

    fn expr(&mut self) -> Result<JetPolynomial> {
        let mut p = JetPolynomial::zero();
        let (m, c) = self.term()?;
        p.add_term(m, c);
        loop {
            let negate = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                None => break,
                Some(_) => return Err(self.error("expected '+', '-' or end of input")),
            };
            self.pos += 1;
            let (m, c) = self.term()?;
            p.add_term(m, if negate { -c } else { c });
        }
        Ok(p)
    }
}

/// Parses the text form into a canonical polynomial; like terms combine.
pub fn parse_poly(s: &str) -> Result<JetPolynomial> {
    Parser::new(s).expr()
}
