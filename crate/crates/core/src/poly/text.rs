//! Canonical text form and parser.
//!
//! Polynomials print their terms by ascending total degree and, within a
//! degree, with the first variable most significant: `1+x1+x2`,
//! `x1^2-2*x1*x2`. A non-polynomial rational function prints as
//! `(numerator)/(denominator)`. The parser accepts `+ - * / ^`, parentheses,
//! integer literals and names from the universe, so every printed form reads
//! back to the same value.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, PolyError, Polynomial, RationalFunction};

/// Ordered list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Arc<[String]>,
}

impl Universe {
    /// `x1, ..., xm`.
    pub fn standard(m: usize) -> Self {
        Universe {
            names: (1..=m).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn new(names: Vec<String>) -> Result<Self, PolyError> {
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::BadVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::BadVariableName(n.clone()));
            }
        }
        Ok(Universe {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> RationalFunction {
        RationalFunction::var(self.len(), i)
    }

    pub fn format_polynomial(&self, p: &Polynomial) -> String {
        assert_eq!(p.nvars(), self.len());
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = p.terms().collect();
        terms.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| b.0.exponents().cmp(a.0.exponents()))
        });
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            let vars = self.format_monomial(m);
            match (mag.is_one(), vars.is_empty()) {
                (_, true) => write!(out, "{mag}").unwrap(),
                (true, false) => out.push_str(&vars),
                (false, false) => write!(out, "{mag}*{vars}").unwrap(),
            }
        }
        out
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[v].clone()),
                _ => parts.push(format!("{}^{e}", self.names[v])),
            }
        }
        parts.join("*")
    }

    pub fn format(&self, f: &RationalFunction) -> String {
        let num = self.format_polynomial(f.numerator());
        if f.is_polynomial() {
            num
        } else {
            format!("({num})/({})", self.format_polynomial(f.denominator()))
        }
    }

    pub fn parse(&self, text: &str) -> Result<RationalFunction, PolyError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            universe: self,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    universe: &'a Universe,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<RationalFunction, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, PolyError> {
        let mut acc = self.power()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RationalFunction, PolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RationalFunction, PolyError> {
        let n = self.universe.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalFunction::constant(n, self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.universe.index_of(name) {
                    Some(i) => Ok(RationalFunction::var(n, i)),
                    None => Err(PolyError::UnknownVariable(name.to_string())),
                }
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let u = Universe::standard(2);
        let f = u.parse("(1+x2)/x1").unwrap();
        assert_eq!(u.format(&f), "(1+x2)/(x1)");
        let g = u.parse("(x2 + x1 + 1)/(x2*x1)").unwrap();
        assert_eq!(u.format(&g), "(1+x1+x2)/(x1*x2)");
        assert_eq!(u.format(&u.parse("x1^2 - x2^2").unwrap()), "x1^2-x2^2");
        assert_eq!(u.format(&u.parse("2/x1").unwrap()), "(2)/(x1)");
        assert_eq!(u.format(&u.parse("-3*x1*x2^2 + 0").unwrap()), "-3*x1*x2^2");
        assert_eq!(u.format(&u.parse("x1 - x1").unwrap()), "0");
    }

    #[test]
    fn round_trip() {
        let u = Universe::standard(3);
        for s in ["(1+x1+x2)/(x1*x2)", "x3", "(-1+x1^3)/(2*x2+x3)", "7"] {
            let f = u.parse(s).unwrap();
            assert_eq!(u.parse(&u.format(&f)).unwrap(), f);
        }
    }

    #[test]
    fn parse_errors() {
        let u = Universe::standard(2);
        assert_eq!(u.parse("x9"), Err(PolyError::UnknownVariable("x9".into())));
        assert!(matches!(u.parse("(x1"), Err(PolyError::Parse { .. })));
        assert!(matches!(u.parse("x1 x2"), Err(PolyError::Parse { .. })));
        assert_eq!(u.parse("x1/(x2-x2)"), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn custom_names() {
        let u = Universe::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let f = u.parse("a*c-b").unwrap();
        assert_eq!(u.format(&f), "-b+a*c");
        assert!(Universe::new(vec!["a".into(), "a".into()]).is_err());
        assert!(Universe::new(vec!["1a".into()]).is_err());
    }
}
