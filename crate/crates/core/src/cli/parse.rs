//! The element grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)* | '0'
//! term     := [rational '*'] basis
//! basis    := ('L' | 'M') '[' integer ']'
//! rational := integer ['/' positive-integer]
//! ```
//!
//! A leading sign is accepted on the first term. Whitespace is ignored.
//! Columns in errors are 1-based character positions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Basis, Element, Family};
use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    pub negated: bool,
    pub coefficient: Option<Rational>,
    pub basis: Basis,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ElementExpr {
    pub terms: Vec<TermExpr>,
}

impl ElementExpr {
    pub fn eval(&self) -> Element {
        let mut out = Element::zero();
        for t in &self.terms {
            let mut c = t.coefficient.clone().unwrap_or_else(Rational::one);
            if t.negated {
                c = -c;
            }
            out.add_term(t.basis, c);
        }
        out
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negated) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if let Some(c) = &t.coefficient {
                write!(f, "{c}*")?;
            }
            write!(f, "{}", t.basis)?;
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { column: self.column(), message: message.into() }
    }

    fn expect(&mut self, want: char) -> Result<(), Error> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn integer(&mut self, allow_sign: bool) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if allow_sign {
            if let Some(c @ ('+' | '-')) = self.peek() {
                negative = c == '-';
                self.pos += 1;
                self.skip_ws();
            }
        }
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            let found = self.chars.get(self.pos).map_or("end of input".to_string(), |c| format!("'{c}'"));
            self.pos = self.pos.max(start);
            return Err(self.error(format!("expected an integer, found {found}")));
        }
        let text: String = self.chars[digits_start..self.pos].iter().collect();
        let value: BigInt = text.parse().expect("ascii digits");
        Ok(if negative { -value } else { value })
    }

    fn basis(&mut self) -> Result<Basis, Error> {
        let family = match self.peek() {
            Some('L') => Family::L,
            Some('M') => Family::M,
            Some(c) => return Err(self.error(format!("expected 'L' or 'M', found '{c}'"))),
            None => return Err(self.error("expected 'L' or 'M', found end of input")),
        };
        self.pos += 1;
        self.expect('[')?;
        let column = self.column();
        let index = self.integer(true)?;
        let index = i64::try_from(&index).map_err(|_| Error::Syntax { column, message: format!("index {index} out of range") })?;
        self.expect(']')?;
        Ok(Basis::new(family, index))
    }

    fn term(&mut self, negated: bool) -> Result<TermExpr, Error> {
        let column = self.peek().map_or(self.column(), |_| self.column());
        if matches!(self.peek(), Some('L' | 'M')) {
            return Ok(TermExpr { negated, coefficient: None, basis: self.basis()?, column });
        }
        let num = self.integer(false)?;
        let mut coefficient = Rational::from_integer(num);
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den_column = self.column();
            let den = self.integer(false)?;
            if den.is_zero() {
                return Err(Error::Syntax { column: den_column, message: "zero denominator".into() });
            }
            coefficient /= Rational::from_integer(den);
        }
        self.expect('*')?;
        Ok(TermExpr { negated, coefficient: Some(coefficient), basis: self.basis()?, column })
    }

    fn expr(&mut self) -> Result<ElementExpr, Error> {
        let mut terms = Vec::new();
        let mut negated = false;
        match self.peek() {
            Some('-') => {
                negated = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            Some('0') => {
                let save = self.pos;
                self.pos += 1;
                if self.peek().is_none() {
                    return Ok(ElementExpr::default());
                }
                self.pos = save;
            }
            None => return Err(self.error("empty expression")),
            _ => {}
        }
        loop {
            terms.push(self.term(negated)?);
            match self.peek() {
                None => return Ok(ElementExpr { terms }),
                Some(c @ ('+' | '-')) => {
                    negated = c == '-';
                    self.pos += 1;
                }
                Some(c) => return Err(self.error(format!("expected '+', '-' or end of input, found '{c}'"))),
            }
        }
    }
}

pub fn parse_element_expr(text: &str) -> Result<ElementExpr, Error> {
    Parser { chars: text.chars().collect(), pos: 0 }.expr()
}

pub fn parse_element(text: &str) -> Result<Element, Error> {
    parse_element_expr(text).map(|e| e.eval())
}

/// The expression whose printed form is the canonical print of `e`.
pub fn expr_of(e: &Element) -> ElementExpr {
    let terms = e
        .terms()
        .enumerate()
        .map(|(i, (b, c))| {
            let negated = i > 0 && c.is_negative();
            let magnitude = if negated { -c } else { c.clone() };
            TermExpr { negated, coefficient: (!magnitude.is_one()).then_some(magnitude), basis: *b, column: 0 }
        })
        .collect();
    ElementExpr { terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn parses_examples() {
        let e = parse_element("L[1] + 2*M[-3]").unwrap();
        assert_eq!(e, &Element::l(1) + &Element::term(Basis::m(-3), int(2)));
        assert!(parse_element("1/2*L[0] - 1/2*L[0]").unwrap().is_zero());
        assert_eq!(parse_element("  -  3/6 * M[ 2 ]").unwrap(), Element::term(Basis::m(2), rat(-1, 2)));
        assert_eq!(parse_element("0").unwrap(), Element::zero());
        assert_eq!(parse_element("-4*L[1] + M[0]").unwrap().coeff(Basis::l(1)), int(-4));
    }

    #[test]
    fn reports_columns() {
        match parse_element("L[1") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        match parse_element("L[1] + 2/0*M[1]") {
            Err(Error::Syntax { column, message }) => {
                assert_eq!(column, 10);
                assert_eq!(message, "zero denominator");
            }
            other => panic!("{other:?}"),
        }
        for bad in ["", "X[1]", "L[1] M[2]", "2*", "L[]", "1/-2*L[0]", "L[1] +"] {
            assert!(matches!(parse_element(bad), Err(Error::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let e = &(&Element::l(-2) - &Element::term(Basis::m(3), rat(7, 3))) + &Element::term(Basis::l(5), int(-1));
        let printed = e.to_string();
        assert_eq!(expr_of(&e).to_string(), printed);
        assert_eq!(parse_element(&printed).unwrap(), e);
        let neg = Element::term(Basis::l(0), int(-1));
        assert_eq!(parse_element(&neg.to_string()).unwrap(), neg);
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::testing::element;

    proptest! {
        #[test]
        fn printed_elements_parse_back(e in element(20, 6)) {
            prop_assert_eq!(parse_element(&e.to_string()).unwrap(), e.clone());
            prop_assert_eq!(parse_element(&expr_of(&e).to_string()).unwrap(), e);
        }
    }
}
