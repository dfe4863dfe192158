//! Univariate polynomials in the basis index `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, parse_rational, Rational};

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b*t`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&int(t))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `p(sign*t + offset)` for `sign` in {1, -1}.
    pub fn compose_affine(&self, sign: i64, offset: i64) -> Self {
        let inner = Poly::linear(int(offset), int(sign));
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Parses expressions such as `t^2+1`, `3*t - 1/2`, `2t`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut result = Poly::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                1
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                -1
            } else if first {
                1
            } else {
                return Err(format!("expected '+' or '-' before '{rest}'"));
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            result = &result + &parse_monomial(term)?.scale(&int(sign));
        }
        Ok(result)
    }
}

fn parse_monomial(term: &str) -> Result<Poly, String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let Some(pos) = term.find('t') else {
        return parse_rational(term).map(Poly::constant).ok_or_else(|| format!("bad coefficient '{term}'"));
    };
    let (coef_part, var_part) = term.split_at(pos);
    let coef_part = coef_part.strip_suffix('*').unwrap_or(coef_part);
    let coef = if coef_part.is_empty() {
        Rational::one()
    } else {
        parse_rational(coef_part).ok_or_else(|| format!("bad coefficient '{coef_part}'"))?
    };
    let power = match var_part[1..].strip_prefix('^') {
        Some(p) => p.parse::<usize>().map_err(|_| format!("bad exponent '{p}'"))?,
        None if var_part.len() == 1 => 1,
        None => return Err(format!("unexpected '{}'", &var_part[1..])),
    };
    let mut coeffs = vec![Rational::zero(); power + 1];
    coeffs[power] = coef;
    Ok(Poly::from_coeffs(coeffs))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                match rhs.coeffs.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "t".to_string(),
                d => format!("t^{d}"),
            };
            match (magnitude.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{magnitude}")?,
                (true, false) => write!(f, "{var}")?,
                (false, false) => write!(f, "{magnitude}*{var}")?,
            }
        }
        Ok(())
    }
}
