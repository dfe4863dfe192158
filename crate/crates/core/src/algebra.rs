//! The commutative associative algebra `A` with basis `{L_r, M_r}`, its
//! finitely supported elements and the structure maps `d_k`, `delta`, `omega`
//! and the linear functional `f`.
//!
//! Multiplication: `L_r L_s = L_{r+s}`, `M_r M_s = M_{r+s}`, `L_r M_s = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::Poly;
use crate::rational::{int, parse_rational, Rational};
use crate::report::VerdictReport;
use crate::window::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L,
    M,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::L => Family::M,
            Family::M => Family::L,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::L => "L",
            Family::M => "M",
        })
    }
}

/// A basis vector `L_r` or `M_r`. Ordered by family, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basis {
    pub family: Family,
    pub index: i64,
}

impl Basis {
    pub fn new(family: Family, index: i64) -> Self {
        Basis { family, index }
    }

    pub fn l(index: i64) -> Self {
        Basis { family: Family::L, index }
    }

    pub fn m(index: i64) -> Self {
        Basis { family: Family::M, index }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family, self.index)
    }
}

/// A finitely supported rational combination of basis vectors.
///
/// No stored coefficient is ever zero, so structural equality is equality of
/// vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Basis, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(b: Basis) -> Self {
        Element::term(b, Rational::one())
    }

    pub fn l(index: i64) -> Self {
        Element::basis(Basis::l(index))
    }

    pub fn m(index: i64) -> Self {
        Element::basis(Basis::m(index))
    }

    pub fn term(b: Basis, coef: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(b, coef);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Basis, Rational)>) -> Self {
        let mut e = Element::zero();
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    /// Adds `coef * b`, dropping the entry if it cancels.
    pub fn add_term(&mut self, b: Basis, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += coef * other`
    pub fn add_scaled(&mut self, other: &Element, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(*b, c * coef);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Basis) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = Basis> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.terms.keys().map(|b| b.index).max()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.terms.keys().map(|b| b.index).min()
    }

    pub fn is_supported_in(&self, window: &Window) -> bool {
        self.terms.keys().all(|b| window.contains(b.index))
    }

    /// Splits into the part supported inside `window` and the remainder.
    pub fn split_by_window(&self, window: &Window) -> (Element, Element) {
        let (inside, outside): (BTreeMap<_, _>, BTreeMap<_, _>) =
            self.terms.iter().map(|(b, c)| (*b, c.clone())).partition(|(b, _)| window.contains(b.index));
        (Element { terms: inside }, Element { terms: outside })
    }

    /// Applies a linear map defined on basis vectors.
    pub fn map_linear(&self, mut f: impl FnMut(Basis) -> Element) -> Element {
        let mut out = Element::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(*b), c);
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl From<Basis> for Element {
    fn from(b: Basis) -> Self {
        Element::basis(b)
    }
}

impl fmt::Display for Element {
    /// Prints in the element grammar, e.g. `L[0] + 1/3*M[2] - 2*M[5]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_one() {
                    write!(f, "{b}")?;
                } else if (-c).is_one() {
                    write!(f, "-{b}")?;
                } else {
                    write!(f, "{c}*{b}")?;
                }
            } else {
                let sign = if c.is_negative() { "-" } else { "+" };
                let magnitude = c.abs();
                if magnitude.is_one() {
                    write!(f, " {sign} {b}")?;
                } else {
                    write!(f, " {sign} {magnitude}*{b}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn elem_add(a: &Element, b: &Element) -> Element {
    a + b
}

fn mul_basis(a: Basis, b: Basis) -> Option<Basis> {
    (a.family == b.family).then(|| Basis::new(a.family, a.index + b.index))
}

/// Bilinear extension of `L_r L_s = L_{r+s}`, `M_r M_s = M_{r+s}`, `L_r M_s = 0`.
pub fn elem_mul(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if let Some(prod) = mul_basis(*ba, *bb) {
                out.add_term(prod, ca * cb);
            }
        }
    }
    out
}

/// `d_k`: `L_r -> r L_{k+r}`, `M_t -> 0`.
pub fn deriv_dk(k: i64, u: &Element) -> Element {
    u.map_linear(|b| match b.family {
        Family::L => Element::term(Basis::l(b.index + k), int(b.index)),
        Family::M => Element::zero(),
    })
}

/// `delta`: `L_r -> r L_r`, `M_r -> r M_r`.
pub fn deriv_delta(u: &Element) -> Element {
    u.map_linear(|b| Element::term(b, int(b.index)))
}

/// `omega`: `L_r -> M_{-r}`, `M_r -> L_{-r}`.
pub fn involution_omega(u: &Element) -> Element {
    u.map_linear(|b| Element::basis(Basis::new(b.family.other(), -b.index)))
}

/// The linear functional `f` with `f(L_r) = 0`; only the values
/// `beta_t = f(M_t)` are specified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalSpec {
    Constant(Rational),
    Polynomial(Poly),
    FiniteSupport(BTreeMap<i64, Rational>),
}

impl Default for FunctionalSpec {
    fn default() -> Self {
        FunctionalSpec::Constant(Rational::one())
    }
}

impl FunctionalSpec {
    pub fn constant(c: Rational) -> Result<Self, Error> {
        FunctionalSpec::Constant(c).validated()
    }

    pub fn polynomial(p: Poly) -> Result<Self, Error> {
        FunctionalSpec::Polynomial(p).validated()
    }

    pub fn finite_support(values: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self, Error> {
        let map = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        FunctionalSpec::FiniteSupport(map).validated()
    }

    /// Rejects the zero functional.
    pub fn validated(self) -> Result<Self, Error> {
        let nonzero = match &self {
            FunctionalSpec::Constant(c) => !c.is_zero(),
            FunctionalSpec::Polynomial(p) => !p.is_zero(),
            FunctionalSpec::FiniteSupport(m) => m.values().any(|v| !v.is_zero()),
        };
        if nonzero {
            Ok(self)
        } else {
            Err(Error::Config("the functional f must be nonzero".into()))
        }
    }

    /// `beta_t = f(M_t)`
    pub fn beta(&self, t: i64) -> Rational {
        match self {
            FunctionalSpec::Constant(c) => c.clone(),
            FunctionalSpec::Polynomial(p) => p.eval_int(t),
            FunctionalSpec::FiniteSupport(m) => m.get(&t).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// Some index `s0` with `beta_{s0} != 0`, preferring small `|s0|`.
    pub fn nonzero_index(&self) -> i64 {
        match self {
            FunctionalSpec::FiniteSupport(m) => {
                m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k).min_by_key(|k| (k.abs(), *k)).unwrap_or(0)
            }
            _ => (0i64..).flat_map(|n| [n, -n]).find(|&t| !self.beta(t).is_zero()).expect("nonzero functional has a nonzero value"),
        }
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalSpec::Constant(c) => write!(f, "const:{c}"),
            FunctionalSpec::Polynomial(p) => {
                let compact: String = p.to_string().chars().filter(|c| !c.is_whitespace()).collect();
                write!(f, "poly:{compact}")
            }
            FunctionalSpec::FiniteSupport(m) => {
                let entries: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "support:{}", entries.join(","))
            }
        }
    }
}

impl FromStr for FunctionalSpec {
    type Err = Error;

    /// `const:1`, `poly:t^2+1`, `support:0=1,2=-1/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| Error::Config(format!("invalid beta '{s}': {why}"));
        let (kind, body) = s.split_once(':').ok_or_else(|| bad("expected kind:value"))?;
        match kind.trim() {
            "const" => {
                let c = parse_rational(body).ok_or_else(|| bad("bad rational"))?;
                FunctionalSpec::constant(c)
            }
            "poly" => FunctionalSpec::polynomial(Poly::parse(body).map_err(|e| bad(&e))?),
            "support" => {
                let mut values = Vec::new();
                for entry in body.split(',').filter(|e| !e.trim().is_empty()) {
                    let (k, v) = entry.split_once('=').ok_or_else(|| bad("expected index=value"))?;
                    let k: i64 = k.trim().parse().map_err(|_| bad("bad index"))?;
                    let v = parse_rational(v).ok_or_else(|| bad("bad rational"))?;
                    values.push((k, v));
                }
                FunctionalSpec::finite_support(values)
            }
            other => Err(bad(&format!("unknown kind '{other}'"))),
        }
    }
}

/// `f(u) = sum over M-terms of coefficient * beta_index`.
pub fn functional_eval(f: &FunctionalSpec, u: &Element) -> Rational {
    u.terms().filter(|(b, _)| b.family == Family::M).map(|(b, c)| c * f.beta(b.index)).fold(Rational::zero(), |acc, x| acc + x)
}

/// Exhaustive window check of the structure maps: Leibniz for `d_k` and
/// `delta`, multiplicativity of `omega`, `delta omega + omega delta = 0`,
/// `omega^2 = id`, and commutativity/associativity of the product.
pub fn check_structure_maps(window: &Window, k: i64) -> VerdictReport {
    let mut report = VerdictReport::new("structure-maps").param("window", window).param("k", k);
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let dk = |u: &Element| deriv_dk(k, u);

    for u in &basis {
        for v in &basis {
            let uv = elem_mul(u, v);
            for (name, d) in [("d_k", &dk as &dyn Fn(&Element) -> Element), ("delta", &deriv_delta)] {
                let lhs = d(&uv);
                let rhs = &elem_mul(&d(u), v) + &elem_mul(u, &d(v));
                report.bump("leibniz_cases");
                if lhs != rhs {
                    report.fail(format!("{name} Leibniz fails on ({u}, {v}): {lhs} != {rhs}"));
                }
            }
            let lhs = involution_omega(&uv);
            let rhs = elem_mul(&involution_omega(u), &involution_omega(v));
            report.bump("omega_multiplicative_cases");
            if lhs != rhs {
                report.fail(format!("omega not multiplicative on ({u}, {v}): {lhs} != {rhs}"));
            }
            if uv != elem_mul(v, u) {
                report.fail(format!("product not commutative on ({u}, {v})"));
            }
            for w in &basis {
                report.bump("associativity_cases");
                if elem_mul(&uv, w) != elem_mul(u, &elem_mul(v, w)) {
                    report.fail(format!("product not associative on ({u}, {v}, {w})"));
                }
            }
        }
    }

    let mut omega_idempotent_everywhere = true;
    for u in &basis {
        let anti = &deriv_delta(&involution_omega(u)) + &involution_omega(&deriv_delta(u));
        if !anti.is_zero() {
            report.fail(format!("(delta omega + omega delta)({u}) = {anti}"));
        }
        let twice = involution_omega(&involution_omega(u));
        if &twice != u {
            report.fail(format!("omega^2({u}) = {twice}"));
        }
        if twice != involution_omega(u) {
            omega_idempotent_everywhere = false;
        }
    }
    if !window.is_empty() && !omega_idempotent_everywhere {
        report.flag("omega is stated to satisfy omega^2 = omega; the checked identity is omega^2 = id, and omega^2 = omega fails (e.g. omega(L_r) = M_{-r} != L_r)");
    }
    report
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::testing::element;

    proptest! {
        #[test]
        fn product_is_commutative_and_associative(a in element(6, 4), b in element(6, 4), c in element(6, 4)) {
            prop_assert_eq!(elem_mul(&a, &b), elem_mul(&b, &a));
            prop_assert_eq!(elem_mul(&elem_mul(&a, &b), &c), elem_mul(&a, &elem_mul(&b, &c)));
        }

        #[test]
        fn derivations_satisfy_leibniz(a in element(6, 4), b in element(6, 4), k in -3i64..=3) {
            let uv = elem_mul(&a, &b);
            prop_assert_eq!(deriv_dk(k, &uv), &elem_mul(&deriv_dk(k, &a), &b) + &elem_mul(&a, &deriv_dk(k, &b)));
            prop_assert_eq!(deriv_delta(&uv), &elem_mul(&deriv_delta(&a), &b) + &elem_mul(&a, &deriv_delta(&b)));
        }

        #[test]
        fn omega_is_a_multiplicative_involution(a in element(6, 4), b in element(6, 4)) {
            prop_assert_eq!(involution_omega(&involution_omega(&a)), a.clone());
            prop_assert_eq!(involution_omega(&elem_mul(&a, &b)), elem_mul(&involution_omega(&a), &involution_omega(&b)));
            let anti = &deriv_delta(&involution_omega(&a)) + &involution_omega(&deriv_delta(&a));
            prop_assert!(anti.is_zero());
        }

        #[test]
        fn functional_is_linear_and_kills_l(a in element(6, 4), b in element(6, 4), n in -5i64..=5) {
            let f: FunctionalSpec = "poly:t^2+1".parse().unwrap();
            let combo = &a + &b.scale(&int(n));
            prop_assert_eq!(functional_eval(&f, &combo), functional_eval(&f, &a) + functional_eval(&f, &b) * int(n));
            let ls = Element::from_terms(a.terms().filter(|(b, _)| b.family == Family::L).map(|(b, c)| (*b, c.clone())));
            prop_assert!(functional_eval(&f, &ls).is_zero());
        }
    }
}
