//! Inner derivations as exact shift-polynomial operators.
//!
//! An [`Operator`] is a finite sum of channels. A shift channel sends
//! `(from, t)` to `coef(t) * (to, sign*t + offset)`; `sign = -1` covers the
//! index-reflecting maps such as `X_{r,s}(M_t) = (s-r) L_{r+s-t}`. A collapse
//! channel sends every `(from, t)` to the fixed basis vector `target` with
//! weight `coef(t)`, which is how `X_{r,s}(M_t) = beta_t (r-s) L_{r+s+k}`
//! is represented for the `fk` bracket.
//!
//! Coefficients are polynomials in `t` times products of `beta(±t + c)`.
//! When `beta` is constant or polynomial every coefficient reduces to a plain
//! polynomial and operator equality is structural; with a finitely supported
//! `beta` equality is decided on a window.

pub mod fk;
pub mod generators;
pub mod loop_algebra;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Basis, Element, Family, FunctionalSpec};
use crate::brackets::TriBracketSpec;
use crate::error::Error;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::window::Window;

pub use generators::{make_generator, AlgebraKind, GeneratorId, GeneratorTag};

/// `beta(sign*t + offset)` factors, sorted; empty for a plain polynomial.
pub type BetaMonomial = Vec<(i64, i64)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffFn {
    atoms: BTreeMap<BetaMonomial, Poly>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn poly(p: Poly) -> Self {
        Self::atom(Vec::new(), p)
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(Poly::constant(c))
    }

    /// `a + b*t`
    pub fn linear(a: i64, b: i64) -> Self {
        Self::poly(Poly::linear(int(a), int(b)))
    }

    /// `p(t) * beta(t + offset)`
    pub fn poly_beta(p: Poly, offset: i64) -> Self {
        Self::atom(vec![(1, offset)], p)
    }

    fn atom(mut mono: BetaMonomial, p: Poly) -> Self {
        mono.sort();
        let mut atoms = BTreeMap::new();
        if !p.is_zero() {
            atoms.insert(mono, p);
        }
        CoeffFn { atoms }
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&BetaMonomial, &Poly)> {
        self.atoms.iter()
    }

    pub fn has_beta(&self) -> bool {
        self.atoms.keys().any(|m| !m.is_empty())
    }

    /// The plain polynomial, if no `beta` factor remains.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.atoms.len() {
            0 => Some(Poly::zero()),
            1 => self.atoms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Largest polynomial degree among the atoms.
    pub fn degree(&self) -> Option<usize> {
        self.atoms.values().filter_map(Poly::degree).max()
    }

    fn add_atom(&mut self, mono: BetaMonomial, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.atoms.remove(&mono) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.atoms.insert(mono, sum);
        }
    }

    pub fn add(&self, other: &CoeffFn) -> CoeffFn {
        let mut out = self.clone();
        for (m, p) in &other.atoms {
            out.add_atom(m.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (m, p) in &self.atoms {
            out.add_atom(m.clone(), p.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &CoeffFn) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (m1, p1) in &self.atoms {
            for (m2, p2) in &other.atoms {
                let mut mono: BetaMonomial = m1.iter().chain(m2.iter()).copied().collect();
                mono.sort();
                out.add_atom(mono, p1 * p2);
            }
        }
        out
    }

    /// `c(sign*t + offset)`
    pub fn compose_affine(&self, sign: i64, offset: i64) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (m, p) in &self.atoms {
            let mut mono: BetaMonomial = m.iter().map(|&(s, c)| (s * sign, s * offset + c)).collect();
            mono.sort();
            out.add_atom(mono, p.compose_affine(sign, offset));
        }
        out
    }

    pub fn eval(&self, t: i64, beta: Option<&FunctionalSpec>) -> Result<Rational, Error> {
        let mut total = Rational::zero();
        for (m, p) in &self.atoms {
            let mut value = p.eval_int(t);
            for &(s, c) in m {
                value *= beta.ok_or(Error::MissingFunctional)?.beta(s * t + c);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes `beta` when it is constant or polynomial.
    pub fn concretize(&self, beta: &FunctionalSpec) -> CoeffFn {
        if matches!(beta, FunctionalSpec::FiniteSupport(_)) {
            return self.clone();
        }
        let mut out = CoeffFn::zero();
        for (m, p) in &self.atoms {
            let mut acc = p.clone();
            for &(s, c) in m {
                acc = match beta {
                    FunctionalSpec::Constant(v) => acc.scale(v),
                    FunctionalSpec::Polynomial(q) => &acc * &q.compose_affine(s, c),
                    FunctionalSpec::FiniteSupport(_) => unreachable!(),
                };
            }
            out.add_atom(Vec::new(), acc);
        }
        out
    }
}

fn fmt_offset(f: &mut fmt::Formatter<'_>, sign: i64, offset: i64) -> fmt::Result {
    let var = if sign < 0 { "-t" } else { "t" };
    match offset {
        0 => f.write_str(var),
        o if o > 0 => write!(f, "{var}+{o}"),
        o => write!(f, "{var}{o}"),
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, p)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            for &(s, c) in m {
                f.write_str("*beta(")?;
                fmt_offset(f, s, c)?;
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKey {
    /// `(from, t) -> (to, sign*t + offset)`
    Shift { from: Family, to: Family, sign: i64, offset: i64 },
    /// `(from, t) -> target`
    Collapse { from: Family, target: Basis },
}

impl ChannelKey {
    pub fn direct(from: Family, to: Family, offset: i64) -> Self {
        ChannelKey::Shift { from, to, sign: 1, offset }
    }

    pub fn reflect(from: Family, to: Family, offset: i64) -> Self {
        ChannelKey::Shift { from, to, sign: -1, offset }
    }

    pub fn from_family(&self) -> Family {
        match self {
            ChannelKey::Shift { from, .. } | ChannelKey::Collapse { from, .. } => *from,
        }
    }

    pub fn image(&self, t: i64) -> Basis {
        match *self {
            ChannelKey::Shift { to, sign, offset, .. } => Basis::new(to, sign * t + offset),
            ChannelKey::Collapse { target, .. } => target,
        }
    }
}

impl fmt::Display for ChannelKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelKey::Shift { from, to, sign, offset } => {
                write!(f, "{from}[t] -> {to}[")?;
                fmt_offset(f, *sign, *offset)?;
                f.write_str("]")
            }
            ChannelKey::Collapse { from, target } => write!(f, "{from}[t] -> {target}"),
        }
    }
}

/// How an equality between operators was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Structural,
    WindowDecided,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Operator {
    channels: BTreeMap<ChannelKey, CoeffFn>,
    beta: Option<FunctionalSpec>,
}

/// Structural coordinates: `(channel, beta monomial, degree)`.
pub type StructuralKey = (ChannelKey, BetaMonomial, usize);

impl Operator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn with_beta(beta: Option<FunctionalSpec>) -> Self {
        Operator { channels: BTreeMap::new(), beta }
    }

    pub fn beta(&self) -> Option<&FunctionalSpec> {
        self.beta.as_ref()
    }

    pub fn channels(&self) -> impl Iterator<Item = (&ChannelKey, &CoeffFn)> {
        self.channels.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.channels.is_empty()
    }

    pub fn add_channel(&mut self, key: ChannelKey, coef: CoeffFn) {
        let coef = match &self.beta {
            Some(b) => coef.concretize(b),
            None => coef,
        };
        if coef.is_zero() {
            return;
        }
        let sum = match self.channels.remove(&key) {
            Some(c) => c.add(&coef),
            None => coef,
        };
        if !sum.is_zero() {
            self.channels.insert(key, sum);
        }
    }

    /// True if any `beta` factor survives concretization.
    pub fn has_symbolic_beta(&self) -> bool {
        self.channels.values().any(CoeffFn::has_beta)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.channels.values().filter_map(CoeffFn::degree).max()
    }

    fn merged_beta(&self, other: &Operator) -> Result<Option<FunctionalSpec>, Error> {
        match (&self.beta, &other.beta) {
            (Some(a), Some(b)) if a != b => Err(Error::Argument(format!("operators use different functionals {a} and {b}"))),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Operator {
        let mut out = Operator::with_beta(self.beta.clone());
        for (k, v) in &self.channels {
            out.add_channel(*k, v.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Operator) -> Result<Operator, Error> {
        let mut out = Operator::with_beta(self.merged_beta(other)?);
        for (k, v) in self.channels.iter().chain(other.channels.iter()) {
            out.add_channel(*k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator, Error> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Image of a single basis vector.
    pub fn apply_basis(&self, b: Basis) -> Result<Element, Error> {
        let mut out = Element::zero();
        for (key, coef) in &self.channels {
            if key.from_family() == b.family {
                out.add_term(key.image(b.index), coef.eval(b.index, self.beta.as_ref())?);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, u: &Element) -> Result<Element, Error> {
        let mut out = Element::zero();
        for (b, c) in u.terms() {
            out.add_scaled(&self.apply_basis(*b)?, c);
        }
        Ok(out)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Operator) -> Result<Operator, Error> {
        let mut out = Operator::with_beta(self.merged_beta(other)?);
        let outer = Operator { channels: self.channels.clone(), beta: out.beta.clone() };
        for (k2, c2) in &other.channels {
            match *k2 {
                ChannelKey::Shift { from, to: mid, sign: s2, offset: o2 } => {
                    for (k1, c1) in &outer.channels {
                        if k1.from_family() != mid {
                            continue;
                        }
                        let coef = c2.mul(&c1.compose_affine(s2, o2));
                        let key = match *k1 {
                            ChannelKey::Shift { to, sign: s1, offset: o1, .. } => {
                                ChannelKey::Shift { from, to, sign: s1 * s2, offset: s1 * o2 + o1 }
                            }
                            ChannelKey::Collapse { target, .. } => ChannelKey::Collapse { from, target },
                        };
                        out.add_channel(key, coef);
                    }
                }
                ChannelKey::Collapse { from, target } => {
                    for (b, c) in outer.apply_basis(target)?.terms() {
                        out.add_channel(ChannelKey::Collapse { from, target: *b }, c2.scale(c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn structural_vector(&self) -> Option<BTreeMap<StructuralKey, Rational>> {
        let mut out = BTreeMap::new();
        for (key, coef) in &self.channels {
            for (mono, p) in coef.atoms() {
                for (deg, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.insert((*key, mono.clone(), deg), c.clone());
                    }
                }
            }
        }
        (!self.has_symbolic_beta()).then_some(out)
    }

    /// Matrix entries `(input, output) -> coefficient` over window inputs;
    /// outputs are kept even when they leave the window.
    pub fn window_vector(&self, window: &Window) -> Result<BTreeMap<(Basis, Basis), Rational>, Error> {
        let mut out = BTreeMap::new();
        for b in window.basis() {
            for (o, c) in self.apply_basis(b)?.terms() {
                out.insert((b, *o), c.clone());
            }
        }
        Ok(out)
    }

    /// Exact equality; structural when no symbolic `beta` remains.
    pub fn equals(&self, other: &Operator, window: &Window) -> Result<(bool, Decision), Error> {
        if self.channels == other.channels {
            return Ok((true, Decision::Structural));
        }
        if !self.has_symbolic_beta() && !other.has_symbolic_beta() {
            return Ok((false, Decision::Structural));
        }
        let diff = self.sub(other)?;
        Ok((diff.window_vector(window)?.is_empty(), Decision::WindowDecided))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("{0}");
        }
        f.write_str("{")?;
        for (i, (k, c)) in self.channels.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{k} : {c}")?;
        }
        f.write_str("}")
    }
}

/// `[D1, D2] = D1 D2 - D2 D1`
pub fn op_commutator(d1: &Operator, d2: &Operator) -> Result<Operator, Error> {
    d1.compose(d2)?.sub(&d2.compose(d1)?)
}

pub fn op_apply(d: &Operator, u: &Element) -> Result<Element, Error> {
    d.apply(u)
}

fn omega_ad_basis(a: Basis, b: Basis, out: &mut Operator, c: &Rational) {
    use Family::{L, M};
    let (r, s) = (a.index, b.index);
    let mut put = |key, coef: CoeffFn| out.add_channel(key, coef.scale(c));
    match (a.family, b.family) {
        (L, L) => put(ChannelKey::reflect(M, L, r + s), CoeffFn::linear(s - r, 0)),
        (M, M) => put(ChannelKey::reflect(L, M, r + s), CoeffFn::linear(s - r, 0)),
        (L, M) | (M, L) => {
            let sign = if a.family == L { 1 } else { -1 };
            let (r, s) = if a.family == L { (r, s) } else { (s, r) };
            put(ChannelKey::direct(L, L, r - s), CoeffFn::linear(sign * r, -sign));
            put(ChannelKey::direct(M, M, s - r), CoeffFn::linear(-sign * s, sign));
        }
    }
}

fn fk_ad_basis(k: i64, f: &FunctionalSpec, a: Basis, b: Basis, out: &mut Operator, c: &Rational) {
    use Family::{L, M};
    let (r, s) = (a.index, b.index);
    match (a.family, b.family) {
        (L, L) => {
            let coef = CoeffFn::poly_beta(Poly::constant(int(r - s)), 0).scale(c);
            out.add_channel(ChannelKey::Collapse { from: M, target: Basis::l(r + s + k) }, coef);
        }
        (L, M) | (M, L) => {
            let sign = if a.family == L { 1 } else { -1 };
            let (r, s) = if a.family == L { (r, s) } else { (s, r) };
            // L_t -> beta_s (t - r) L_{t+r+k}
            let coef = CoeffFn::linear(-sign * r, sign).scale(&(f.beta(s) * c));
            out.add_channel(ChannelKey::direct(L, L, r + k), coef);
        }
        (M, M) => {}
    }
}

/// The operator `w -> [u, v, w]`.
pub fn op_from_ad(spec: &TriBracketSpec, u: &Element, v: &Element) -> Result<Operator, Error> {
    let mut out = match spec {
        TriBracketSpec::Omega => Operator::zero(),
        TriBracketSpec::Fk { f, .. } => Operator::with_beta(Some(f.clone())),
        other => return Err(Error::Unsupported(format!("operator form of {other}"))),
    };
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let c = ca * cb;
            match spec {
                TriBracketSpec::Omega => omega_ad_basis(*a, *b, &mut out, &c),
                TriBracketSpec::Fk { k, f } => fk_ad_basis(*k, f, *a, *b, &mut out, &c),
                _ => unreachable!(),
            }
        }
    }
    Ok(out)
}

pub type Combination<K> = (Vec<(K, Rational)>, Decision);

/// Expresses `target` as a combination of `family`, structurally when possible.
pub fn decompose<K: Clone>(target: &Operator, family: &[(K, Operator)], window: &Window) -> Result<Option<Combination<K>>, Error> {
    use crate::linalg::sparse_solve;
    let structural: Option<Vec<_>> = family.iter().map(|(_, op)| op.structural_vector()).collect();
    let (solution, decision) = match (structural, target.structural_vector()) {
        (Some(vecs), Some(t)) => (sparse_solve(&vecs, &t), Decision::Structural),
        _ => {
            let vecs: Vec<_> = family.iter().map(|(_, op)| op.window_vector(window)).collect::<Result<_, _>>()?;
            (sparse_solve(&vecs, &target.window_vector(window)?), Decision::WindowDecided)
        }
    };
    Ok(solution.map(|coeffs| {
        let terms = family.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|((k, _), c)| (k.clone(), c)).collect();
        (terms, decision)
    }))
}

/// Linear combination `sum c_i D_i`.
pub fn combine<'a>(terms: impl IntoIterator<Item = (&'a Operator, Rational)>) -> Result<Operator, Error> {
    let mut out = Operator::zero();
    for (op, c) in terms {
        out = out.add(&op.scale(&c))?;
    }
    Ok(out)
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::brackets::tri_bracket;
    use crate::testing::element;

    fn specs() -> Vec<TriBracketSpec> {
        vec![TriBracketSpec::Omega, TriBracketSpec::fk(1, FunctionalSpec::default()), TriBracketSpec::fk(0, "poly:t+2".parse().unwrap())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn operator_form_matches_bracket(u in element(5, 3), v in element(5, 3), w in element(5, 3)) {
            for spec in specs() {
                let d = op_from_ad(&spec, &u, &v).unwrap();
                prop_assert_eq!(op_apply(&d, &w).unwrap(), tri_bracket(&spec, &u, &v, &w).unwrap());
            }
        }

        #[test]
        fn inner_derivations_close_under_commutator(u1 in element(3, 2), u2 in element(3, 2), v1 in element(3, 2), v2 in element(3, 2), w in element(4, 3)) {
            for spec in specs() {
                let d = op_from_ad(&spec, &u1, &u2).unwrap();
                let e = op_from_ad(&spec, &v1, &v2).unwrap();
                let lhs = op_commutator(&d, &e).unwrap();
                let rhs = op_from_ad(&spec, &tri_bracket(&spec, &u1, &u2, &v1).unwrap(), &v2).unwrap()
                    .add(&op_from_ad(&spec, &v1, &tri_bracket(&spec, &u1, &u2, &v2).unwrap()).unwrap())
                    .unwrap();
                prop_assert_eq!(op_apply(&lhs, &w).unwrap(), op_apply(&rhs, &w).unwrap());
            }
        }
    }
}
