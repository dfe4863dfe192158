//! Functions `sum c * y^a * z^b * exp(r x)`, their partial derivatives, the
//! canonical Nambu (Jacobian) bracket, and realization maps of `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Basis, Element, Family, FunctionalSpec};
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::linalg::sparse_rank;
use crate::rational::{int, Rational};
use crate::report::VerdictReport;
use crate::sampling::ElementSampler;
use crate::window::Window;

/// Exponent key `(ypow, zpow, freq)` of a monomial `y^a z^b exp(freq x)`.
pub type Monomial = (u32, u32, i64);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymFunction {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl SymFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coef: Rational, ypow: u32, zpow: u32, freq: i64) -> Self {
        let mut out = Self::zero();
        out.add_term((ypow, zpow, freq), coef);
        out
    }

    pub fn add_term(&mut self, key: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn as_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }
}

pub fn sym_mul(a: &SymFunction, b: &SymFunction) -> SymFunction {
    let mut out = SymFunction::zero();
    for ((a1, b1, r1), c1) in &a.terms {
        for ((a2, b2, r2), c2) in &b.terms {
            out.add_term((a1 + a2, b1 + b2, r1 + r2), c1 * c2);
        }
    }
    out
}

pub fn partial(var: Var, g: &SymFunction) -> SymFunction {
    let mut out = SymFunction::zero();
    for (&(a, b, r), c) in &g.terms {
        match var {
            Var::X => out.add_term((a, b, r), c * int(r)),
            Var::Y if a > 0 => out.add_term((a - 1, b, r), c * int(a as i64)),
            Var::Z if b > 0 => out.add_term((a, b - 1, r), c * int(b as i64)),
            _ => {}
        }
    }
    out
}

/// `d(g1, g2, g3) / d(x, y, z)`, expanded along the first row.
pub fn nambu_bracket(g1: &SymFunction, g2: &SymFunction, g3: &SymFunction) -> SymFunction {
    let d = |g: &SymFunction| [partial(Var::X, g), partial(Var::Y, g), partial(Var::Z, g)];
    let (a, b, c) = (d(g1), d(g2), d(g3));
    let minor = |i: usize, j: usize| &sym_mul(&b[i], &c[j]) - &sym_mul(&b[j], &c[i]);
    let mut out = sym_mul(&a[0], &minor(1, 2));
    out = &out - &sym_mul(&a[1], &minor(0, 2));
    &out + &sym_mul(&a[2], &minor(0, 1))
}

impl Add for &SymFunction {
    type Output = SymFunction;
    fn add(self, rhs: &SymFunction) -> SymFunction {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &SymFunction {
    type Output = SymFunction;
    fn sub(self, rhs: &SymFunction) -> SymFunction {
        self + &-rhs
    }
}

impl Neg for &SymFunction {
    type Output = SymFunction;
    fn neg(self) -> SymFunction {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SymFunction {
    type Output = SymFunction;
    fn mul(self, rhs: &SymFunction) -> SymFunction {
        sym_mul(self, rhs)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, magnitude: &Rational, (a, b, r): Monomial) -> fmt::Result {
    let mut factors = Vec::new();
    if !magnitude.is_one() {
        factors.push(magnitude.to_string());
    }
    match a {
        0 => {}
        1 => factors.push("y".into()),
        _ => factors.push(format!("y^{a}")),
    }
    match b {
        0 => {}
        1 => factors.push("z".into()),
        _ => factors.push(format!("z^{b}")),
    }
    match r {
        0 => {}
        1 => factors.push("exp(x)".into()),
        -1 => factors.push("exp(-x)".into()),
        _ => factors.push(format!("exp({r}*x)")),
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    f.write_str(&factors.join("*"))
}

impl fmt::Display for SymFunction {
    /// `c*y^a*z^b*exp(r*x)` terms, unit powers and factors omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, &c.abs(), *key)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationMap {
    /// `L_r -> z exp(rx)`, `M_r -> y exp(-rx)`.
    Omega,
    /// `L_r -> z exp(rx)`, `M_r -> -beta_r y exp(kx)`.
    Fk { k: i64, f: FunctionalSpec },
    /// `L_r -> z exp(rx)`, `M_r -> beta_r y exp(kx)`; reverses the sign of every bracket.
    FkPrinted { k: i64, f: FunctionalSpec },
}

impl RealizationMap {
    pub fn name(&self) -> String {
        match self {
            RealizationMap::Omega => "omega".into(),
            RealizationMap::Fk { k, f } => format!("fk(k={k}, beta={f})"),
            RealizationMap::FkPrinted { k, f } => format!("fk-printed(k={k}, beta={f})"),
        }
    }

    pub fn action(&self, b: Basis) -> SymFunction {
        let r = b.index;
        match (self, b.family) {
            (_, Family::L) => SymFunction::monomial(int(1), 0, 1, r),
            (RealizationMap::Omega, Family::M) => SymFunction::monomial(int(1), 1, 0, -r),
            (RealizationMap::Fk { k, f }, Family::M) => SymFunction::monomial(-f.beta(r), 1, 0, *k),
            (RealizationMap::FkPrinted { k, f }, Family::M) => SymFunction::monomial(f.beta(r), 1, 0, *k),
        }
    }

    pub fn apply(&self, u: &Element) -> SymFunction {
        let mut out = SymFunction::zero();
        for (b, c) in u.terms() {
            out = &out + &self.action(*b).scale(c);
        }
        out
    }

    fn matches(&self, spec: &TriBracketSpec) -> bool {
        match (self, spec) {
            (RealizationMap::Omega, TriBracketSpec::Omega) => true,
            (RealizationMap::Fk { k, f }, TriBracketSpec::Fk { k: k2, f: f2 })
            | (RealizationMap::FkPrinted { k, f }, TriBracketSpec::Fk { k: k2, f: f2 }) => k == k2 && f == f2,
            _ => false,
        }
    }
}

impl fmt::Display for RealizationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Homomorphism check `[phi u, phi v, phi w]_Nambu = phi([u, v, w])` over all
/// window basis triples.
pub fn check_realization(map: &RealizationMap, spec: &TriBracketSpec, window: &Window) -> Result<VerdictReport, Error> {
    if !map.matches(spec) {
        return Err(Error::Argument(format!("realization {map} does not correspond to bracket {spec}")));
    }
    let mut report = VerdictReport::new("nambu-realization").param("map", map).param("bracket", spec).param("window", window);
    let basis = window.basis();
    let images: Vec<SymFunction> = basis.iter().map(|b| map.action(*b)).collect();
    let rows: Vec<Result<Vec<String>, Error>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..basis.len() {
                for l in 0..basis.len() {
                    let lhs = nambu_bracket(&images[i], &images[j], &images[l]);
                    let br = tri_bracket(spec, &basis[i].into(), &basis[j].into(), &basis[l].into())?;
                    let rhs = map.apply(&br);
                    if lhs != rhs {
                        out.push(format!("({}, {}, {}): Nambu bracket {lhs}, image of {br} is {rhs}", basis[i], basis[j], basis[l]));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    for row in rows {
        for cex in row? {
            report.fail(cex);
        }
    }
    report.stat("triples", basis.len().pow(3));
    Ok(report)
}

/// Kernel dimension of the realization restricted to the window span.
pub fn check_injectivity(map: &RealizationMap, window: &Window) -> VerdictReport {
    let mut report = VerdictReport::new("nambu-injectivity").param("map", map).param("window", window);
    let images: Vec<BTreeMap<Monomial, Rational>> = window.basis().into_iter().map(|b| map.action(b).as_map().clone()).collect();
    let rank = sparse_rank(&images);
    let kernel = window.dim() - rank;
    report.stat("rank", rank);
    report.stat("kernel_dim", kernel);
    if kernel > 0 {
        report.note(format!("homomorphism with kernel of dimension {kernel} on the window"));
    }
    report
}

/// Antisymmetry and fundamental identity of the Jacobian bracket on basis
/// images (increasing index tuples), and the Leibniz rule on random image
/// products.
pub fn check_nambu_axioms(map: &RealizationMap, window: &Window, samples: usize, seed: u64) -> VerdictReport {
    let mut report =
        VerdictReport::new("nambu-axioms").param("map", map).param("window", window).param("samples", samples).param("seed", seed);
    let images: Vec<SymFunction> = window.basis().into_iter().map(|b| map.action(b)).collect();
    let n = images.len();
    let nb = |a: &SymFunction, b: &SymFunction, c: &SymFunction| nambu_bracket(a, b, c);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let (a, b, c) = (&images[i], &images[j], &images[l]);
                let base = nb(a, b, c);
                for (other, sign) in [(nb(b, c, a), 1), (nb(b, a, c), -1), (nb(a, c, b), -1)] {
                    if base != other.scale(&int(sign)) {
                        report.fail(format!("antisymmetry fails on ({a}, {b}, {c})"));
                    }
                }
            }
        }
    }
    let table: Vec<SymFunction> =
        (0..n * n * n).into_par_iter().map(|idx| nb(&images[idx / (n * n)], &images[(idx / n) % n], &images[idx % n])).collect();
    let at = |i: usize, j: usize, l: usize| &table[(i * n + j) * n + l];
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i1| {
            let mut out = Vec::new();
            for i2 in i1 + 1..n {
                for i3 in i2 + 1..n {
                    for j2 in 0..n {
                        for j3 in j2 + 1..n {
                            let (v2, v3) = (&images[j2], &images[j3]);
                            let lhs = nb(at(i1, i2, i3), v2, v3);
                            let rhs = &(&nb(at(i1, j2, j3), &images[i2], &images[i3]) + &nb(&images[i1], at(i2, j2, j3), &images[i3]))
                                + &nb(&images[i1], &images[i2], at(i3, j2, j3));
                            if lhs != rhs {
                                out.push(format!("fundamental identity fails at index tuple ({i1}, {i2}, {i3}; {j2}, {j3})"));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    for cex in failures {
        report.fail(cex);
    }
    let mut sampler = ElementSampler::new(seed, *window);
    for _ in 0..samples {
        let [g1, g2, h, k] = [(); 4].map(|_| map.apply(&sampler.element()));
        let lhs = nb(&sym_mul(&g1, &g2), &h, &k);
        let rhs = &sym_mul(&g1, &nb(&g2, &h, &k)) + &sym_mul(&g2, &nb(&g1, &h, &k));
        if lhs != rhs {
            report.fail(format!("Leibniz rule fails for g1 = {g1}, g2 = {g2}, h = {h}, k = {k}"));
        }
    }
    // Both sides alternate in (u1, u2, u3) and in (v2, v3), and antisymmetry is checked above.
    report.stat("fundamental_tuples", n * n.saturating_sub(1) * n.saturating_sub(2) / 6 * (n * n.saturating_sub(1) / 2));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn z(r: i64) -> SymFunction {
        SymFunction::monomial(int(1), 0, 1, r)
    }

    fn y(r: i64) -> SymFunction {
        SymFunction::monomial(int(1), 1, 0, r)
    }

    #[test]
    fn products() {
        assert_eq!(sym_mul(&z(1), &z(2)), SymFunction::monomial(int(1), 0, 2, 3));
        assert_eq!(sym_mul(&y(-1), &z(1)), SymFunction::monomial(int(1), 1, 1, 0));
        let (yy, zz) = (y(0), z(0));
        assert_eq!(&(&yy + &zz) * &(&yy - &zz), &sym_mul(&yy, &yy) - &sym_mul(&zz, &zz));
    }

    #[test]
    fn partials() {
        assert_eq!(partial(Var::X, &z(3)), z(3).scale(&int(3)));
        assert!(partial(Var::Y, &z(3)).is_zero());
        let g = SymFunction::monomial(int(1), 1, 2, -1);
        assert_eq!(partial(Var::Z, &g), SymFunction::monomial(int(2), 1, 1, -1));
    }

    #[test]
    fn determinant_displays() {
        for (r, s, t) in [(1, 2, 0), (-2, 3, 1), (0, 0, 4)] {
            assert_eq!(nambu_bracket(&z(r), &z(s), &y(-t)), z(r + s - t).scale(&int(s - r)));
            assert_eq!(nambu_bracket(&z(r), &y(-s), &y(-t)), y(-(s + t - r)).scale(&int(t - s)));
            assert!(nambu_bracket(&z(r), &z(s), &z(t)).is_zero());
            assert!(nambu_bracket(&y(r), &y(s), &y(t)).is_zero());
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(z(1).to_string(), "z*exp(x)");
        assert_eq!(SymFunction::monomial(int(-3), 2, 0, -4).to_string(), "-3*y^2*exp(-4*x)");
        assert_eq!((&y(0) - &z(-1)).to_string(), "-z*exp(-x) + y");
        assert_eq!(SymFunction::monomial(int(2), 0, 0, 0).to_string(), "2");
    }

    #[test]
    fn realizations() {
        let w = Window::symmetric(2);
        assert!(check_realization(&RealizationMap::Omega, &TriBracketSpec::Omega, &w).unwrap().passed());
        let f = FunctionalSpec::polynomial(Poly::parse("t+3").unwrap()).unwrap();
        let spec = TriBracketSpec::fk(1, f.clone());
        assert!(check_realization(&RealizationMap::Fk { k: 1, f: f.clone() }, &spec, &w).unwrap().passed());
        let printed = check_realization(&RealizationMap::FkPrinted { k: 1, f: f.clone() }, &spec, &w).unwrap();
        assert!(!printed.passed());
        let mismatch = check_realization(&RealizationMap::Omega, &spec, &w);
        assert!(matches!(mismatch, Err(Error::Argument(_))));
    }

    #[test]
    fn kernels() {
        let w = Window::symmetric(3);
        assert_eq!(check_injectivity(&RealizationMap::Omega, &w).count("kernel_dim"), 0);
        let fk = RealizationMap::Fk { k: 2, f: FunctionalSpec::default() };
        assert_eq!(check_injectivity(&fk, &w).count("kernel_dim"), 6);
        assert_eq!(check_injectivity(&fk, &Window::empty()).count("kernel_dim"), 0);
    }

    #[test]
    fn axioms_on_small_window() {
        let r = check_nambu_axioms(&RealizationMap::Omega, &Window::symmetric(1), 10, 3);
        assert!(r.passed(), "{}", r.to_text());
    }
}
