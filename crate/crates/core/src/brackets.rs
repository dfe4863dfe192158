//! Lie and ternary brackets on `A`, and the identity checkers.
//!
//! Two closed-form ternary brackets are provided, each paired with an
//! independent constructor route:
//!
//! * `Fk { k, f }`: `[L_r, L_s, M_t] = beta_t (r - s) L_{r+s+k}`, reproduced by
//!   the functional construction `f(u)[v,w] + f(v)[w,u] + f(w)[u,v]` over the
//!   `d_k`-induced Lie bracket.
//! * `Omega`: `[L_r, L_s, M_t] = (s - r) L_{r+s-t}` and
//!   `[L_r, M_s, M_t] = (t - s) M_{s+t-r}`, reproduced by the determinant
//!   with rows `(omega u, u, delta u)`.
//!
//! Brackets not generated by these rules vanish.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{deriv_delta, deriv_dk, elem_mul, functional_eval, involution_omega, Basis, Element, Family, FunctionalSpec};
use crate::analysis::WindowSubspace;
use crate::error::Error;
use crate::linalg::nullspace;
use crate::rational::{int, Rational};
use crate::report::VerdictReport;
use crate::sampling::ElementSampler;
use crate::window::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieBracketSpec {
    /// `[u, v]_k = d_k(u) v - u d_k(v)`
    DkInduced(i64),
    /// `[u, v]_{L_k} = [u, v, L_k]_omega`
    FixedThirdL(i64),
    /// `[u, v]_{M_k} = [u, v, M_k]_omega`
    FixedThirdM(i64),
}

impl fmt::Display for LieBracketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieBracketSpec::DkInduced(k) => write!(f, "dk:{k}"),
            LieBracketSpec::FixedThirdL(k) => write!(f, "fixed-l:{k}"),
            LieBracketSpec::FixedThirdM(k) => write!(f, "fixed-m:{k}"),
        }
    }
}

impl std::str::FromStr for LieBracketSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Config(format!("invalid Lie bracket '{s}', expected dk:K, fixed-l:K or fixed-m:K"));
        let (kind, k) = s.split_once(':').ok_or_else(bad)?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "dk" => Ok(LieBracketSpec::DkInduced(k)),
            "fixed-l" => Ok(LieBracketSpec::FixedThirdL(k)),
            "fixed-m" => Ok(LieBracketSpec::FixedThirdM(k)),
            _ => Err(bad()),
        }
    }
}

/// Evidence that `f([b1, b2]) = 0` for all basis pairs of a window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalCertificate {
    lie: LieBracketSpec,
    window: Window,
    pairs_checked: usize,
}

impl FunctionalCertificate {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn pairs_checked(&self) -> usize {
        self.pairs_checked
    }
}

/// Certifies the vanishing hypothesis of the functional construction on a
/// window, returning the first violation otherwise.
pub fn certify_functional(lie: LieBracketSpec, f: &FunctionalSpec, window: &Window) -> Result<FunctionalCertificate, Error> {
    let basis = window.basis();
    let mut pairs = 0;
    for a in &basis {
        for b in &basis {
            let br = lie_bracket(lie, &Element::basis(*a), &Element::basis(*b));
            let value = functional_eval(f, &br);
            if value != int(0) {
                return Err(Error::Precondition(format!("f([{a}, {b}]) = {value} != 0 under Lie bracket {lie}")));
            }
            pairs += 1;
        }
    }
    Ok(FunctionalCertificate { lie, window: *window, pairs_checked: pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TriBracketSpec {
    Fk { k: i64, f: FunctionalSpec },
    Omega,
    FromFunctional { lie: LieBracketSpec, f: FunctionalSpec, certificate: Option<FunctionalCertificate> },
    Determinant,
}

impl TriBracketSpec {
    pub fn fk(k: i64, f: FunctionalSpec) -> Self {
        TriBracketSpec::Fk { k, f }
    }

    /// The functional construction over `lie`, certified on `window`.
    pub fn from_functional(lie: LieBracketSpec, f: FunctionalSpec, window: &Window) -> Result<Self, Error> {
        let certificate = certify_functional(lie, &f, window)?;
        Ok(TriBracketSpec::FromFunctional { lie, f, certificate: Some(certificate) })
    }

    pub fn name(&self) -> String {
        match self {
            TriBracketSpec::Fk { k, f } => format!("fk(k={k}, beta={f})"),
            TriBracketSpec::Omega => "omega".into(),
            TriBracketSpec::FromFunctional { lie, f, .. } => format!("functional(lie={lie}, beta={f})"),
            TriBracketSpec::Determinant => "determinant".into(),
        }
    }

    pub fn eval(&self, u: &Element, v: &Element, w: &Element) -> Result<Element, Error> {
        tri_bracket(self, u, v, w)
    }
}

impl fmt::Display for TriBracketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn lie_bracket(spec: LieBracketSpec, u: &Element, v: &Element) -> Element {
    match spec {
        LieBracketSpec::DkInduced(k) => &elem_mul(&deriv_dk(k, u), v) - &elem_mul(u, &deriv_dk(k, v)),
        LieBracketSpec::FixedThirdL(k) => omega_bracket(u, v, &Element::l(k)),
        LieBracketSpec::FixedThirdM(k) => omega_bracket(u, v, &Element::m(k)),
    }
}

/// Sign of the permutation that moves the odd-family argument of a mixed
/// triple to its canonical slot (last for `LLM`, first for `LMM`) while
/// keeping the other two in order.
fn mixed_sign(families: [Family; 3], odd: Family) -> i64 {
    if families[1] == odd {
        -1
    } else {
        1
    }
}

/// Sorts a basis triple into `(L, L, M)` or `(L, M, M)` order.
/// Returns the sorted triple and the permutation sign, or `None` for `LLL`/`MMM`.
fn canonical_mixed(a: Basis, b: Basis, c: Basis) -> Option<([Basis; 3], i64)> {
    let fams = [a.family, b.family, c.family];
    let n_l = fams.iter().filter(|f| **f == Family::L).count();
    let args = [a, b, c];
    match n_l {
        2 => {
            let mut ls = args.iter().filter(|x| x.family == Family::L);
            let (l1, l2) = (*ls.next()?, *ls.next()?);
            let m = *args.iter().find(|x| x.family == Family::M)?;
            Some(([l1, l2, m], mixed_sign(fams, Family::M)))
        }
        1 => {
            let l = *args.iter().find(|x| x.family == Family::L)?;
            let mut ms = args.iter().filter(|x| x.family == Family::M);
            let (m1, m2) = (*ms.next()?, *ms.next()?);
            Some(([l, m1, m2], mixed_sign(fams, Family::L)))
        }
        _ => None,
    }
}

/// Closed-form `omega` bracket on a basis triple.
pub fn omega_basis(a: Basis, b: Basis, c: Basis) -> Option<(Basis, Rational)> {
    let ([x, y, z], sign) = canonical_mixed(a, b, c)?;
    let (target, coef) = if y.family == Family::L {
        // [L_r, L_s, M_t] = (s - r) L_{r+s-t}
        let (r, s, t) = (x.index, y.index, z.index);
        (Basis::l(r + s - t), s - r)
    } else {
        // [L_r, M_s, M_t] = (t - s) M_{s+t-r}
        let (r, s, t) = (x.index, y.index, z.index);
        (Basis::m(s + t - r), t - s)
    };
    let coef = sign * coef;
    (coef != 0).then(|| (target, int(coef)))
}

/// Closed-form `[,,]_{f,k}` bracket on a basis triple.
pub fn fk_basis(k: i64, f: &FunctionalSpec, a: Basis, b: Basis, c: Basis) -> Option<(Basis, Rational)> {
    let ([x, y, z], sign) = canonical_mixed(a, b, c)?;
    if y.family != Family::L {
        return None;
    }
    let (r, s, t) = (x.index, y.index, z.index);
    let coef = f.beta(t) * int(sign * (r - s));
    (coef != int(0)).then(|| (Basis::l(r + s + k), coef))
}

fn trilinear(u: &Element, v: &Element, w: &Element, basis_fn: impl Fn(Basis, Basis, Basis) -> Option<(Basis, Rational)>) -> Element {
    let mut out = Element::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let cab = ca * cb;
            for (c, cc) in w.terms() {
                if let Some((target, coef)) = basis_fn(*a, *b, *c) {
                    out.add_term(target, coef * &cab * cc);
                }
            }
        }
    }
    out
}

pub(crate) fn omega_bracket(u: &Element, v: &Element, w: &Element) -> Element {
    trilinear(u, v, w, omega_basis)
}

fn determinant_bracket(u: &Element, v: &Element, w: &Element) -> Element {
    let (ou, ov, ow) = (involution_omega(u), involution_omega(v), involution_omega(w));
    let (du, dv, dw) = (deriv_delta(u), deriv_delta(v), deriv_delta(w));
    // Cofactor expansion along the omega row.
    let minor1 = &elem_mul(v, &dw) - &elem_mul(w, &dv);
    let minor2 = &elem_mul(u, &dw) - &elem_mul(w, &du);
    let minor3 = &elem_mul(u, &dv) - &elem_mul(v, &du);
    let mut out = elem_mul(&ou, &minor1);
    out = &out - &elem_mul(&ov, &minor2);
    &out + &elem_mul(&ow, &minor3)
}

fn functional_bracket(lie: LieBracketSpec, f: &FunctionalSpec, u: &Element, v: &Element, w: &Element) -> Element {
    let mut out = Element::zero();
    out.add_scaled(&lie_bracket(lie, v, w), &functional_eval(f, u));
    out.add_scaled(&lie_bracket(lie, w, u), &functional_eval(f, v));
    out.add_scaled(&lie_bracket(lie, u, v), &functional_eval(f, w));
    out
}

pub fn tri_bracket(spec: &TriBracketSpec, u: &Element, v: &Element, w: &Element) -> Result<Element, Error> {
    Ok(match spec {
        TriBracketSpec::Omega => omega_bracket(u, v, w),
        TriBracketSpec::Fk { k, f } => trilinear(u, v, w, |a, b, c| fk_basis(*k, f, a, b, c)),
        TriBracketSpec::Determinant => determinant_bracket(u, v, w),
        TriBracketSpec::FromFunctional { lie, f, certificate } => {
            if certificate.is_none() {
                return Err(Error::MissingCertificate);
            }
            functional_bracket(*lie, f, u, v, w)
        }
    })
}

fn permutations() -> [([usize; 3], i64); 6] {
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)]
}

/// Total antisymmetry over all ordered window basis triples and all six permutations.
pub fn check_anticommutativity(spec: &TriBracketSpec, window: &Window) -> Result<VerdictReport, Error> {
    let mut report = VerdictReport::new("anticommutativity").param("bracket", spec).param("window", window);
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let failures: Vec<Result<Vec<String>, Error>> = basis
        .par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in &basis {
                for c in &basis {
                    let args = [a, b, c];
                    let base = tri_bracket(spec, a, b, c)?;
                    for (perm, sign) in permutations() {
                        let permuted = tri_bracket(spec, args[perm[0]], args[perm[1]], args[perm[2]])?;
                        if base != permuted.scale(&int(sign)) {
                            out.push(format!("[{a}, {b}, {c}] = {base} but permutation {perm:?} gives {permuted} (sign {sign})"));
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    for f in failures {
        for cex in f? {
            report.fail(cex);
        }
    }
    report.stat("triples", basis.len().pow(3));
    report.stat("permutation_checks", basis.len().pow(3) * 6);
    Ok(report)
}

/// `[[u1,u2,u3],v2,v3] - sum_i [u1,..,[u_i,v2,v3],..,u3]`
pub fn fundamental_residual(spec: &TriBracketSpec, u: [&Element; 3], v2: &Element, v3: &Element) -> Result<Element, Error> {
    let lhs = tri_bracket(spec, &tri_bracket(spec, u[0], u[1], u[2])?, v2, v3)?;
    let mut rhs = tri_bracket(spec, &tri_bracket(spec, u[0], v2, v3)?, u[1], u[2])?;
    rhs = &rhs + &tri_bracket(spec, u[0], &tri_bracket(spec, u[1], v2, v3)?, u[2])?;
    rhs = &rhs + &tri_bracket(spec, u[0], u[1], &tri_bracket(spec, u[2], v2, v3)?)?;
    Ok(&lhs - &rhs)
}

/// Exhaustive fundamental-identity sweep over window basis 5-tuples plus
/// `samples` seeded random element 5-tuples.
pub fn check_fundamental_identity(spec: &TriBracketSpec, window: &Window, samples: usize, seed: u64) -> Result<VerdictReport, Error> {
    let mut report = VerdictReport::new("fundamental-identity")
        .param("bracket", spec)
        .param("window", window)
        .param("samples", samples)
        .param("seed", seed);
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let n = basis.len();
    // Table of all basis triple brackets, index (i*n + j)*n + l.
    let table: Vec<Element> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, l) = (idx / (n * n), (idx / n) % n, idx % n);
            tri_bracket(spec, &basis[i], &basis[j], &basis[l])
        })
        .collect::<Result<_, _>>()?;
    let at = |i: usize, j: usize, l: usize| &table[(i * n + j) * n + l];

    let chunks: Vec<Result<Vec<String>, Error>> = (0..n)
        .into_par_iter()
        .map(|i1| {
            let mut out = Vec::new();
            for i2 in 0..n {
                for i3 in 0..n {
                    let inner = at(i1, i2, i3);
                    for j2 in 0..n {
                        for j3 in 0..n {
                            let (v2, v3) = (&basis[j2], &basis[j3]);
                            let lhs = if inner.is_zero() { Element::zero() } else { tri_bracket(spec, inner, v2, v3)? };
                            let mut rhs = Element::zero();
                            let a = at(i1, j2, j3);
                            if !a.is_zero() {
                                rhs = &rhs + &tri_bracket(spec, a, &basis[i2], &basis[i3])?;
                            }
                            let b = at(i2, j2, j3);
                            if !b.is_zero() {
                                rhs = &rhs + &tri_bracket(spec, &basis[i1], b, &basis[i3])?;
                            }
                            let c = at(i3, j2, j3);
                            if !c.is_zero() {
                                rhs = &rhs + &tri_bracket(spec, &basis[i1], &basis[i2], c)?;
                            }
                            if lhs != rhs {
                                out.push(format!(
                                    "u=({}, {}, {}), v=({v2}, {v3}): residual {}",
                                    basis[i1],
                                    basis[i2],
                                    basis[i3],
                                    &lhs - &rhs
                                ));
                            }
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    for chunk in chunks {
        for cex in chunk? {
            report.fail(cex);
        }
    }
    report.stat("basis_tuples", n.pow(5));

    let mut sampler = ElementSampler::new(seed, *window);
    for _ in 0..samples {
        let u: Vec<Element> = (0..3).map(|_| sampler.element()).collect();
        let (v2, v3) = (sampler.element(), sampler.element());
        let residual = fundamental_residual(spec, [&u[0], &u[1], &u[2]], &v2, &v3)?;
        if !residual.is_zero() {
            report.fail(format!("u=({}, {}, {}), v=({v2}, {v3}): residual {residual}", u[0], u[1], u[2]));
        }
    }
    report.stat("random_tuples", samples);
    if let TriBracketSpec::FromFunctional { lie, .. } = spec {
        report.note(format!("functional construction over Lie bracket {lie}"));
    }
    Ok(report)
}

/// Compares both constructor routes with their closed forms on every window
/// basis triple: the functional construction over `[,]_k` against `Fk`, and
/// the determinant against `Omega`.
pub fn check_constructor_agreement(window: &Window, k: i64, f: &FunctionalSpec) -> Result<VerdictReport, Error> {
    let mut report = VerdictReport::new("constructor-agreement").param("window", window).param("k", k).param("beta", f);
    let lie = LieBracketSpec::DkInduced(k);
    let functional = TriBracketSpec::from_functional(lie, f.clone(), window)?;
    let closed_fk = TriBracketSpec::fk(k, f.clone());
    report.note(format!("functional construction uses the d_k-induced Lie bracket {lie}"));
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let mut compared = 0usize;
    for a in &basis {
        for b in &basis {
            for c in &basis {
                let x = tri_bracket(&functional, a, b, c)?;
                let y = tri_bracket(&closed_fk, a, b, c)?;
                if x != y {
                    report.fail(format!("functional route [{a}, {b}, {c}] = {x}, closed form = {y}"));
                }
                let x = tri_bracket(&TriBracketSpec::Determinant, a, b, c)?;
                let y = tri_bracket(&TriBracketSpec::Omega, a, b, c)?;
                if x != y {
                    report.fail(format!("determinant route [{a}, {b}, {c}] = {x}, closed form = {y}"));
                }
                compared += 1;
            }
        }
    }
    report.stat("triples", compared);
    Ok(report)
}

/// Result of a window center computation.
#[derive(Clone, Debug)]
pub struct CenterWindow {
    /// Window-supported `u` with `[u, b] = 0` for every window basis `b`.
    pub center: WindowSubspace,
    /// The subset that stays central when tested against a widened window.
    pub stable: WindowSubspace,
    pub report: VerdictReport,
}

fn centralizer(spec: LieBracketSpec, window: &Window, tests: &[Basis]) -> WindowSubspace {
    let basis = window.basis();
    // Constraint rows keyed by (test vector, output basis), columns = unknowns.
    let mut rows: std::collections::BTreeMap<(Basis, Basis), Vec<Rational>> = Default::default();
    for (j, e) in basis.iter().enumerate() {
        for t in tests {
            let br = lie_bracket(spec, &Element::basis(*e), &Element::basis(*t));
            for (o, c) in br.terms() {
                rows.entry((*t, *o)).or_insert_with(|| vec![int(0); basis.len()])[j] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_values().collect();
    WindowSubspace::from_rows(*window, nullspace(&rows, basis.len()))
}

/// Exact center of a Lie bracket restricted to the window, with vectors that
/// fail against a widened test set flagged as boundary artifacts.
pub fn center_window(spec: LieBracketSpec, window: &Window) -> CenterWindow {
    let mut report = VerdictReport::new("center").param("lie", spec).param("window", window);
    let center = centralizer(spec, window, &window.basis());
    let wide = window.widen(window.len() as i64);
    let stable = centralizer(spec, window, &wide.basis());
    for e in center.basis_elements() {
        if !stable.contains(&e) {
            report.flag(format!("{e} is central only against the window test set (boundary artifact)"));
        }
    }
    report.stat("center_dim", center.dim());
    report.stat("stable_dim", stable.dim());
    report.note(format!("center = {center}"));
    CenterWindow { center, stable, report }
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::rational::int;
    use crate::testing::element;

    fn specs() -> Vec<TriBracketSpec> {
        vec![TriBracketSpec::Omega, TriBracketSpec::fk(1, FunctionalSpec::default()), TriBracketSpec::fk(-2, "poly:t-1".parse().unwrap())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn alternating(u in element(5, 3), v in element(5, 3), w in element(5, 3)) {
            for spec in specs() {
                let base = tri_bracket(&spec, &u, &v, &w).unwrap();
                prop_assert_eq!(tri_bracket(&spec, &v, &u, &w).unwrap(), -&base);
                prop_assert_eq!(tri_bracket(&spec, &u, &w, &v).unwrap(), -&base);
                prop_assert_eq!(tri_bracket(&spec, &v, &w, &u).unwrap(), base.clone());
                prop_assert!(tri_bracket(&spec, &u, &u, &w).unwrap().is_zero());
            }
        }

        #[test]
        fn trilinear(u in element(5, 3), u2 in element(5, 3), v in element(5, 3), w in element(5, 3), n in -4i64..=4) {
            for spec in specs() {
                let combo = &u + &u2.scale(&int(n));
                let lhs = tri_bracket(&spec, &combo, &v, &w).unwrap();
                let rhs = &tri_bracket(&spec, &u, &v, &w).unwrap() + &tri_bracket(&spec, &u2, &v, &w).unwrap().scale(&int(n));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn fundamental_identity_on_random_elements(
            u1 in element(4, 3), u2 in element(4, 3), u3 in element(4, 3), v2 in element(4, 3), v3 in element(4, 3)
        ) {
            for spec in specs() {
                prop_assert!(fundamental_residual(&spec, [&u1, &u2, &u3], &v2, &v3).unwrap().is_zero());
            }
        }
    }
}
