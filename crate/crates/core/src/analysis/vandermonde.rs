//! Separating an element of an ideal into basis vectors by iterating
//! `ad(L_r, M_r)`, which acts diagonally with eigenvalue `r - i` on `L_i`
//! and `j - r` on `M_j`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Basis, Element, Family};
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::linalg::{densify, rref};
use crate::rational::Rational;
use crate::report::VerdictReport;
use crate::window::Window;

use super::closure::{span_close, ClosureMode, DEFAULT_DEPTH};
use super::WindowSubspace;

/// Row-reduces `ad^l(L_r, M_r)(u)` for `l = 0..=max_power` and returns the
/// rows that are multiples of a single basis vector, normalized to 1.
pub fn vandermonde_extract(spec: &TriBracketSpec, u: &Element, r: i64, max_power: usize) -> Result<Vec<Element>, Error> {
    if *spec != TriBracketSpec::Omega {
        return Err(Error::Precondition(format!("the separation argument needs the omega bracket, got {spec}")));
    }
    if let Some(top) = u.max_index() {
        if r <= top {
            return Err(Error::Precondition(format!("r = {r} must exceed every index of {u} (max {top})")));
        }
    }
    let (lr, mr) = (Element::l(r), Element::m(r));
    let mut iterates = vec![u.clone()];
    for _ in 0..max_power {
        let next = tri_bracket(spec, &lr, &mr, iterates.last().expect("nonempty"))?;
        iterates.push(next);
    }
    let sparse: Vec<BTreeMap<Basis, Rational>> = iterates.iter().map(|e| e.terms().map(|(b, c)| (*b, c.clone())).collect()).collect();
    let (keys, mut dense) = densify(&sparse);
    rref(&mut dense);
    Ok(dense
        .iter()
        .filter(|row| row.iter().filter(|x| !x.is_zero()).count() == 1)
        .map(|row| {
            let i = row.iter().position(|x| x.is_one()).expect("rref rows are normalized");
            Element::basis(keys[i])
        })
        .collect())
}

/// The smallest admissible `r` for `u`.
pub fn dominating_index(u: &Element) -> i64 {
    u.max_index().map_or(1, |m| m + 1)
}

/// Extraction followed by ideal closure of the first extracted vector.
pub fn vandermonde_report(u: &Element, window: &Window) -> Result<VerdictReport, Error> {
    let r = dominating_index(u);
    let max_power = u.len().saturating_sub(1);
    let mut report =
        VerdictReport::new("vandermonde").param("element", u).param("r", r).param("max_power", max_power).param("window", window);
    let pure = vandermonde_extract(&TriBracketSpec::Omega, u, r, max_power)?;
    let listed: Vec<String> = pure.iter().map(ToString::to_string).collect();
    report.stat("extracted", listed.join(", "));
    if pure.len() != u.len() {
        report.fail(format!("extracted {} pure vectors from a {}-term element", pure.len(), u.len()));
    }
    if let Some(first) = pure.iter().find(|e| e.is_supported_in(window)) {
        let chain = span_close(&TriBracketSpec::Omega, std::slice::from_ref(first), window, ClosureMode::IdealClosure, DEFAULT_DEPTH)?;
        if chain.last() != &WindowSubspace::full(*window) {
            report.fail(format!("ideal closure of {first} has dimension {} < {}", chain.last().dim(), window.dim()));
        }
        report.stat("closure_dim", chain.last().dim());
    }
    let families: Vec<Family> = pure.iter().filter_map(|e| e.support().next().map(|b| b.family)).collect();
    report.stat("extracted_l", families.iter().filter(|f| **f == Family::L).count());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn two_families() {
        let u = &Element::l(1) + &Element::m(2);
        let first = tri_bracket(&TriBracketSpec::Omega, &Element::l(5), &Element::m(5), &u).unwrap();
        assert_eq!(first, &Element::term(Basis::l(1), int(4)) - &Element::term(Basis::m(2), int(3)));
        let pure = vandermonde_extract(&TriBracketSpec::Omega, &u, 5, 1).unwrap();
        assert_eq!(pure, vec![Element::l(1), Element::m(2)]);
    }

    #[test]
    fn already_pure_and_same_family() {
        assert_eq!(vandermonde_extract(&TriBracketSpec::Omega, &Element::l(1), 3, 2).unwrap(), vec![Element::l(1)]);
        let u = &Element::l(1) + &Element::l(2);
        assert_eq!(vandermonde_extract(&TriBracketSpec::Omega, &u, 9, 1).unwrap(), vec![Element::l(1), Element::l(2)]);
    }

    #[test]
    fn precondition() {
        let u = &Element::l(1) + &Element::m(4);
        assert!(matches!(vandermonde_extract(&TriBracketSpec::Omega, &u, 4, 1), Err(Error::Precondition(_))));
    }
}
