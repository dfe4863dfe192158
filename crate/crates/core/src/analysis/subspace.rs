use std::fmt;

use num_traits::Zero;

use crate::algebra::Element;
use crate::error::Error;
use crate::linalg::{nullspace, rref};
use crate::rational::Rational;
use crate::window::Window;

/// Coordinates of `e` over the window basis, or `None` if `e` leaves the window.
pub fn to_coords(window: &Window, e: &Element) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); window.dim()];
    for (b, c) in e.terms() {
        v[window.position(*b)?] = c.clone();
    }
    Some(v)
}

pub fn from_coords(window: &Window, v: &[Rational]) -> Element {
    Element::from_terms(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (window.basis_at(i), c.clone())))
}

/// A subspace of the window coordinate space, stored as an exact reduced
/// row-echelon basis. Two subspaces are equal iff their row sets are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSubspace {
    window: Window,
    rows: Vec<Vec<Rational>>,
}

impl WindowSubspace {
    pub fn zero(window: Window) -> Self {
        WindowSubspace { window, rows: Vec::new() }
    }

    pub fn full(window: Window) -> Self {
        let elems: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
        Self::from_elements(window, &elems).expect("basis lies in its window")
    }

    pub fn from_elements(window: Window, elems: &[Element]) -> Result<Self, Error> {
        let mut rows = Vec::with_capacity(elems.len());
        for e in elems {
            rows.push(to_coords(&window, e).ok_or_else(|| Error::Argument(format!("{e} is not supported in window {window}")))?);
        }
        Ok(Self::from_rows(window, rows))
    }

    pub fn from_rows(window: Window, mut rows: Vec<Vec<Rational>>) -> Self {
        rref(&mut rows);
        WindowSubspace { window, rows }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        self.rows.iter().map(|r| from_coords(&self.window, r)).collect()
    }

    /// Exact membership; elements leaving the window are never members.
    pub fn contains(&self, e: &Element) -> bool {
        match to_coords(&self.window, e) {
            Some(v) => self.reduce(v).iter().all(Zero::is_zero),
            None => false,
        }
    }

    /// Residual of `v` after eliminating every pivot column.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for row in &self.rows {
            let p = pivot(row);
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        v
    }

    /// Adds an element to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, e: &Element) -> Result<bool, Error> {
        let v = to_coords(&self.window, e).ok_or_else(|| Error::Argument(format!("{e} is not supported in window {}", self.window)))?;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        let at = self.rows.iter().position(|r| pivot(r) > p).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &WindowSubspace) -> bool {
        self.window == other.window && self.basis_elements().iter().all(|e| other.contains(e))
    }

    pub fn sum(&self, other: &WindowSubspace) -> WindowSubspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::from_rows(self.window, rows)
    }

    pub fn intersection(&self, other: &WindowSubspace) -> WindowSubspace {
        let nu = self.rows.len();
        let nv = other.rows.len();
        let dim = self.window.dim();
        // Columns are u_1..u_nu, -v_1..-v_nv; a null vector gives a common element.
        let matrix: Vec<Vec<Rational>> =
            (0..dim).map(|i| self.rows.iter().map(|u| u[i].clone()).chain(other.rows.iter().map(|v| -v[i].clone())).collect()).collect();
        let common = nullspace(&matrix, nu + nv)
            .into_iter()
            .map(|coeffs| {
                let mut acc = vec![Rational::zero(); dim];
                for (a, u) in coeffs.iter().zip(&self.rows) {
                    for (x, y) in acc.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                acc
            })
            .collect();
        Self::from_rows(self.window, common)
    }

    /// The subspace spanned by the basis vectors accepted by `keep`.
    pub fn coordinate_span(window: Window, keep: impl Fn(crate::algebra::Basis) -> bool) -> Self {
        let elems: Vec<Element> = window.basis().into_iter().filter(|b| keep(*b)).map(Element::basis).collect();
        Self::from_elements(window, &elems).expect("basis lies in its window")
    }
}

fn pivot(row: &[Rational]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("rows are nonzero")
}

impl fmt::Display for WindowSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.basis_elements().iter().map(ToString::to_string).collect();
        write!(f, "span{{{}}}", elems.join(", "))
    }
}
