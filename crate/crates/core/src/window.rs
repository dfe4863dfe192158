//! Finite index windows used to make exhaustive sweeps possible.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, Family};
use crate::error::Error;

/// Inclusive index bounds `lo..=hi`, applied to both the `L` and `M` families.
///
/// The only window with `lo > hi` is the one returned by [`Window::empty`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Config(format!("window lower bound {lo} exceeds upper bound {hi}")));
        }
        Ok(Window { lo, hi })
    }

    /// The symmetric window `-n..=n`.
    pub fn symmetric(n: u32) -> Self {
        let n = i64::from(n);
        Window { lo: -n, hi: n }
    }

    pub fn empty() -> Self {
        Window { lo: 0, hi: -1 }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Number of indices in the window.
    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    /// Number of basis vectors (`L` and `M`) in the window.
    pub fn dim(&self) -> usize {
        2 * self.len()
    }

    /// Largest absolute index in the window.
    pub fn bound(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.lo.abs().max(self.hi.abs())
        }
    }

    pub fn contains(&self, index: i64) -> bool {
        self.lo <= index && index <= self.hi
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    /// All window basis vectors in canonical order (`L` block, then `M` block).
    pub fn basis(&self) -> Vec<Basis> {
        [Family::L, Family::M].into_iter().flat_map(|family| self.indices().map(move |index| Basis { family, index })).collect()
    }

    /// Coordinate position of a basis vector, if it lies in the window.
    pub fn position(&self, b: Basis) -> Option<usize> {
        if !self.contains(b.index) {
            return None;
        }
        let offset = (b.index - self.lo) as usize;
        Some(match b.family {
            Family::L => offset,
            Family::M => self.len() + offset,
        })
    }

    pub fn basis_at(&self, position: usize) -> Basis {
        let n = self.len();
        let (family, offset) = if position < n { (Family::L, position) } else { (Family::M, position - n) };
        Basis { family, index: self.lo + offset as i64 }
    }

    /// The window widened by `margin` on both sides.
    pub fn widen(&self, margin: i64) -> Self {
        Window { lo: self.lo - margin, hi: self.hi + margin }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `lo..hi` (inclusive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Config(format!("invalid window '{s}', expected lo..hi"));
        let (lo, hi) = s.trim().split_once("..").ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Window::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_round_trip() {
        let w = Window::new(-2, 3).unwrap();
        assert_eq!(w.dim(), 12);
        for (i, b) in w.basis().into_iter().enumerate() {
            assert_eq!(w.position(b), Some(i));
            assert_eq!(w.basis_at(i), b);
        }
        assert_eq!(w.position(Basis::l(4)), None);
    }

    #[test]
    fn parse_window() {
        assert_eq!("-3..3".parse::<Window>().unwrap(), Window::symmetric(3));
        assert!("3..-3".parse::<Window>().is_err());
        assert!("3".parse::<Window>().is_err());
        assert!(Window::empty().basis().is_empty());
    }
}
