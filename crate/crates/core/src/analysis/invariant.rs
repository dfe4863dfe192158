//! Invariant-subspace search for finitely truncated module actions.
//!
//! If some acting operator is diagonal on the truncated basis with pairwise
//! distinct eigenvalues, every invariant subspace is spanned by basis
//! vectors, so irreducibility is exactly strong connectivity of the graph
//! `j -> i` whenever some action has a nonzero `(i, j)` entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::rank;
use crate::operators::{decompose, op_commutator, Operator};
use crate::rational::Rational;
use crate::window::Window;

/// Column `j` of each matrix is the image of basis vector `j`.
#[derive(Clone, Debug, Default)]
pub struct ModuleAction {
    pub basis_labels: Vec<String>,
    pub actions: Vec<(String, Vec<BTreeMap<usize, Rational>>)>,
    /// Image components that fell outside the truncated basis.
    pub escapes: Vec<String>,
    /// Images that are not in the span of the extended family at all.
    pub not_closed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Coordinate rows spanning a proper nonzero invariant subspace.
    Reducible(Vec<Vec<Rational>>),
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct InvariantSearch {
    pub verdict: Irreducibility,
    pub method: String,
}

impl ModuleAction {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    fn diagonal_with_distinct_eigenvalues(&self) -> Option<&str> {
        self.actions.iter().find_map(|(name, cols)| {
            let mut eigen = BTreeSet::new();
            for (j, col) in cols.iter().enumerate() {
                if col.keys().any(|i| *i != j) {
                    return None;
                }
                if !eigen.insert(col.get(&j).cloned().unwrap_or_else(Rational::zero)) {
                    return None;
                }
            }
            Some(name.as_str())
        })
    }

    fn reach(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(j) = stack.pop() {
            for (_, cols) in &self.actions {
                for i in cols[j].keys() {
                    if seen.insert(*i) {
                        stack.push(*i);
                    }
                }
            }
        }
        seen
    }

    /// Span of `start` under repeated application of every action.
    fn cyclic_span(&self, start: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut span = vec![unit(n, start)];
        let mut frontier = span.clone();
        while let Some(v) = frontier.pop() {
            for (_, cols) in &self.actions {
                let mut img = vec![Rational::zero(); n];
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, a) in &cols[j] {
                        img[*i] += c * a;
                    }
                }
                let before = rank(&span);
                span.push(img.clone());
                if rank(&span) > before {
                    frontier.push(img);
                } else {
                    span.pop();
                }
            }
        }
        span
    }
}

fn unit(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::from_integer(1.into());
    v
}

pub fn invariant_subspace_search(action: &ModuleAction) -> InvariantSearch {
    let n = action.dim();
    if n == 0 {
        return InvariantSearch { verdict: Irreducibility::Inconclusive, method: "empty module".into() };
    }
    if let Some(name) = action.diagonal_with_distinct_eigenvalues() {
        let smallest = (0..n).map(|j| action.reach(j)).min_by_key(BTreeSet::len).unwrap_or_default();
        let verdict = if smallest.len() == n {
            Irreducibility::Irreducible
        } else {
            Irreducibility::Reducible(smallest.into_iter().map(|j| unit(n, j)).collect())
        };
        return InvariantSearch { verdict, method: format!("weight basis of {name}; reachability closure") };
    }
    for j in 0..n {
        let span = action.cyclic_span(j);
        if span.len() < n {
            return InvariantSearch { verdict: Irreducibility::Reducible(span), method: "cyclic span of a basis vector".into() };
        }
    }
    InvariantSearch { verdict: Irreducibility::Inconclusive, method: "no diagonal action; every cyclic span is full".into() }
}

/// The adjoint action `b -> [a, b]` of `acting` on `span(basis)`, expressed
/// in `extended` (a superset of `basis`) and projected to `basis`.
pub fn adjoint_module_action<K: Clone + PartialEq + Display>(
    acting: &[(String, Operator)],
    basis: &[(K, Operator)],
    extended: &[(K, Operator)],
    window: &Window,
) -> Result<ModuleAction, Error> {
    let mut action = ModuleAction { basis_labels: basis.iter().map(|(k, _)| k.to_string()).collect(), ..Default::default() };
    for (name, a) in acting {
        let mut cols = Vec::with_capacity(basis.len());
        for (key, b) in basis {
            let image = op_commutator(a, b)?;
            let mut col = BTreeMap::new();
            match decompose(&image, extended, window)? {
                None => action.not_closed.push(format!("[{name}, {key}] = {image}")),
                Some((terms, _)) => {
                    for (k, c) in terms {
                        match basis.iter().position(|(bk, _)| *bk == k) {
                            Some(i) => {
                                col.insert(i, c);
                            }
                            None => action.escapes.push(format!("[{name}, {key}] has component {c}*{k}")),
                        }
                    }
                }
            }
            cols.push(col);
        }
        action.actions.push((name.clone(), cols));
    }
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn action(mats: Vec<Vec<Vec<(usize, i64)>>>) -> ModuleAction {
        let n = mats[0].len();
        ModuleAction {
            basis_labels: (0..n).map(|i| format!("e{i}")).collect(),
            actions: mats
                .into_iter()
                .enumerate()
                .map(|(a, cols)| (format!("a{a}"), cols.into_iter().map(|c| c.into_iter().map(|(i, v)| (i, int(v))).collect()).collect()))
                .collect(),
            ..Default::default()
        }
    }

    #[test]
    fn diagonal_plus_shift() {
        let diag = vec![vec![(0, 1)], vec![(1, 2)], vec![(2, 3)]];
        let up = vec![vec![(1, 1)], vec![(2, 1)], vec![]];
        let down = vec![vec![], vec![(0, 1)], vec![(1, 1)]];
        let r = invariant_subspace_search(&action(vec![diag.clone(), up.clone()]));
        assert_eq!(r.verdict, Irreducibility::Reducible(vec![vec![int(0), int(0), int(1)]]));
        let r = invariant_subspace_search(&action(vec![diag, up, down]));
        assert_eq!(r.verdict, Irreducibility::Irreducible);
    }

    #[test]
    fn fallback_finds_cyclic_subspace() {
        // swap has no distinct-eigenvalue diagonal form; span{e0, e1} is invariant
        let swap = vec![vec![(1, 1)], vec![(0, 1)], vec![(2, 1)]];
        let r = invariant_subspace_search(&action(vec![swap]));
        assert!(matches!(r.verdict, Irreducibility::Reducible(_)));
    }
}
