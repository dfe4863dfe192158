//! Exact Gauss-Jordan elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(&mut reduced);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

/// Finds coefficients `x` with `sum x_i * vectors[i] = target`, if any.
/// When the vectors are dependent, free coefficients are set to zero.
pub fn solve_combination(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = vectors.len();
    let dim = target.len();
    // Augmented system: one row per coordinate, columns = vectors + target.
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    if rows.is_empty() {
        return Some(vec![Rational::zero(); n]);
    }
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[n].clone();
    }
    Some(x)
}

/// Densifies keyed sparse vectors over the union of their keys.
pub fn densify<K: Ord + Clone>(vectors: &[BTreeMap<K, Rational>]) -> (Vec<K>, Vec<Vec<Rational>>) {
    let keys: Vec<K> = {
        let mut all: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dense = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); keys.len()];
            for (k, c) in v {
                row[index[k]] = c.clone();
            }
            row
        })
        .collect();
    (keys, dense)
}

/// Rank of a family of keyed sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(vectors: &[BTreeMap<K, Rational>]) -> usize {
    let (_, dense) = densify(vectors);
    rank(&dense)
}

/// Expresses `target` in terms of `vectors` (all keyed sparse vectors).
pub fn sparse_solve<K: Ord + Clone>(vectors: &[BTreeMap<K, Rational>], target: &BTreeMap<K, Rational>) -> Option<Vec<Rational>> {
    let mut all = vectors.to_vec();
    all.push(target.clone());
    let (_, dense) = densify(&all);
    let target = dense.last().cloned().unwrap_or_default();
    solve_combination(&dense[..vectors.len()], &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let pivots = rref(&mut a);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a, m(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve() {
        let vs = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_combination(&vs, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve_combination(&vs, &[int(2), int(3), int(4)]).is_none());
    }

    #[test]
    fn vandermonde_is_invertible() {
        // nodes 2, 3, 5: rows (1, x, x^2)
        let v = m(&[&[1, 2, 4], &[1, 3, 9], &[1, 5, 25]]);
        assert_eq!(rank(&v), 3);
    }
}
