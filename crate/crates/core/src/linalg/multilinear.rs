//! Tensor, exterior and symmetric powers of matrices.
//!
//! Exterior power bases are indexed by k-subsets in lexicographic order,
//! symmetric power bases by k-multisets (non-decreasing tuples) in
//! lexicographic order. Every module in the crate shares these
//! conventions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Position of a sorted k-subset of `0..n` in lexicographic order.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &s) in subset.iter().enumerate() {
        for j in (prev + 1) as usize..s {
            rank += binomial(n - 1 - j, k - i - 1);
        }
        prev = s as isize;
    }
    rank
}

/// All non-decreasing k-tuples over `0..n` in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sparse vector: sorted index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Wedge product of sparse vectors, as a map from sorted k-subsets to
/// coefficients. The coefficient of `S` is the minor on rows `S` of the
/// matrix whose columns are the inputs.
pub fn wedge_columns(ring: Ring, columns: &[Vec<(usize, Scalar)>]) -> BTreeMap<Vec<usize>, Scalar> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    acc.insert(Vec::new(), ring.one());
    for col in columns {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (set, c) in &acc {
            for (i, v) in col {
                let pos = match set.binary_search(i) {
                    Ok(_) => continue,
                    Err(p) => p,
                };
                // e_set ∧ e_i: move e_i past the elements of `set` above it
                let greater = set.len() - pos;
                let mut coeff = ring.mul(c, v);
                if greater % 2 == 1 {
                    coeff = ring.neg(&coeff);
                }
                let mut s = set.clone();
                s.insert(pos, *i);
                let e = next.entry(s).or_insert_with(Scalar::zero);
                *e = ring.add(e, &coeff);
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc
}

/// Symmetric product of sparse vectors: map from non-decreasing k-tuples
/// to coefficients.
pub fn sym_columns(ring: Ring, columns: &[Vec<(usize, Scalar)>]) -> BTreeMap<Vec<usize>, Scalar> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    acc.insert(Vec::new(), ring.one());
    for col in columns {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (set, c) in &acc {
            for (i, v) in col {
                let pos = set.partition_point(|x| x <= i);
                let mut s = set.clone();
                s.insert(pos, *i);
                let e = next.entry(s).or_insert_with(Scalar::zero);
                *e = ring.add(e, &ring.mul(c, v));
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc
}

/// k-th exterior power: entry (S, T) is the k×k minor on rows S and
/// columns T, with S and T in lexicographic order.
pub fn exterior_power_matrix(a: &Matrix, k: usize) -> Matrix {
    let ring = a.ring();
    let (m, n) = a.shape();
    let cols: Vec<Vec<(usize, Scalar)>> = (0..n).map(|j| a.column_sparse(j)).collect();
    let col_sets = subsets(n, k);
    let mut out = Matrix::zeros(ring, binomial(m, k), col_sets.len());
    for (j, t) in col_sets.iter().enumerate() {
        let chosen: Vec<_> = t.iter().map(|&c| cols[c].clone()).collect();
        for (s, v) in wedge_columns(ring, &chosen) {
            out[(subset_rank(m, &s), j)] = v;
        }
    }
    out
}

/// k-th symmetric power in the monomial basis (multisets, lexicographic).
pub fn symmetric_power_matrix(a: &Matrix, k: usize) -> Matrix {
    let ring = a.ring();
    let (m, n) = a.shape();
    let cols: Vec<Vec<(usize, Scalar)>> = (0..n).map(|j| a.column_sparse(j)).collect();
    let row_sets = multisets(m, k);
    let index: BTreeMap<&Vec<usize>, usize> = row_sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let col_sets = multisets(n, k);
    let mut out = Matrix::zeros(ring, row_sets.len(), col_sets.len());
    for (j, t) in col_sets.iter().enumerate() {
        let chosen: Vec<_> = t.iter().map(|&c| cols[c].clone()).collect();
        for (s, v) in sym_columns(ring, &chosen) {
            out[(index[&s], j)] = v;
        }
    }
    out
}

/// Kronecker product; row index of (i, k) is `i * B.rows + k`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    let ring = a.ring();
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = Matrix::zeros(ring, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = &b[(k, l)];
                    if !y.is_zero() {
                        out[(i * br + k, j * bc + l)] = ring.mul(x, y);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ring::int;

    #[test]
    fn subset_ranks_match_enumeration() {
        for n in 0..7 {
            for k in 0..=n {
                for (i, s) in subsets(n, k).iter().enumerate() {
                    assert_eq!(subset_rank(n, s), i);
                }
            }
        }
    }

    #[test]
    fn exterior_power_of_identity() {
        let id = Matrix::identity(Ring::Integers, 4);
        assert_eq!(exterior_power_matrix(&id, 2), Matrix::identity(Ring::Integers, 6));
    }

    #[test]
    fn exterior_square_of_diagonal() {
        let d = Matrix::diagonal(Ring::Integers, &[int(3), int(5)]);
        assert_eq!(exterior_power_matrix(&d, 2), Matrix::from_i64(Ring::Integers, &[vec![15]]));
    }

    #[test]
    fn exterior_power_beyond_dimension_is_empty() {
        let a = Matrix::identity(Ring::Integers, 2);
        assert_eq!(exterior_power_matrix(&a, 3).shape(), (0, 0));
    }

    #[test]
    fn small_kronecker() {
        let a = Matrix::from_i64(Ring::Integers, &[vec![2]]);
        let b = Matrix::from_i64(Ring::Integers, &[vec![3]]);
        assert_eq!(kronecker(&a, &b).unwrap(), Matrix::from_i64(Ring::Integers, &[vec![6]]));
        let i2 = Matrix::identity(Ring::Integers, 2);
        let i3 = Matrix::identity(Ring::Integers, 3);
        assert_eq!(kronecker(&i2, &i3).unwrap(), Matrix::identity(Ring::Integers, 6));
        assert!(kronecker(&i2, &Matrix::identity(Ring::Rationals, 1)).is_err());
    }

    #[test]
    fn symmetric_square_of_diagonal() {
        let d = Matrix::diagonal(Ring::Integers, &[int(2), int(3)]);
        let s = symmetric_power_matrix(&d, 2);
        assert_eq!(s, Matrix::diagonal(Ring::Integers, &[int(4), int(6), int(9)]));
    }
}
