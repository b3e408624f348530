//! Exact rational linear algebra on small integer vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{LatticeError, LatticeSet};

pub(crate) fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Incrementally built row-echelon basis of a rational subspace.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl EchelonBasis {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the basis; returns whether it was added.
    pub(crate) fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub(crate) fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

pub(crate) fn to_q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Affine dimension of a nonempty set: the rank of `{p - p0}`.
pub fn dimension(a: &LatticeSet) -> Result<usize, LatticeError> {
    let p0 = a.points().first().ok_or(LatticeError::EmptySet)?;
    let mut basis = EchelonBasis::default();
    for p in &a.points()[1..] {
        if basis.rank() == a.dim() {
            break;
        }
        basis.insert(&to_q(p.sub(p0).coords()));
    }
    Ok(basis.rank())
}

/// Differences `p - p0` of `a` that form a basis of its direction space.
pub(crate) fn direction_basis(a: &LatticeSet) -> Vec<Vec<i64>> {
    let Some(p0) = a.points().first() else { return Vec::new() };
    let mut basis = EchelonBasis::default();
    let mut out = Vec::new();
    for p in &a.points()[1..] {
        let d = p.sub(p0).coords().to_vec();
        if basis.insert(&to_q(&d)) {
            out.push(d);
        }
    }
    out
}

/// Solves `sum_j x_j * cols[j] = target` for a linearly independent family;
/// `None` if the target is outside the span.
pub(crate) fn coefficients(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let n = target.len();
    let k = cols.len();
    // Augmented matrix, one row per coordinate.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| q(c[i])).collect();
            row.push(q(target[i]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][k].clone();
    }
    Some(x)
}

pub(crate) fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&LatticeSet::from_rows(&[[5, 7]]).unwrap()).unwrap(), 0);
        assert_eq!(dimension(&LatticeSet::from_rows(&[[0, 0], [1, 0], [0, 1]]).unwrap()).unwrap(), 2);
        assert_eq!(
            dimension(&LatticeSet::from_rows(&[[0, 0, 0], [1, 1, 1], [2, 2, 2]]).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn dimension_of_empty_rejected() {
        assert!(matches!(dimension(&LatticeSet::empty(2).unwrap()), Err(LatticeError::EmptySet)));
    }

    #[test]
    fn coefficients_solve() {
        let cols = vec![vec![1, 0, 1], vec![0, 2, 0]];
        let x = coefficients(&cols, &[3, 4, 3]).unwrap();
        assert_eq!(x, vec![q(3), q(2)]);
        assert!(coefficients(&cols, &[1, 0, 0]).is_none());
    }
}
