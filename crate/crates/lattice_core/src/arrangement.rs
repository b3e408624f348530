//! Arrangement (compression) of a point set towards the origin along an axis.

use std::collections::BTreeMap;

use crate::{LatticeError, LatticePoint, LatticeSet};

/// Compresses every fiber parallel to `axis` to `{0, ..., s-1}`, where `s`
/// is the fiber size.
pub fn arrangement(a: &LatticeSet, axis: usize) -> Result<LatticeSet, LatticeError> {
    if axis >= a.dim() {
        return Err(LatticeError::AxisOutOfRange { axis, dim: a.dim() });
    }
    let mut fibers: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for p in a.iter() {
        let mut key = p.coords().to_vec();
        key[axis] = 0;
        *fibers.entry(key).or_insert(0) += 1;
    }
    let mut out = Vec::with_capacity(a.len());
    for (key, size) in fibers {
        for h in 0..size {
            let mut c = key.clone();
            c[axis] = h;
            out.push(LatticePoint::from(&c[..]));
        }
    }
    LatticeSet::with_dim(a.dim(), out)
}

/// Arranges along axis 0, then 1, and so on through every axis.
pub fn arrange_all_axes(a: &LatticeSet) -> Result<LatticeSet, LatticeError> {
    (0..a.dim()).try_fold(a.clone(), |acc, axis| arrangement(&acc, axis))
}

/// Whether `a` is a down-closed subset of the nonnegative orthant: with any
/// point it contains every lattice point between it and the origin.
///
/// Checking the unit step down along each axis is enough.
pub fn is_staircase(a: &LatticeSet) -> bool {
    a.iter().all(|p| {
        p.coords().iter().all(|&c| c >= 0)
            && (0..a.dim()).all(|i| {
                if p.coords()[i] == 0 {
                    return true;
                }
                let mut c = p.coords().to_vec();
                c[i] -= 1;
                a.contains_coords(&c)
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> LatticeSet {
        LatticeSet::from_rows(rows).unwrap()
    }

    #[test]
    fn row_compression() {
        let a = set(&[&[0, 0], &[2, 0], &[2, 1]]);
        assert_eq!(arrangement(&a, 0).unwrap(), set(&[&[0, 0], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn fixed_point() {
        let a = set(&[&[0, 0], &[1, 0], &[2, 0], &[0, 5]]);
        assert_eq!(arrangement(&a, 0).unwrap(), a);
    }

    #[test]
    fn axis_out_of_range() {
        assert!(matches!(
            arrangement(&set(&[&[0, 0]]), 2),
            Err(LatticeError::AxisOutOfRange { axis: 2, dim: 2 })
        ));
    }

    #[test]
    fn full_arrangement_is_staircase() {
        let a = set(&[&[3, 7], &[5, 7], &[4, 9], &[-1, 2]]);
        let s = arrange_all_axes(&a).unwrap();
        assert_eq!(s.len(), a.len());
        assert!(is_staircase(&s));
        assert!(!is_staircase(&a));
    }
}
