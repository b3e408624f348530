//! Longest arithmetic chains with a primitive step.

use num_integer::Integer;

use crate::pack::PointIndex;
use crate::{LatticeError, LatticeSet};

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive. The zero vector is returned unchanged.
pub fn primitive_direction(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    let sign = match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => -1,
        _ => 1,
    };
    v.iter().map(|&x| sign * x / g).collect()
}

pub(crate) fn index_of(a: &LatticeSet) -> PointIndex {
    let (lo, hi) = a.bounding_box().unwrap_or_else(|| (vec![0; a.dim()], vec![0; a.dim()]));
    PointIndex::build(lo, hi, a.iter().map(|p| p.coords()))
}

/// Length of the longest chain `p, p+v, ..., p+(n-1)v` in `a` for a nonzero
/// step `v`. A single point is a chain of length 1 and any two points form a
/// chain of length 2.
///
/// Each pair `(p, p+v)` lies in exactly one maximal run along `v`, so walking
/// only from run starts keeps the total work quadratic in `#a`.
pub fn longest_chain(a: &LatticeSet) -> Result<usize, LatticeError> {
    if a.is_empty() {
        return Err(LatticeError::EmptySet);
    }
    let idx = index_of(a);
    let pts = a.points();
    let d = a.dim();
    let mut best = 1usize;
    let mut step = vec![0i64; d];
    let mut probe = vec![0i64; d];
    for i in 0..pts.len() {
        let p = pts[i].coords();
        for q in &pts[i + 1..] {
            let q = q.coords();
            for k in 0..d {
                step[k] = q[k] - p[k];
                probe[k] = p[k] - step[k];
            }
            if idx.contains(&probe) {
                continue;
            }
            let mut len = 2;
            for k in 0..d {
                probe[k] = q[k] + step[k];
            }
            while idx.contains(&probe) {
                len += 1;
                for k in 0..d {
                    probe[k] += step[k];
                }
            }
            best = best.max(len);
        }
    }
    Ok(best)
}

/// Longest chain whose step is primitive, i.e. a run of consecutive lattice
/// points on a line. Agrees with [`longest_chain`] on integrally convex sets.
pub fn longest_primitive_chain(a: &LatticeSet) -> Result<usize, LatticeError> {
    if a.is_empty() {
        return Err(LatticeError::EmptySet);
    }
    let idx = index_of(a);
    let pts = a.points();
    let d = a.dim();
    let mut best = 1usize;
    let mut probe = vec![0i64; d];
    for i in 0..pts.len() {
        let p = pts[i].coords();
        for q in &pts[i + 1..] {
            let diff: Vec<i64> = (0..d).map(|k| q.coords()[k] - p[k]).collect();
            let v = primitive_direction(&diff);
            for k in 0..d {
                probe[k] = p[k] - v[k];
            }
            if idx.contains(&probe) {
                continue;
            }
            let mut len = 1;
            for k in 0..d {
                probe[k] = p[k] + v[k];
            }
            while idx.contains(&probe) {
                len += 1;
                for k in 0..d {
                    probe[k] += v[k];
                }
            }
            best = best.max(len);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_and_pair() {
        assert_eq!(longest_chain(&LatticeSet::from_rows(&[[0, 0]]).unwrap()).unwrap(), 1);
        assert_eq!(longest_chain(&LatticeSet::from_rows(&[[0, 0], [3, 5]]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn run_along_x() {
        let a = LatticeSet::from_rows(&[[0, 0], [1, 0], [2, 0], [0, 1]]).unwrap();
        assert_eq!(longest_chain(&a).unwrap(), 3);
    }

    #[test]
    fn gaps_and_steps() {
        let a = LatticeSet::from_rows(&[[0], [2], [4]]).unwrap();
        assert_eq!(longest_chain(&a).unwrap(), 3);
        assert_eq!(longest_primitive_chain(&a).unwrap(), 1);
        let b = LatticeSet::from_rows(&[[0, 0], [1, 0], [2, 0], [0, 1]]).unwrap();
        assert_eq!(longest_primitive_chain(&b).unwrap(), 3);
    }

    #[test]
    fn diagonal() {
        let a = LatticeSet::from_rows(&[[0, 0], [1, 1], [2, 2], [3, 3], [1, 0]]).unwrap();
        assert_eq!(longest_chain(&a).unwrap(), 4);
    }

    #[test]
    fn primitive_canonical() {
        assert_eq!(primitive_direction(&[-4, 2, 0]), vec![2, -1, 0]);
        assert_eq!(primitive_direction(&[0, 3]), vec![0, 1]);
        assert_eq!(primitive_direction(&[0, 0]), vec![0, 0]);
    }

    #[test]
    fn empty_rejected() {
        assert!(longest_chain(&LatticeSet::empty(2).unwrap()).is_err());
    }
}
