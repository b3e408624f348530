//! Mid-point sets, stored doubled so every element stays integral.

use crate::pack::DistinctSink;
use crate::{LatticeError, LatticePoint, LatticeSet};

/// The mid-points `(p+q)/2` of `A.B`, each stored as the integral sum `p+q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPointSet {
    doubled_points: LatticeSet,
}

impl HalfPointSet {
    pub fn doubled(&self) -> &LatticeSet {
        &self.doubled_points
    }

    /// Number of distinct mid-points.
    pub fn len(&self) -> usize {
        self.doubled_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled_points.is_empty()
    }

    /// Whether the lattice point `p` is one of the mid-points.
    pub fn contains_point(&self, p: &LatticePoint) -> bool {
        let twice: Vec<i64> = p.coords().iter().map(|c| 2 * c).collect();
        self.doubled_points.contains_coords(&twice)
    }

    pub fn union(&self, other: &HalfPointSet) -> Result<HalfPointSet, LatticeError> {
        Ok(HalfPointSet { doubled_points: self.doubled_points.union(&other.doubled_points)? })
    }
}

/// `A.B`: all mid-points of a point of `a` and a point of `b`.
pub fn midpoint_set(a: &LatticeSet, b: &LatticeSet) -> Result<HalfPointSet, LatticeError> {
    a.check_dim(b)?;
    let mut pts = Vec::with_capacity(a.len() * b.len());
    for p in a.iter() {
        for q in b.iter() {
            pts.push(p.add(q));
        }
    }
    Ok(HalfPointSet { doubled_points: LatticeSet::with_dim(a.dim(), pts)? })
}

/// `#(A.B)` without materializing the set.
pub fn midpoint_count(a: &LatticeSet, b: &LatticeSet) -> Result<usize, LatticeError> {
    union_of_midpoints(&[(a, b)])
}

/// `#(A1.B1 ∪ A2.B2 ∪ ...)` without materializing the sets.
pub fn union_of_midpoints(pairs: &[(&LatticeSet, &LatticeSet)]) -> Result<usize, LatticeError> {
    let Some((first, _)) = pairs.first() else { return Ok(0) };
    let dim = first.dim();
    let mut lo: Option<Vec<i64>> = None;
    let mut hi: Option<Vec<i64>> = None;
    for (a, b) in pairs {
        a.check_dim(b)?;
        if a.dim() != dim {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: a.dim() });
        }
        if let (Some((alo, ahi)), Some((blo, bhi))) = (a.bounding_box(), b.bounding_box()) {
            let slo: Vec<i64> = alo.iter().zip(&blo).map(|(x, y)| x + y).collect();
            let shi: Vec<i64> = ahi.iter().zip(&bhi).map(|(x, y)| x + y).collect();
            lo = Some(match lo {
                None => slo,
                Some(l) => l.iter().zip(&slo).map(|(x, y)| *x.min(y)).collect(),
            });
            hi = Some(match hi {
                None => shi,
                Some(h) => h.iter().zip(&shi).map(|(x, y)| *x.max(y)).collect(),
            });
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else { return Ok(0) };
    let mut sink = DistinctSink::for_box(lo, hi);
    let mut buf = vec![0i64; dim];
    for (a, b) in pairs {
        for p in a.iter() {
            for q in b.iter() {
                for i in 0..dim {
                    buf[i] = p.coords()[i] + q.coords()[i];
                }
                sink.insert(&buf);
            }
        }
    }
    Ok(sink.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> LatticeSet {
        LatticeSet::from_rows(rows).unwrap()
    }

    #[test]
    fn single_point() {
        let a = set(&[&[0, 0]]);
        assert_eq!(midpoint_set(&a, &a).unwrap().len(), 1);
    }

    #[test]
    fn collinear_pair() {
        let a = set(&[&[0, 0], &[2, 0]]);
        let m = midpoint_set(&a, &a).unwrap();
        assert_eq!(m.len(), 3);
        for x in 0..=2 {
            assert!(m.contains_point(&LatticePoint::from([x, 0])));
        }
    }

    #[test]
    fn intersection_lies_in_midpoints() {
        let a = set(&[&[0, 0], &[1, 3], &[4, 4]]);
        let b = set(&[&[1, 3], &[9, 9]]);
        let m = midpoint_set(&a, &b).unwrap();
        assert!(m.contains_point(&LatticePoint::from([1, 3])));
    }

    #[test]
    fn dimension_mismatch() {
        let a = set(&[&[0, 0]]);
        let b = set(&[&[0, 0, 0]]);
        assert!(midpoint_set(&a, &b).is_err());
        assert!(midpoint_count(&a, &b).is_err());
    }

    #[test]
    fn count_matches_materialized() {
        let a = set(&[&[0, 0], &[1, 0], &[0, 1], &[5, -2]]);
        let b = set(&[&[0, 0], &[3, 3]]);
        assert_eq!(midpoint_count(&a, &b).unwrap(), midpoint_set(&a, &b).unwrap().len());
        let both = midpoint_set(&a, &b).unwrap().union(&midpoint_set(&b, &b).unwrap()).unwrap();
        assert_eq!(union_of_midpoints(&[(&a, &b), (&b, &b)]).unwrap(), both.len());
    }
}
