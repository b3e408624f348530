//! Lattice points and finite point sets, with the text and JSON encodings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::LatticeError;

/// A point of the integer lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self, LatticeError> {
        if coords.is_empty() {
            return Err(LatticeError::ZeroDimension);
        }
        Ok(LatticePoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(c: &[i64]) -> Self {
        assert!(!c.is_empty(), "lattice point needs at least one coordinate");
        LatticePoint { coords: c.to_vec() }
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(c: [i64; N]) -> Self {
        LatticePoint::from(&c[..])
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite, deduplicated set of lattice points of a fixed ambient dimension.
///
/// Points are kept sorted, so equality and both encodings are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl LatticeSet {
    /// The empty set in ambient dimension `dim`.
    pub fn empty(dim: usize) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        Ok(LatticeSet { dim, points: Vec::new() })
    }

    /// Builds a nonempty set; duplicates are dropped.
    pub fn new(points: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        let dim = points.first().ok_or(LatticeError::EmptySet)?.dim();
        Self::with_dim(dim, points)
    }

    /// Builds a set of the given dimension, possibly empty.
    pub fn with_dim(dim: usize, mut points: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: p.dim() });
        }
        points.sort_unstable();
        points.dedup();
        Ok(LatticeSet { dim, points })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        let pts = rows
            .iter()
            .map(|r| LatticePoint::new(r.as_ref().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn contains_coords(&self, c: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.coords.as_slice().cmp(c)).is_ok()
    }

    pub fn is_subset_of(&self, other: &LatticeSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// Points of `self` not in `other`.
    pub fn difference(&self, other: &LatticeSet) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self.points.iter().filter(|p| !other.contains(p)).cloned().collect(),
        }
    }

    pub fn union(&self, other: &LatticeSet) -> Result<LatticeSet, LatticeError> {
        self.check_dim(other)?;
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        LatticeSet::with_dim(self.dim, pts)
    }

    pub fn translate(&self, by: &[i64]) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| LatticePoint {
                    coords: p.coords.iter().zip(by).map(|(a, b)| a + b).collect(),
                })
                .collect(),
        }
    }

    /// Per-axis minimum and maximum; `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.points.first()?;
        let mut lo = first.coords.clone();
        let mut hi = first.coords.clone();
        for p in &self.points[1..] {
            for (i, &c) in p.coords.iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some((lo, hi))
    }

    pub(crate) fn check_dim(&self, other: &LatticeSet) -> Result<(), LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Line format: `dim=<d>` then one point per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self, LatticeError> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LatticeError::Parse("missing header".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim=")
            .ok_or_else(|| LatticeError::Parse(format!("bad header {header:?}")))?
            .parse()
            .map_err(|e| LatticeError::Parse(format!("bad dimension: {e}")))?;
        let mut pts = Vec::new();
        for line in lines {
            let coords = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| LatticeError::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: coords.len() });
            }
            pts.push(LatticePoint { coords });
        }
        LatticeSet::with_dim(dim, pts)
    }

    /// JSON array-of-arrays form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.points).expect("points serialize")
    }

    /// Parses the array-of-arrays form; the dimension is read off the points.
    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| LatticeError::Parse(e.to_string()))?;
        Self::from_rows(&rows)
    }

    /// Like [`LatticeSet::from_json`] but accepts an empty array.
    pub fn from_json_with_dim(s: &str, dim: usize) -> Result<Self, LatticeError> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| LatticeError::Parse(e.to_string()))?;
        let pts = rows.into_iter().map(LatticePoint::new).collect::<Result<Vec<_>, _>>()?;
        LatticeSet::with_dim(dim, pts)
    }
}

impl Serialize for LatticeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pts = Vec::<LatticePoint>::deserialize(d)?;
        LatticeSet::new(pts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_sort() {
        let s = LatticeSet::from_rows(&[[1, 0], [0, 0], [1, 0]]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[0].coords(), &[0, 0]);
    }

    #[test]
    fn rejects_mixed_dims() {
        let r = LatticeSet::new(vec![LatticePoint::from([0, 0]), LatticePoint::from([0, 0, 0])]);
        assert!(matches!(r, Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn text_round_trip() {
        let s = LatticeSet::from_rows(&[[3, -4, 5], [0, 0, 0]]).unwrap();
        let t = s.to_text();
        assert_eq!(t, "dim=3\n0 0 0\n3 -4 5\n");
        assert_eq!(LatticeSet::from_text(&t).unwrap(), s);
    }

    #[test]
    fn json_round_trip() {
        let s = LatticeSet::from_rows(&[[1, 2], [-7, 0]]).unwrap();
        let j = s.to_json();
        assert_eq!(j, "[[-7,0],[1,2]]");
        assert_eq!(LatticeSet::from_json(&j).unwrap(), s);
    }

    #[test]
    fn empty_set_text() {
        let e = LatticeSet::empty(4).unwrap();
        assert_eq!(LatticeSet::from_text(&e.to_text()).unwrap(), e);
        assert_eq!(LatticeSet::from_json_with_dim("[]", 4).unwrap(), e);
    }

    #[test]
    fn bad_text_rejected() {
        assert!(LatticeSet::from_text("dim=2\n1 2 3\n").is_err());
        assert!(LatticeSet::from_text("2\n1 2\n").is_err());
        assert!(LatticeSet::from_text("dim=2\n1 x\n").is_err());
    }
}
