//! Nested triples `A1 ⊆ A2 ⊆ A3`.

use serde::{Deserialize, Serialize};

use crate::arrangement::{arrange_all_axes, arrangement};
use crate::hull::{is_integrally_convex, is_relatively_convex};
use crate::midpoint::union_of_midpoints;
use crate::{LatticeError, LatticeSet};

/// Three nested point sets, optionally with a description of the convex
/// regions they were cut from.
///
/// Construction checks nesting and dimensions. Convexity is a property of
/// the data that [`ConvexTriple::convexity`] checks exactly; the arranged and
/// projected triples of the counting arguments are nested but not convex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct ConvexTriple {
    a1: LatticeSet,
    a2: LatticeSet,
    a3: LatticeSet,
    witness_regions: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    dim: usize,
    a1: Vec<Vec<i64>>,
    a2: Vec<Vec<i64>>,
    a3: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness_regions: Option<String>,
}

impl From<ConvexTriple> for TripleRepr {
    fn from(t: ConvexTriple) -> Self {
        let rows = |s: &LatticeSet| s.iter().map(|p| p.coords().to_vec()).collect();
        TripleRepr {
            dim: t.a3.dim(),
            a1: rows(&t.a1),
            a2: rows(&t.a2),
            a3: rows(&t.a3),
            witness_regions: t.witness_regions,
        }
    }
}

impl TryFrom<TripleRepr> for ConvexTriple {
    type Error = LatticeError;
    fn try_from(r: TripleRepr) -> Result<Self, Self::Error> {
        let mk = |rows: Vec<Vec<i64>>| -> Result<LatticeSet, LatticeError> {
            let pts = rows.into_iter().map(crate::LatticePoint::new).collect::<Result<Vec<_>, _>>()?;
            LatticeSet::with_dim(r.dim, pts)
        };
        let t = ConvexTriple::new(mk(r.a1)?, mk(r.a2)?, mk(r.a3)?)?;
        Ok(t.with_regions(r.witness_regions))
    }
}

/// Exact convexity report for a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityReport {
    pub integrally_convex: [bool; 3],
    pub a1_relatively_convex_in_a2: bool,
    pub a2_relatively_convex_in_a3: bool,
}

impl ConvexityReport {
    pub fn all(&self) -> bool {
        self.integrally_convex.iter().all(|&b| b) && self.a1_relatively_convex_in_a2 && self.a2_relatively_convex_in_a3
    }
}

impl ConvexTriple {
    pub fn new(a1: LatticeSet, a2: LatticeSet, a3: LatticeSet) -> Result<Self, LatticeError> {
        a1.check_dim(&a2)?;
        a2.check_dim(&a3)?;
        if !a1.is_subset_of(&a2) || !a2.is_subset_of(&a3) {
            return Err(LatticeError::NotNested);
        }
        Ok(ConvexTriple { a1, a2, a3, witness_regions: None })
    }

    pub fn with_regions(mut self, regions: Option<String>) -> Self {
        self.witness_regions = regions;
        self
    }

    pub fn a1(&self) -> &LatticeSet {
        &self.a1
    }

    pub fn a2(&self) -> &LatticeSet {
        &self.a2
    }

    pub fn a3(&self) -> &LatticeSet {
        &self.a3
    }

    pub fn dim(&self) -> usize {
        self.a3.dim()
    }

    pub fn witness_regions(&self) -> Option<&str> {
        self.witness_regions.as_deref()
    }

    /// Exact integral and relative convexity of the three sets.
    pub fn convexity(&self) -> Result<ConvexityReport, LatticeError> {
        Ok(ConvexityReport {
            integrally_convex: [
                is_integrally_convex(&self.a1)?,
                is_integrally_convex(&self.a2)?,
                is_integrally_convex(&self.a3)?,
            ],
            a1_relatively_convex_in_a2: is_relatively_convex(&self.a1, &self.a2)?,
            a2_relatively_convex_in_a3: is_relatively_convex(&self.a2, &self.a3)?,
        })
    }

    /// Arrangement of all three sets along one axis; nesting is preserved.
    pub fn arranged(&self, axis: usize) -> Result<ConvexTriple, LatticeError> {
        ConvexTriple::new(
            arrangement(&self.a1, axis)?,
            arrangement(&self.a2, axis)?,
            arrangement(&self.a3, axis)?,
        )
    }

    /// Arrangement along every axis in order.
    pub fn arranged_all(&self) -> Result<ConvexTriple, LatticeError> {
        ConvexTriple::new(arrange_all_axes(&self.a1)?, arrange_all_axes(&self.a2)?, arrange_all_axes(&self.a3)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triple serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(s).map_err(|e| LatticeError::Parse(e.to_string()))
    }
}

/// `#(A1.A3 ∪ A2.A2)`.
pub fn union_count(t: &ConvexTriple) -> Result<usize, LatticeError> {
    union_of_midpoints(&[(&t.a1, &t.a3), (&t.a2, &t.a2)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> LatticeSet {
        LatticeSet::from_rows(rows).unwrap()
    }

    #[test]
    fn nesting_enforced() {
        let a = set(&[&[0, 0]]);
        let b = set(&[&[1, 0]]);
        assert!(matches!(ConvexTriple::new(a.clone(), b.clone(), b), Err(LatticeError::NotNested)));
        assert!(ConvexTriple::new(a.clone(), a.clone(), a).is_ok());
    }

    #[test]
    fn union_count_examples() {
        let p = set(&[&[0, 0]]);
        assert_eq!(union_count(&ConvexTriple::new(p.clone(), p.clone(), p.clone()).unwrap()).unwrap(), 1);
        let a2 = set(&[&[0, 0], &[1, 0]]);
        let t = ConvexTriple::new(p, a2.clone(), a2).unwrap();
        assert_eq!(union_count(&t).unwrap(), 3);
    }

    #[test]
    fn json_round_trip() {
        let a2 = set(&[&[0, 0], &[1, 0]]);
        let t = ConvexTriple::new(set(&[&[0, 0]]), a2.clone(), a2)
            .unwrap()
            .with_regions(Some("box".into()));
        let j = t.to_json();
        assert_eq!(ConvexTriple::from_json(&j).unwrap(), t);
        assert_eq!(ConvexTriple::from_json(&j).unwrap().to_json(), j);
    }

    #[test]
    fn convexity_report() {
        let a3 = set(&[&[0, 0], &[1, 0], &[2, 0]]);
        let bad = ConvexTriple::new(set(&[&[0, 0]]), set(&[&[0, 0], &[2, 0]]), a3.clone()).unwrap();
        let r = bad.convexity().unwrap();
        assert!(!r.a2_relatively_convex_in_a3);
        assert!(!r.all());
        let good = ConvexTriple::new(set(&[&[0, 0]]), set(&[&[0, 0], &[1, 0]]), a3).unwrap();
        assert!(good.convexity().unwrap().all());
    }
}
