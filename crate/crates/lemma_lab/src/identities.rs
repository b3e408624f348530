//! Measured mid-point counts of staircase sets against the closed forms
//! used in the three-dimensional counting argument.
//!
//! The closed forms are stated as equalities in the source argument but
//! only the lower-bound direction holds in general, so each comparison is
//! reported with a relation flag instead of asserted.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use lattice_core::{is_staircase, midpoint_count, LatticeSet};

use crate::formulas::rat;
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<")]
    Less,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Greater => ">",
            Relation::Equal => "=",
            Relation::Less => "<",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub measured: i64,
    pub expression: i64,
    /// `measured` compared with `expression`.
    pub relation: Relation,
}

impl IdentityCheck {
    fn new(name: &str, measured: i64, expression: i64) -> Self {
        let relation = match measured.cmp(&expression) {
            std::cmp::Ordering::Greater => Relation::Greater,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Less => Relation::Less,
        };
        IdentityCheck { name: name.to_string(), measured, expression, relation }
    }

    pub fn lower_bound_holds(&self) -> bool {
        self.relation != Relation::Less
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub dim: usize,
    /// Points on the first axis.
    pub m_x: i64,
    /// Points on the second axis.
    pub m_y: i64,
    /// Points with third coordinate 1 (three-dimensional input only).
    pub t: Option<i64>,
    pub checks: Vec<IdentityCheck>,
}

fn axis_count(a: &LatticeSet, axis: usize) -> i64 {
    a.iter()
        .filter(|p| p.coords().iter().enumerate().all(|(i, &c)| i == axis || c == 0))
        .count() as i64
}

fn planar_check(a: &LatticeSet, name: &str) -> Result<(i64, i64, IdentityCheck), LabError> {
    let mx = axis_count(a, 0);
    let my = axis_count(a, 1);
    let n = a.len() as i64;
    let measured = midpoint_count(a, a)? as i64;
    Ok((mx, my, IdentityCheck::new(name, measured, 4 * n - 2 * (mx + my) + 1)))
}

/// Compares `#(A.A)` with its closed form.
///
/// Two-dimensional staircase input: `4#A - 2(m_x + m_y) + 1`.
///
/// Three-dimensional staircase input with every point at height 0 or 1 and
/// height-1 points on the first axis: the slab form
/// `(t - 1)(m_y - 3) + 5#A - 2(m_x + m_y) - 3`, plus the planar form for the
/// height-0 slice.
pub fn check_intermediate_identities(a: &LatticeSet) -> Result<IdentityReport, LabError> {
    if a.is_empty() || !is_staircase(a) {
        return Err(LabError::NotStaircase);
    }
    match a.dim() {
        2 => {
            let (m_x, m_y, c) = planar_check(a, "planar")?;
            Ok(IdentityReport { dim: 2, m_x, m_y, t: None, checks: vec![c] })
        }
        3 => {
            let ok = a.iter().all(|p| {
                let c = p.coords();
                c[2] == 0 || (c[2] == 1 && c[1] == 0)
            });
            if !ok {
                return Err(LabError::Precondition(
                    "three-dimensional input must have z = 0, or z = 1 and y = 0".into(),
                ));
            }
            let slice = LatticeSet::with_dim(
                2,
                a.iter()
                    .filter(|p| p.coords()[2] == 0)
                    .map(|p| p.coords()[..2].into())
                    .collect(),
            )?;
            let t = a.iter().filter(|p| p.coords()[2] == 1).count() as i64;
            let (m_x, m_y, planar) = planar_check(&slice, "planar slice z = 0")?;
            let n = a.len() as i64;
            let measured = midpoint_count(a, a)? as i64;
            let expression = (t - 1) * (m_y - 3) + 5 * n - 2 * (m_x + m_y) - 3;
            let slab = IdentityCheck::new("slab", measured, expression);
            Ok(IdentityReport { dim: 3, m_x, m_y, t: Some(t), checks: vec![planar, slab] })
        }
        d => Err(LabError::Precondition(format!("identities need dimension 2 or 3, got {d}"))),
    }
}

/// Planar closed form as an exact rational, for callers mixing it with the
/// bound formulas.
pub fn planar_expression(n: u64, m_x: u64, m_y: u64) -> BigRational {
    rat(4 * n as i64 - 2 * (m_x + m_y) as i64 + 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[[i64; 2]]) -> LatticeSet {
        LatticeSet::from_rows(rows).unwrap()
    }

    #[test]
    fn planar_examples() {
        let r = check_intermediate_identities(&set(&[[0, 0]])).unwrap();
        assert_eq!((r.checks[0].measured, r.checks[0].expression), (1, 1));
        let r = check_intermediate_identities(&set(&[[0, 0], [1, 0]])).unwrap();
        assert_eq!((r.checks[0].measured, r.checks[0].expression), (3, 3));
        let r = check_intermediate_identities(&set(&[[0, 0], [1, 0], [0, 1]])).unwrap();
        assert_eq!((r.checks[0].measured, r.checks[0].expression), (6, 5));
        assert_eq!(r.checks[0].relation, Relation::Greater);
    }

    #[test]
    fn rejects_non_staircase() {
        assert_eq!(check_intermediate_identities(&set(&[[0, 0], [2, 0]])), Err(LabError::NotStaircase));
        assert_eq!(check_intermediate_identities(&set(&[[1, 0]])), Err(LabError::NotStaircase));
    }

    #[test]
    fn slab_configuration() {
        // 3x3 square at z = 0 plus two points at z = 1 on the x-axis.
        let mut rows = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                rows.push([x, y, 0]);
            }
        }
        rows.push([0, 0, 1]);
        rows.push([1, 0, 1]);
        let r = check_intermediate_identities(&LatticeSet::from_rows(&rows).unwrap()).unwrap();
        assert_eq!(r.t, Some(2));
        assert!(r.checks.iter().all(IdentityCheck::lower_bound_holds));
    }

    #[test]
    fn expression_helper() {
        assert_eq!(planar_expression(3, 2, 2), rat(5, 1));
    }
}
