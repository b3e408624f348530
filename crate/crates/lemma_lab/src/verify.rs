//! Hypothesis checks and conclusion checks for one triple.

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use lattice_core::{dimension, longest_chain, union_count, ConvexTriple, LatticeSet};

use crate::formulas::{bound_formula, int, render, LemmaId};
use crate::region::RegionWitness;
use crate::LabError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
    pub measured: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaHypothesisReport {
    pub lemma_id: LemmaId,
    pub checks: Vec<HypothesisCheck>,
    pub admissible: bool,
}

impl LemmaHypothesisReport {
    fn new(lemma_id: LemmaId, checks: Vec<HypothesisCheck>) -> Self {
        let admissible = checks.iter().all(|c| c.holds);
        LemmaHypothesisReport { lemma_id, checks, admissible }
    }

    pub fn failed(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render(r))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub lhs_count: u64,
    #[serde(serialize_with = "ser_rational")]
    pub rhs_bound: BigRational,
    pub satisfied: bool,
    pub witness: Option<ConvexTriple>,
    pub trial_seed: u64,
}

impl VerificationOutcome {
    fn new(lhs: u64, rhs: BigRational, triple: &ConvexTriple, trial_seed: u64) -> Self {
        let satisfied = int(lhs) >= rhs;
        VerificationOutcome {
            lhs_count: lhs,
            rhs_bound: rhs,
            satisfied,
            witness: (!satisfied).then(|| triple.clone()),
            trial_seed,
        }
    }

    /// `lhs - rhs`.
    pub fn margin(&self) -> BigRational {
        int(self.lhs_count) - &self.rhs_bound
    }
}

fn check(name: &str, holds: bool, measured: String) -> HypothesisCheck {
    HypothesisCheck { name: name.to_string(), holds, measured }
}

fn nested_check(t: &ConvexTriple) -> HypothesisCheck {
    let ok = t.a1().is_subset_of(t.a2()) && t.a2().is_subset_of(t.a3());
    check("A1 ⊆ A2 ⊆ A3", ok, format!("{ok}"))
}

fn convexity_check(t: &ConvexTriple) -> Result<HypothesisCheck, LabError> {
    let certified = t
        .witness_regions()
        .and_then(|s| RegionWitness::from_json(s).ok())
        .is_some_and(|w| w.certifies([t.a1(), t.a2(), t.a3()]));
    if certified {
        return Ok(check("A1, A2, A3 integrally convex", true, "region certificate".into()));
    }
    let report = t.convexity()?;
    let [c1, c2, c3] = report.integrally_convex;
    Ok(check("A1, A2, A3 integrally convex", c1 && c2 && c3, format!("hull scan {c1}/{c2}/{c3}")))
}

fn chain_check(name: &str, set: &LatticeSet, factor: usize) -> Result<HypothesisCheck, LabError> {
    let chain = longest_chain(set)?;
    Ok(check(name, factor * chain < set.len(), format!("chain {chain}, size {}", set.len())))
}

/// Hypothesis report for `lemma` on `triple`.
pub fn hypotheses(lemma: LemmaId, t: &ConvexTriple) -> Result<LemmaHypothesisReport, LabError> {
    let d1 = dimension(t.a1())?;
    let n2 = t.a2().len();
    let n3 = t.a3().len();
    let mut checks = Vec::new();
    match lemma {
        LemmaId::Arrangement => {
            checks.push(check("dim A1 >= 3", d1 >= 3, d1.to_string()));
            checks.push(nested_check(t));
        }
        LemmaId::Dim3 => {
            checks.push(check("dim A1 = 3", d1 == 3, d1.to_string()));
            checks.push(check("#A2 >= 21", n2 >= 21, n2.to_string()));
            checks.push(check("#A3 <= 2#A2", n3 <= 2 * n2, format!("{n3} vs {}", 2 * n2)));
            checks.push(chain_check("6 chain(A3) < #A3", t.a3(), 6)?);
            checks.push(chain_check("4 chain(A2) < #A2", t.a2(), 4)?);
            checks.push(nested_check(t));
            checks.push(convexity_check(t)?);
        }
        LemmaId::Dim4 => {
            checks.push(check("dim A1 >= 4", d1 >= 4, d1.to_string()));
            checks.push(check("4#A2 >= #A3", 4 * n2 >= n3, format!("{} vs {n3}", 4 * n2)));
            checks.push(chain_check("530 chain(A3) < #A3", t.a3(), 530)?);
            checks.push(nested_check(t));
            checks.push(convexity_check(t)?);
        }
        LemmaId::Mixed => {
            let d2 = dimension(t.a2())?;
            checks.push(check("dim A1 >= 2", d1 >= 2, d1.to_string()));
            checks.push(check("dim A2 >= 3", d2 >= 3, d2.to_string()));
            checks.push(chain_check("10 chain(A3) < #A3", t.a3(), 10)?);
            checks.push(chain_check("5 chain(A2) < #A2", t.a2(), 5)?);
            checks.push(nested_check(t));
            checks.push(convexity_check(t)?);
        }
    }
    Ok(LemmaHypothesisReport::new(lemma, checks))
}

/// Arranges along every axis in turn and returns the step with the smallest
/// `before - after`, as `(before, after)`.
fn worst_arrangement_step(t: &ConvexTriple) -> Result<(u64, u64), LabError> {
    let mut cur = t.clone();
    let mut before = union_count(&cur)? as u64;
    let mut worst: Option<(u64, u64)> = None;
    for axis in 0..t.dim() {
        cur = cur.arranged(axis)?;
        let after = union_count(&cur)? as u64;
        let margin = before as i128 - after as i128;
        if worst.is_none_or(|(b, a)| margin < b as i128 - a as i128) {
            worst = Some((before, after));
        }
        before = after;
    }
    Ok(worst.expect("dimension is positive"))
}

/// Checks the hypotheses of `lemma` and, when they hold, its conclusion.
///
/// For the arrangement lemma the triple is arranged along each axis in
/// order; the outcome records the step with the smallest drop, so
/// `satisfied` holds iff no step increased the count.
pub fn verify_lemma(
    lemma: LemmaId,
    t: &ConvexTriple,
    trial_seed: u64,
) -> Result<(LemmaHypothesisReport, Option<VerificationOutcome>), LabError> {
    let report = hypotheses(lemma, t)?;
    if !report.admissible {
        return Ok((report, None));
    }
    let outcome = match lemma {
        LemmaId::Arrangement => {
            let (before, after) = worst_arrangement_step(t)?;
            VerificationOutcome::new(before, int(after), t, trial_seed)
        }
        _ => {
            let lhs = union_count(t)? as u64;
            let rhs = bound_formula(lemma, t.a2().len() as u64, t.a3().len() as u64)?;
            VerificationOutcome::new(lhs, rhs, t, trial_seed)
        }
    };
    Ok((report, Some(outcome)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generate_nested_triple;

    fn cube(side: i64) -> LatticeSet {
        let mut rows = Vec::new();
        for x in 0..side {
            for y in 0..side {
                for z in 0..side {
                    rows.push(vec![x, y, z]);
                }
            }
        }
        LatticeSet::from_rows(&rows).unwrap()
    }

    #[test]
    fn small_a2_is_inadmissible_for_dim3() {
        // 20 points in A2 fails the cardinality floor.
        let a3 = cube(3);
        let a2 = LatticeSet::new(a3.points()[..20].to_vec()).unwrap();
        let a1 = LatticeSet::new(a2.points()[..20].to_vec()).unwrap();
        let t = ConvexTriple::new(a1, a2, a3).unwrap();
        let (rep, out) = verify_lemma(LemmaId::Dim3, &t, 0).unwrap();
        assert!(!rep.admissible);
        assert!(out.is_none());
        assert!(rep.failed().any(|c| c.name == "#A2 >= 21"));
    }

    #[test]
    fn small_sets_never_admissible_for_dim4() {
        let t = generate_nested_triple(4, 500, 3).unwrap();
        let (rep, _) = verify_lemma(LemmaId::Dim4, &t, 3).unwrap();
        assert!(!rep.admissible);
    }

    #[test]
    fn arrangement_outcome() {
        let t = generate_nested_triple(3, 30, 1).unwrap();
        let (rep, out) = verify_lemma(LemmaId::Arrangement, &t, 1).unwrap();
        assert!(rep.admissible);
        let out = out.unwrap();
        assert!(out.satisfied);
        assert!(out.witness.is_none());
    }

    #[test]
    fn deterministic_report() {
        let t = generate_nested_triple(3, 60, 9).unwrap();
        let a = verify_lemma(LemmaId::Mixed, &t, 9).unwrap();
        let b = verify_lemma(LemmaId::Mixed, &t, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn certificate_and_scan_agree() {
        let t = generate_nested_triple(3, 40, 4).unwrap();
        let stripped = ConvexTriple::new(t.a1().clone(), t.a2().clone(), t.a3().clone()).unwrap();
        let c1 = convexity_check(&t).unwrap();
        let c2 = convexity_check(&stripped).unwrap();
        assert_eq!(c1.measured, "region certificate");
        assert!(c1.holds && c2.holds);
    }
}
