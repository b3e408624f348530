//! Expected outputs of the extremal enumerations, with the differences
//! between the expected lists and the exhaustive search recorded as findings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_extremal, EnumerationRecord, Filters, LinearBound};
use crate::CoverError;

const GOLDEN: &str = include_str!("../golden/extremal.json");

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignatureEntry {
    pub genus: u64,
    pub order: u64,
    pub k: usize,
    pub signature: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

impl SignatureEntry {
    fn of(r: &EnumerationRecord, with_group: bool) -> Self {
        SignatureEntry {
            genus: r.genus,
            order: r.order,
            k: r.k(),
            signature: r.signature.clone(),
            invariant_factors: with_group.then(|| r.datum.group.invariant_factors().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub entry: SignatureEntry,
    pub kind: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRun {
    pub name: String,
    pub bound: String,
    pub gmin: u64,
    pub gmax: u64,
    pub gamma: Option<u64>,
    pub kmin: Option<usize>,
    pub no_hyperelliptic: bool,
    pub cyclic: bool,
    /// The expected list.
    pub expected: Vec<SignatureEntry>,
    /// Known differences between the expected list and the search.
    pub findings: Vec<Finding>,
}

impl GoldenRun {
    pub fn bound(&self) -> Result<LinearBound, CoverError> {
        self.bound.parse()
    }

    pub fn filters(&self) -> Filters {
        Filters {
            gamma: self.gamma,
            kmin: self.kmin,
            kmax: None,
            require_no_hyperelliptic_witness: self.no_hyperelliptic,
            assume_cyclic: self.cyclic,
        }
    }

    pub fn run(&self) -> Result<Vec<EnumerationRecord>, CoverError> {
        enumerate_extremal(self.gmin, self.gmax, &self.bound()?, &self.filters())
    }
}

#[derive(Deserialize)]
struct GoldenFile {
    runs: Vec<GoldenRun>,
}

pub fn golden_runs() -> Vec<GoldenRun> {
    serde_json::from_str::<GoldenFile>(GOLDEN).expect("shipped golden file parses").runs
}

/// Looks up the shipped run whose parameters match.
pub fn golden_for(bound: &LinearBound, gmin: u64, gmax: u64, filters: &Filters) -> Option<GoldenRun> {
    golden_runs().into_iter().find(|r| {
        r.bound().ok().as_ref() == Some(bound) && r.gmin == gmin && r.gmax == gmax && r.filters() == *filters
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenComparison {
    pub run: String,
    /// Distinct signatures found equal the expected list.
    pub exact: bool,
    pub missing: Vec<SignatureEntry>,
    pub unexpected: Vec<SignatureEntry>,
    /// Differences covered by a recorded finding.
    pub flagged: Vec<Finding>,
    /// Differences no finding explains.
    pub unexplained: Vec<SignatureEntry>,
}

/// Compares distinct `(g, |G|, k, signature)` keys of `records` with the
/// expected list. Group structure is compared too when the expected entries
/// carry it.
pub fn compare_with_golden(run: &GoldenRun, records: &[EnumerationRecord]) -> GoldenComparison {
    let with_group = run.expected.iter().any(|e| e.invariant_factors.is_some());
    let found: BTreeSet<SignatureEntry> = records.iter().map(|r| SignatureEntry::of(r, with_group)).collect();
    let expected: BTreeSet<SignatureEntry> = run.expected.iter().cloned().collect();
    let missing: Vec<_> = expected.difference(&found).cloned().collect();
    let unexpected: Vec<_> = found.difference(&expected).cloned().collect();
    let mut flagged = Vec::new();
    let mut unexplained = Vec::new();
    for e in missing.iter().chain(&unexpected) {
        match run.findings.iter().find(|f| f.entry == *e) {
            Some(f) => flagged.push(f.clone()),
            None => unexplained.push(e.clone()),
        }
    }
    GoldenComparison { run: run.name.clone(), exact: missing.is_empty() && unexpected.is_empty(), missing, unexpected, flagged, unexplained }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses() {
        let runs = golden_runs();
        assert_eq!(runs.len(), 3);
        assert_eq!(runs[1].expected.len(), 5);
    }

    #[test]
    fn lookup_by_parameters() {
        let r = &golden_runs()[0];
        let found = golden_for(&r.bound().unwrap(), r.gmin, r.gmax, &r.filters()).unwrap();
        assert_eq!(found.name, "fermat");
        assert!(golden_for(&LinearBound::new(1, 0), 2, 8, &Filters::default()).is_none());
    }
}
