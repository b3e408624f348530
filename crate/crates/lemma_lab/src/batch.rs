//! Seeded batches of lemma checks.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use lattice_core::ConvexTriple;

use crate::formulas::{render, LemmaId};
use crate::generate::{generate_large_triple, generate_scattered_triple, generate_with, TripleProfile};
use crate::verify::verify_lemma;
use crate::LabError;

/// Seed of trial `index` under `master`: the first word of ChaCha8 stream
/// `index`. Independent of how trials are scheduled.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub lemma: LemmaId,
    pub master_seed: u64,
    pub trials: usize,
    pub dim: usize,
    /// Size range override for generated `A3`.
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    /// Generation attempts per trial before giving up on admissibility.
    pub attempts: usize,
}

impl BatchConfig {
    pub fn new(lemma: LemmaId, master_seed: u64, trials: usize) -> Self {
        let dim = match lemma {
            LemmaId::Dim4 => 4,
            _ => 3,
        };
        BatchConfig { lemma, master_seed, trials, dim, min_size: None, max_size: None, attempts: 16 }
    }

    fn size_range(&self) -> (usize, usize) {
        let (lo, hi) = match self.lemma {
            LemmaId::Arrangement => (self.dim + 1, 40),
            LemmaId::Dim3 => (30, 150),
            LemmaId::Mixed => (60, 220),
            LemmaId::Dim4 => (1100, 3000),
        };
        let lo = self.min_size.unwrap_or(lo);
        (lo, self.max_size.unwrap_or(hi).max(lo))
    }

    /// One candidate instance for `seed`.
    pub fn instance(&self, seed: u64) -> Result<ConvexTriple, LabError> {
        let (lo, hi) = self.size_range();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = rng.next_u64();
        match self.lemma {
            LemmaId::Dim4 => generate_large_triple(self.dim, lo, hi, sub),
            LemmaId::Arrangement if seed % 2 == 1 => generate_scattered_triple(self.dim, hi, sub),
            lemma => {
                let mut p = TripleProfile::new(self.dim, rng.gen_range(lo..=hi));
                match lemma {
                    LemmaId::Dim3 => p.a2_percent = (50, 100),
                    LemmaId::Mixed => {
                        p.a2_percent = (50, 100);
                        p.min_a1_dim = 2.min(self.dim);
                    }
                    _ => {}
                }
                generate_with(&p, sub)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub lemma: LemmaId,
    pub index: u64,
    pub seed: u64,
    /// Attempt whose instance was checked (the first admissible one, or the
    /// last one tried).
    pub attempt: usize,
    pub instance_seed: u64,
    pub sizes: [usize; 3],
    pub admissible: bool,
    pub lhs: Option<u64>,
    pub rhs: Option<String>,
    pub satisfied: Option<bool>,
    /// Names of the failed hypotheses when inadmissible.
    pub failed: Vec<String>,
    #[serde(skip)]
    pub timing_ms: u128,
    #[serde(skip)]
    pub margin: Option<BigRational>,
    #[serde(skip)]
    pub witness: Option<ConvexTriple>,
}

impl TrialRecord {
    pub fn is_violation(&self) -> bool {
        self.satisfied == Some(false)
    }

    pub fn witness_file_name(&self) -> String {
        format!("witness-{}-{}.json", self.lemma, self.seed)
    }
}

/// Runs one trial: tries up to `attempts` instances derived from `seed`
/// and checks the first admissible one.
pub fn run_trial(cfg: &BatchConfig, index: u64, seed: u64) -> Result<TrialRecord, LabError> {
    let start = Instant::now();
    let mut last = None;
    for attempt in 0..cfg.attempts.max(1) {
        let instance_seed = derive_seed(seed, attempt as u64);
        let triple = match cfg.instance(instance_seed) {
            Ok(t) => t,
            Err(LabError::GenerationFailed { .. }) => continue,
            Err(e) => return Err(e),
        };
        let (report, outcome) = verify_lemma(cfg.lemma, &triple, seed)?;
        let sizes = [triple.a1().len(), triple.a2().len(), triple.a3().len()];
        let rec = TrialRecord {
            lemma: cfg.lemma,
            index,
            seed,
            attempt,
            instance_seed,
            sizes,
            admissible: report.admissible,
            lhs: outcome.as_ref().map(|o| o.lhs_count),
            rhs: outcome.as_ref().map(|o| render(&o.rhs_bound)),
            satisfied: outcome.as_ref().map(|o| o.satisfied),
            failed: report.failed().map(|c| c.name.clone()).collect(),
            timing_ms: 0,
            margin: outcome.as_ref().map(|o| o.margin()),
            witness: outcome.and_then(|o| o.witness),
        };
        let done = rec.admissible;
        last = Some(rec);
        if done {
            break;
        }
    }
    let mut rec = last.ok_or(LabError::GenerationFailed { retries: cfg.attempts })?;
    rec.timing_ms = start.elapsed().as_millis();
    Ok(rec)
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub lemma: LemmaId,
    pub master_seed: u64,
    pub trials: usize,
    pub admissible: usize,
    pub violations: usize,
    /// Smallest `lhs - rhs` over admissible trials, as `num/den`.
    pub min_margin: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BatchReport {
    pub config: BatchConfig,
    pub records: Vec<TrialRecord>,
}

impl BatchReport {
    pub fn summary(&self) -> BatchSummary {
        let min_margin = self.records.iter().filter_map(|r| r.margin.clone()).min();
        BatchSummary {
            lemma: self.config.lemma,
            master_seed: self.config.master_seed,
            trials: self.records.len(),
            admissible: self.records.iter().filter(|r| r.admissible).count(),
            violations: self.violations().count(),
            min_margin: min_margin.as_ref().map(render),
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }

    pub fn total_ms(&self) -> u128 {
        self.records.iter().map(|r| r.timing_ms).sum()
    }

    /// Deterministic JSON body: one record per trial in index order.
    pub fn records_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }

    /// Timings in trial order, kept out of the deterministic body.
    pub fn timings_ms(&self) -> Vec<u128> {
        self.records.iter().map(|r| r.timing_ms).collect()
    }

    pub fn summary_csv(&self) -> Result<String, LabError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(self.summary()).map_err(|e| LabError::Io(e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| LabError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| LabError::Io(e.to_string()))
    }

    /// Writes one witness file per violation into `dir`.
    pub fn write_witnesses(&self, dir: &Path) -> Result<Vec<PathBuf>, LabError> {
        let mut out = Vec::new();
        for r in self.violations() {
            if let Some(w) = &r.witness {
                let path = dir.join(r.witness_file_name());
                std::fs::write(&path, w.to_json())?;
                out.push(path);
            }
        }
        Ok(out)
    }
}

/// Runs `cfg.trials` trials in parallel; records come back in index order.
pub fn run_batch(cfg: &BatchConfig) -> Result<BatchReport, LabError> {
    let records = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(cfg, i, derive_seed(cfg.master_seed, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BatchReport { config: cfg.clone(), records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 3), derive_seed(7, 4));
        assert_ne!(derive_seed(7, 3), derive_seed(8, 3));
    }

    #[test]
    fn small_batch_is_reproducible() {
        let cfg = BatchConfig::new(LemmaId::Dim3, 11, 6);
        let a = run_batch(&cfg).unwrap();
        let b = run_batch(&cfg).unwrap();
        assert_eq!(a.records_json(), b.records_json());
        let s = a.summary();
        assert_eq!(s.trials, 6);
        assert_eq!(s.violations, 0);
        assert!(a.summary_csv().unwrap().starts_with("lemma,master_seed,trials,admissible,violations,min_margin\n"));
    }

    #[test]
    fn trial_replays_alone() {
        let cfg = BatchConfig::new(LemmaId::Mixed, 5, 4);
        let batch = run_batch(&cfg).unwrap();
        let r = &batch.records[2];
        let again = run_trial(&cfg, 2, r.seed).unwrap();
        assert_eq!(serde_json::to_string(r).unwrap(), serde_json::to_string(&again).unwrap());
    }
}
