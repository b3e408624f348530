//! `verify-lemmas`: seeded batches through the lemma verifiers.

use std::path::PathBuf;

use lemma_lab::{run_batch, BatchConfig, BatchSummary, LemmaId, TrialRecord};
use serde::Serialize;

use crate::report::{self, Header};
use crate::{exit, CliError, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub lemma: String,
    pub trials: usize,
    pub dim: Option<usize>,
    pub seed: u64,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    pub attempts: Option<usize>,
    pub format: Format,
    pub out: PathBuf,
}

impl VerifyArgs {
    pub fn new(lemma: &str, trials: usize, seed: u64, out: PathBuf) -> Self {
        VerifyArgs {
            lemma: lemma.into(),
            trials,
            dim: None,
            seed,
            min_size: None,
            max_size: None,
            attempts: None,
            format: Format::Json,
            out,
        }
    }

    pub fn config(&self) -> Result<BatchConfig, CliError> {
        let lemma: LemmaId = self.lemma.parse()?;
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        let mut cfg = BatchConfig::new(lemma, self.seed, self.trials);
        if let Some(d) = self.dim {
            let floor = match lemma {
                LemmaId::Arrangement | LemmaId::Dim3 | LemmaId::Mixed => 3,
                LemmaId::Dim4 => 4,
            };
            if d < floor {
                return Err(CliError::Usage(format!("lemma {lemma} needs --dim >= {floor}, got {d}")));
            }
            cfg.dim = d;
        }
        if let (Some(lo), Some(hi)) = (self.min_size, self.max_size) {
            if lo > hi {
                return Err(CliError::Usage(format!("--min-size {lo} exceeds --max-size {hi}")));
            }
        }
        cfg.min_size = self.min_size;
        cfg.max_size = self.max_size;
        if let Some(a) = self.attempts {
            cfg.attempts = a.max(1);
        }
        Ok(cfg)
    }

    pub fn report_name(&self, cfg: &BatchConfig) -> String {
        format!("verify-lemmas-{}-d{}-s{}", cfg.lemma, cfg.dim, cfg.master_seed)
    }
}

#[derive(Serialize)]
struct ConfigEcho {
    lemma: LemmaId,
    dim: usize,
    master_seed: u64,
    trials: usize,
    min_size: Option<usize>,
    max_size: Option<usize>,
    attempts: usize,
}

#[derive(Serialize)]
pub struct VerifyBody<'a> {
    config: ConfigEcho,
    summary: BatchSummary,
    witness_files: Vec<String>,
    records: &'a [TrialRecord],
}

/// Runs the batch, writes the report and witnesses, exits 2 on violation.
pub fn run(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let cfg = args.config()?;
    let batch = run_batch(&cfg)?;
    let summary = batch.summary();
    let name = args.report_name(&cfg);
    std::fs::create_dir_all(&args.out)?;
    let witnesses = batch.write_witnesses(&args.out)?;
    let body = VerifyBody {
        config: ConfigEcho {
            lemma: cfg.lemma,
            dim: cfg.dim,
            master_seed: cfg.master_seed,
            trials: cfg.trials,
            min_size: cfg.min_size,
            max_size: cfg.max_size,
            attempts: cfg.attempts,
        },
        summary: summary.clone(),
        witness_files: witnesses.iter().filter_map(|p| p.file_name()).map(|f| f.to_string_lossy().into_owned()).collect(),
        records: &batch.records,
    };
    let header = Header::new(
        "verify-lemmas",
        Some(cfg.master_seed),
        serde_json::json!({ "total": batch.total_ms(), "per_trial": batch.timings_ms() }),
    );
    let written = report::write(&args.out, &name, &header, &body)?;
    let mut lines = vec![format!(
        "lemma {} dim {} seed {}: {} trials, {} admissible, {} violations, min margin {}",
        cfg.lemma,
        cfg.dim,
        cfg.master_seed,
        summary.trials,
        summary.admissible,
        summary.violations,
        summary.min_margin.as_deref().unwrap_or("n/a")
    )];
    if args.format == Format::Csv {
        let csv = batch.summary_csv()?;
        report::write_text(&args.out, &format!("{name}.csv"), &csv)?;
        lines.extend(csv.lines().map(String::from));
    }
    lines.push(format!("report: {}", written.body.display()));
    for w in &witnesses {
        lines.push(format!("witness: {}", w.display()));
    }
    let code = if summary.violations > 0 { exit::VIOLATION } else { exit::OK };
    Ok(Outcome { code, lines })
}
