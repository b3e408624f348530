//! Instance generators and verifiers for the mid-point counting lemmas.
//!
//! Triples are cut from nested convex regions (see [`region`]), checked
//! against each lemma's hypotheses, and compared with the exact
//! right-hand side of its conclusion. Batches derive one seed per trial from
//! a master seed, so any trial can be replayed on its own.

pub mod batch;
pub mod formulas;
pub mod generate;
pub mod identities;
pub mod region;
pub mod verify;

use lattice_core::LatticeError;
use thiserror::Error;

pub use batch::{derive_seed, run_batch, BatchConfig, BatchReport, BatchSummary, TrialRecord};
pub use formulas::{bound_formula, render, LemmaId};
pub use generate::{
    generate_large_triple, generate_nested_triple, generate_scattered_triple, generate_with, Shape, TripleProfile,
};
pub use identities::{check_intermediate_identities, IdentityCheck, IdentityReport, Relation};
pub use region::{Cut, Region, RegionWitness, Unimodular};
pub use verify::{verify_lemma, HypothesisCheck, LemmaHypothesisReport, VerificationOutcome};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no valid sample after {retries} retries")]
    GenerationFailed { retries: usize },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("lemma {0} has no closed-form bound")]
    NoFormula(String),
    #[error("input is not a staircase set")]
    NotStaircase,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
