//! Abelian covers of curves described by branch data.
//!
//! A cover `C -> C/G` with `G` abelian is determined, for every quantity
//! computed here, by the group, the genus of the quotient and one group
//! element per branch point. Genera follow from the Riemann-Hurwitz formula;
//! quotients by subgroups detect hyperelliptic and bi-elliptic involutions.

pub mod datum;
pub mod enumerate;
pub mod golden;
pub mod group;

use thiserror::Error;

pub use datum::{
    example_family_49, hurwitz_genus, hyperelliptic_witness, involution_quotients, lemma43_admissible, quotient_genus,
    witness_from, CoverCheck, CoverCheckReport, CoverDatum, Involution, Witness, WitnessKind,
};
pub use enumerate::{enumerate_extremal, EnumerationRecord, Filters, LinearBound};
pub use golden::{compare_with_golden, golden_for, golden_runs, Finding, GoldenComparison, GoldenRun, SignatureEntry};

pub use group::{FiniteAbelianGroup, GroupElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("inadmissible datum: {0}")]
    Inadmissible(String),
    #[error("generators are not elements of the group")]
    NotSubgroup,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
