//! Exact arithmetic for plurigenera, decomposability margins, the universal
//! index search and the table of bounds for abelian automorphism groups of
//! surfaces.
//!
//! Geometric hypotheses (pencils, canonical image, evenness) are inputs.
//! Every result carries a trail of the conditions it used.

pub mod fiber;
pub mod margin;
pub mod surface;
pub mod threefold;
pub mod universal;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

pub use fiber::singular_fiber_floor;
pub use margin::{decomposability_margin, Invariants, MarginReport, MarginVariant};
pub use surface::{
    prop58_cases, surface_bound, surface_table, BoundResult, Candidate, Prop58Case, SurfaceFlags, SurfaceInvariants,
    TableRow,
};
pub use threefold::{plurigenus, ThreefoldInvariants};
pub use universal::{threefold_constant, universal_n, ConstantAssembly, EndpointCheck, NCertificate, Poly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    /// Input violates a constructor invariant; names the invariant.
    #[error("invalid invariants: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// One condition of a hypothesis trail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub source: String,
    pub condition: String,
    pub holds: bool,
    /// Taken from an input flag or assumed, not computed.
    pub assumed: bool,
}

impl Condition {
    pub(crate) fn checked(source: &str, condition: impl Into<String>, holds: bool) -> Self {
        Condition { source: source.into(), condition: condition.into(), holds, assumed: false }
    }

    pub(crate) fn assumed(source: &str, condition: impl Into<String>, holds: bool) -> Self {
        Condition { source: source.into(), condition: condition.into(), holds, assumed: true }
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `n` for integers, `num/den` otherwise.
pub fn render(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) mod ser {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::render(r))
    }

    pub fn bigint<S: Serializer>(r: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn opt_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&super::render(r)),
            None => s.serialize_none(),
        }
    }
}
