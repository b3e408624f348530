//! Exact combinatorics of finite integer point sets.
//!
//! Everything here is integer or exact-rational arithmetic. Mid-points are
//! stored doubled (`p + q`) so they stay on the lattice, and convex-hull
//! membership is decided by an exact simplex.

mod arrangement;
mod chain;
mod hull;
mod linalg;
mod midpoint;
mod pack;
mod set;
mod squash;
mod triple;

pub use arrangement::{arrange_all_axes, arrangement, is_staircase};
pub use chain::{longest_chain, longest_primitive_chain, primitive_direction};
pub use hull::{in_convex_hull, integer_hull_points, is_integrally_convex, is_relatively_convex, HullOracle};
pub use linalg::dimension;
pub use midpoint::{midpoint_count, midpoint_set, union_of_midpoints, HalfPointSet};
pub use set::{LatticePoint, LatticeSet};
pub use squash::{squash_projection, SquashMap, SquashVariant};
pub use triple::{union_count, ConvexTriple, ConvexityReport};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points need at least one coordinate")]
    ZeroDimension,
    #[error("operation needs a nonempty set")]
    EmptySet,
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("first set is not contained in the second")]
    NotSubset,
    #[error("sets are not nested A1 ⊆ A2 ⊆ A3")]
    NotNested,
    #[error("dimension hypothesis fails: {0}")]
    DimensionHypothesis(String),
    #[error("projection is not integral on the given points")]
    NonIntegralMap,
    #[error("coordinate overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
