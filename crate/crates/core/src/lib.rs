//! Exact-arithmetic enumeration of chambers of the resonance and threshold
//! hyperplane arrangements, alternating-tree compatibility graphs, and the
//! domains of polynomiality of the type-A Kostant partition function.
//!
//! Everything here is computed over arbitrary-precision rationals; no
//! floating point is involved in any sign determination. Two independent
//! pipelines (direct arrangement enumeration and clique classification in
//! tree compatibility graphs) produce the same chamber counts and are
//! cross-validated against each other in the test suites.

pub mod arrangement;
pub mod error;
pub mod flows;
pub mod graph;
pub mod kostant;
pub mod linalg;
pub mod lp;
pub mod point;
pub mod sign;
pub mod subset;
pub mod tree;

pub use error::Error;
pub use point::RationalPoint;
pub use sign::{Sign, SignConvention, SignVector, TreeSign, TreeSignVector};
pub use subset::SubsetMask;
pub use tree::AlternatingTree;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
