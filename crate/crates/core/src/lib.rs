//! Exact additive-structure toolkit for convex sets.
//!
//! Every coordinate is an exact [`Rational`]; no floating point enters any
//! count, certificate or convexity check. The crate is split into:
//!
//! * [`rational`], [`set`], [`setfile`]: number type, point sets and the
//!   line-oriented set file format;
//! * [`construct`]: generators for extremal convex sets, each returning a
//!   certificate that can be re-checked independently;
//! * [`analyze`]: counts of 3-term progressions, additive energy, the
//!   representation function, longest progressions and the monotone
//!   subsequence utilities;
//! * [`sidon`]: Sidon predicates, exact maximum Sidon subsets and the
//!   random-pruning procedure.

pub mod analyze;
pub mod construct;
mod coords;
pub mod error;
pub mod rational;
pub mod set;
pub mod setfile;
pub mod sidon;

pub use error::{Error, Result};
pub use rational::Rational;
pub use set::{ConvexSet, Convexity, PointSet};
