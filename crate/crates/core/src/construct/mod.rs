//! Generators for extremal convex sets.
//!
//! Each generator returns the set together with a certificate that can be
//! re-verified against the set on its own.

mod jarnik;
mod nested_parabola;
mod rich_sum;

pub use jarnik::{jarnik_polyline, JarnikPolyline, LatticePoint};
pub use nested_parabola::{
    block_indices, choose_curvature, congruence_start, nested_parabola, ApCertificate, BlockIndex,
    NestedParabolaParams,
};
pub use rich_sum::{
    choose_lengths, convexify, convexify_block, farey_fractions, rich_sum, Fraction,
    RichSumCertificate,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::{ConvexSet, PointSet};

/// `{1, 2, 4, ..., 2^(n-1)}`: convex, Sidon, and free of nontrivial 3-APs.
pub fn geometric_set(n: u64) -> Result<ConvexSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("geometric set needs n >= 2, got {n}")));
    }
    let elems = (0..n)
        .map(|k| Rational::from_integer(BigInt::from(1) << k))
        .collect();
    ConvexSet::try_from(PointSet::new(elems)?)
}
