//! Finite point sets on the rational line and the convexity predicate.

use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A strictly ascending (hence duplicate-free) finite sequence of rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct PointSet {
    elems: Vec<Rational>,
}

impl PointSet {
    /// Wraps an already ascending vector, rejecting anything else.
    pub fn new(elems: Vec<Rational>) -> Result<Self> {
        if let Some(i) = elems.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotAscending(i + 1));
        }
        Ok(PointSet { elems })
    }

    /// Sorts and deduplicates raw input.
    pub fn from_unsorted(mut elems: Vec<Rational>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        PointSet { elems }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self::from_unsorted(it.into_iter().map(Rational::from).collect())
    }

    pub fn empty() -> Self {
        PointSet::default()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.elems
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Rational) -> Option<usize> {
        self.elems.binary_search(x).ok()
    }

    /// True when every element of `self` is in `other`.
    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        let mut it = other.elems.iter();
        'outer: for x in &self.elems {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Consecutive differences `a_{i+1} - a_i`.
    pub fn gaps(&self) -> Result<Vec<Rational>> {
        if self.elems.len() < 2 {
            return Err(Error::UndefinedGaps(self.elems.len()));
        }
        Ok(self.elems.windows(2).map(|w| &w[1] - &w[0]).collect())
    }

    pub fn check_convex(&self) -> Result<Convexity> {
        let gaps = self.gaps()?;
        Ok(match gaps.windows(2).position(|w| w[0] >= w[1]) {
            None => Convexity::Convex,
            Some(i) => Convexity::Violation { index: i + 1 },
        })
    }

    /// `{alpha * x + beta}`; reverses order when `alpha < 0`.
    pub fn affine_image(&self, alpha: &Rational, beta: &Rational) -> Result<PointSet> {
        if alpha.is_zero() {
            return Err(Error::DegenerateMap);
        }
        let mut elems: Vec<Rational> = self.elems.iter().map(|x| alpha * x + beta).collect();
        if alpha.is_negative() {
            elems.reverse();
        }
        Ok(PointSet { elems })
    }
}

impl Deref for PointSet {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.elems
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<Rational>::deserialize(d)?;
        PointSet::new(elems).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`PointSet::check_convex`].
///
/// `index` is 1-based over the gap sequence: the violation is the smallest
/// `i` with `d_i >= d_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convexity {
    Convex,
    Violation { index: usize },
}

impl Convexity {
    pub fn is_convex(self) -> bool {
        self == Convexity::Convex
    }
}

/// A point set with at least two elements whose gaps strictly increase.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConvexSet(PointSet);

impl ConvexSet {
    pub fn points(&self) -> &PointSet {
        &self.0
    }

    pub fn into_points(self) -> PointSet {
        self.0
    }
}

impl TryFrom<PointSet> for ConvexSet {
    type Error = Error;

    fn try_from(s: PointSet) -> Result<Self> {
        match s.check_convex()? {
            Convexity::Convex => Ok(ConvexSet(s)),
            Convexity::Violation { index } => Err(Error::NotConvex { index }),
        }
    }
}

impl Deref for ConvexSet {
    type Target = PointSet;

    fn deref(&self) -> &PointSet {
        &self.0
    }
}

impl Serialize for ConvexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
