//! Integer images of point sets.
//!
//! Multiplying every element by the least common denominator `D > 0` maps a
//! set to integers and preserves every linear relation with integer
//! coefficients summing to zero (`a + b = c + d`, `2a = b + c`) as well as
//! order. Counting then runs on `i128` when the image is small enough to
//! leave headroom for sums, and on `BigInt` otherwise.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::rational::Rational;
use crate::set::PointSet;

/// Integer coordinate type the counting kernels are generic over.
pub(crate) trait Coord: Clone + Ord + Eq + Hash + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn double(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Coord for i128 {
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn double(&self) -> Self {
        self << 1
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coord for BigInt {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn double(&self) -> Self {
        self << 1
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) enum Values {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

pub(crate) struct IntImage {
    pub values: Values,
    pub scale: BigInt,
}

/// Sums of two image values must stay below this magnitude.
const SMALL_LIMIT: i128 = 1 << 124;

impl IntImage {
    pub fn of(s: &PointSet) -> Self {
        Self::of_slice(s.as_slice())
    }

    pub fn of_slice(xs: &[Rational]) -> Self {
        let scale = xs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let big: Vec<BigInt> = xs
            .iter()
            .map(|x| x.numer() * (&scale / x.denom()))
            .collect();
        let small: Option<Vec<i128>> = big
            .iter()
            .map(|v| v.to_i128().filter(|v| v.abs() < SMALL_LIMIT))
            .collect();
        let values = match small {
            Some(v) => Values::Small(v),
            None => Values::Big(big),
        };
        IntImage { values, scale }
    }

    /// Maps an image-space value (or sum of values) back to the rationals.
    pub fn to_rational<T: Coord>(&self, v: &T) -> Rational {
        Rational::new(v.to_bigint(), self.scale.clone())
    }
}

/// Runs a generic kernel on whichever integer representation the image uses.
macro_rules! dispatch {
    ($image:expr, |$v:ident| $body:expr) => {
        match &$image.values {
            $crate::coords::Values::Small($v) => $body,
            $crate::coords::Values::Big($v) => $body,
        }
    };
}

pub(crate) use dispatch;
