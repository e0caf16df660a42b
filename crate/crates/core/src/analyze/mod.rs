//! Exact counts of additive configurations.
//!
//! All counts are over ordered tuples: `T3(A)` counts `(a, b, c)` with
//! `2a = b + c`, `E(A)` counts `(a, b, c, d)` with `a + b = c + d`, and
//! `r(x)` counts `(a, b)` with `a + b = x`.
//!
//! The kernels run on the integer image of the set (see `coords`), so the
//! inner loops compare machine integers whenever the common denominator
//! allows it.

mod report;
mod sequence;

use std::cmp::Reverse;
use std::collections::binary_heap::PeekMut;
use std::collections::BinaryHeap;

use crate::coords::{dispatch, Coord, IntImage};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::PointSet;

pub use report::{Stat, StatReport, StatSelection};
pub use sequence::{
    count_in_intervals, longest_monotone, longest_non_decreasing, longest_non_increasing,
    monotone_decomposition, Direction, MonotoneRun,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThreeApCount {
    pub total: u64,
    /// `total` minus the `|A|` trivial triples `a = b = c`.
    pub nontrivial: u64,
}

pub fn count_3aps(a: &PointSet) -> ThreeApCount {
    let img = IntImage::of(a);
    let total = dispatch!(img, |v| count_3aps_int(v));
    ThreeApCount {
        total,
        nontrivial: total - a.len() as u64,
    }
}

fn count_3aps_int<T: Coord>(v: &[T]) -> u64 {
    v.iter().map(|x| reps_of(v, &x.double())).sum()
}

/// Ordered pairs of a sorted slice summing to `target`, by two pointers.
fn reps_of<T: Coord>(v: &[T], target: &T) -> u64 {
    if v.is_empty() {
        return 0;
    }
    let (mut i, mut j) = (0usize, v.len() - 1);
    let mut count = 0;
    while i <= j {
        match v[i].add(&v[j]).cmp(target) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => {
                if j == 0 {
                    break;
                }
                j -= 1;
            }
            std::cmp::Ordering::Equal => {
                count += if i == j { 1 } else { 2 };
                i += 1;
                if j == 0 {
                    break;
                }
                j -= 1;
            }
        }
    }
    count
}

pub fn rep_count(a: &PointSet, x: &Rational) -> u64 {
    let v = a.as_slice();
    if v.is_empty() {
        return 0;
    }
    let (mut i, mut j) = (0usize, v.len() - 1);
    let mut count = 0;
    while i <= j {
        let s = &v[i] + &v[j];
        match s.cmp(x) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => {
                if j == 0 {
                    break;
                }
                j -= 1;
            }
            std::cmp::Ordering::Equal => {
                count += if i == j { 1 } else { 2 };
                i += 1;
                if j == 0 {
                    break;
                }
                j -= 1;
            }
        }
    }
    count
}

/// Visits every distinct pairwise sum in ascending order together with the
/// unordered index pairs `(i, j)`, `i <= j`, realising it (ascending in `i`).
///
/// A k-way merge over the rows `v[i] + v[i..]` keeps memory at `O(n)`.
pub(crate) fn for_each_sum_class<T, F>(v: &[T], mut f: F)
where
    T: Coord,
    F: FnMut(&T, &[(u32, u32)]),
{
    let n = v.len();
    if n == 0 {
        return;
    }
    let mut heap: BinaryHeap<Reverse<(T, u32, u32)>> = (0..n)
        .map(|i| Reverse((v[i].double(), i as u32, i as u32)))
        .collect();
    let mut class: Vec<(u32, u32)> = Vec::new();
    let mut current: Option<T> = None;
    while let Some(mut top) = heap.peek_mut() {
        let Reverse((sum, i, j)) = &*top;
        let (i, j) = (*i, *j);
        if current.as_ref() != Some(sum) {
            if let Some(c) = current.take() {
                f(&c, &class);
                class.clear();
            }
            current = Some(sum.clone());
        }
        class.push((i, j));
        let next = j as usize + 1;
        if next < n {
            *top = Reverse((v[i as usize].add(&v[next]), i, next as u32));
        } else {
            PeekMut::pop(top);
        }
    }
    if let Some(c) = current {
        f(&c, &class);
    }
}

/// Ordered representation count of a sum class.
fn ordered_reps(class: &[(u32, u32)]) -> u64 {
    class.iter().map(|&(i, j)| if i == j { 1 } else { 2 }).sum()
}

/// `E(A) = sum_x r(x)^2`.
pub fn additive_energy(a: &PointSet) -> u128 {
    let img = IntImage::of(a);
    dispatch!(img, |v| {
        let mut e: u128 = 0;
        for_each_sum_class(v, |_, class| {
            let r = ordered_reps(class) as u128;
            e += r * r;
        });
        e
    })
}

/// Maximum of `r(x)` over `x in A + A`, smallest `x` on ties.
pub fn max_rep(a: &PointSet) -> Result<(Rational, u64)> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let img = IntImage::of(a);
    Ok(dispatch!(img, |v| {
        let mut best = None;
        let mut best_r = 0u64;
        for_each_sum_class(v, |sum, class| {
            let r = ordered_reps(class);
            if r > best_r {
                best_r = r;
                best = Some(img.to_rational(sum));
            }
        });
        (best.expect("nonempty set has sums"), best_r)
    }))
}

/// The full representation profile `(x, r(x))`, ascending in `x`.
pub fn rep_profile(a: &PointSet) -> Vec<(Rational, u64)> {
    let img = IntImage::of(a);
    dispatch!(img, |v| {
        let mut out = Vec::new();
        for_each_sum_class(v, |sum, class| out.push((img.to_rational(sum), ordered_reps(class))));
        out
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LongestAp {
    pub length: usize,
    pub witness: Vec<Rational>,
}

/// Longest arithmetic progression contained in `a`.
///
/// Pair DP: `L(i, j)` is the length of the longest progression starting
/// `a_i, a_j`; it extends `L(j, k)` when `a_i + a_k = 2 a_j`. Ties go to the
/// smallest first element, then the smallest common difference.
pub fn longest_ap(a: &PointSet) -> Result<LongestAp> {
    match a.len() {
        0 => return Err(Error::EmptySet),
        1 | 2 => {
            return Ok(LongestAp {
                length: a.len(),
                witness: a.to_vec(),
            })
        }
        _ => {}
    }
    let img = IntImage::of(a);
    let (length, i, j) = if a.len() <= u16::MAX as usize {
        dispatch!(img, |v| lap_table::<_, u16>(v))
    } else {
        dispatch!(img, |v| lap_table::<_, u32>(v))
    };
    let start = a[i].clone();
    let step = &a[j] - &a[i];
    let mut witness = Vec::with_capacity(length);
    let mut x = start;
    for _ in 0..length {
        witness.push(x.clone());
        x = &x + &step;
    }
    Ok(LongestAp { length, witness })
}

trait LenCell: Copy + Ord {
    const TWO: Self;
    fn succ(self) -> Self;
    fn get(self) -> usize;
}

impl LenCell for u16 {
    const TWO: Self = 2;
    fn succ(self) -> Self {
        self + 1
    }
    fn get(self) -> usize {
        self as usize
    }
}

impl LenCell for u32 {
    const TWO: Self = 2;
    fn succ(self) -> Self {
        self + 1
    }
    fn get(self) -> usize {
        self as usize
    }
}

/// Returns `(length, i, j)` of the best starting pair. Needs `n >= 3`.
fn lap_table<T: Coord, L: LenCell>(v: &[T]) -> (usize, usize, usize) {
    let n = v.len();
    // upper triangle, row-major by the second index: idx(i, j) for i < j
    let idx = |i: usize, j: usize| j * (j - 1) / 2 + i;
    let mut table: Vec<L> = vec![L::TWO; n * (n - 1) / 2];
    for j in (1..n - 1).rev() {
        let twice = v[j].double();
        let mut i = j as isize - 1;
        let mut k = j + 1;
        while i >= 0 && k < n {
            let iu = i as usize;
            match v[iu].add(&v[k]).cmp(&twice) {
                std::cmp::Ordering::Less => k += 1,
                std::cmp::Ordering::Greater => i -= 1,
                std::cmp::Ordering::Equal => {
                    table[idx(iu, j)] = table[idx(j, k)].succ();
                    i -= 1;
                    k += 1;
                }
            }
        }
    }
    let mut best = (2usize, 0usize, 1usize);
    for i in 0..n - 1 {
        for j in i + 1..n {
            let l = table[idx(i, j)].get();
            if l > best.0 {
                best = (l, i, j);
            }
        }
    }
    best
}
