//! Monotone subsequences and interval counting.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::PointSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

/// A monotone subsequence given by its positions in the source sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotoneRun {
    pub direction: Direction,
    pub indices: Vec<usize>,
    pub values: Vec<Rational>,
}

impl MonotoneRun {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Lexicographically smallest index set among the longest subsequences
/// whose consecutive pairs satisfy `ok(prev, next)`.
///
/// `start_len[i]` (longest valid subsequence beginning at `i`) is computed
/// right to left with patience-style tails in `O(m log m)`; a left-to-right
/// greedy pass then picks the earliest admissible index at each length.
fn longest_chain<F>(seq: &[Rational], ok: F) -> Vec<usize>
where
    F: Fn(&Rational, &Rational) -> bool,
{
    let m = seq.len();
    if m == 0 {
        return Vec::new();
    }
    // tails[l-1]: the "best" first value among valid subsequences of length l
    // in the current suffix, best meaning most permissive for a predecessor.
    let mut tails: Vec<&Rational> = Vec::new();
    let mut start_len = vec![0usize; m];
    for i in (0..m).rev() {
        let x = &seq[i];
        // tails is ordered so that ok(x, tails[l]) is true for a prefix of l
        let l = tails.partition_point(|t| ok(x, t));
        start_len[i] = l + 1;
        if l == tails.len() {
            tails.push(x);
        } else if ok(tails[l], x) && tails[l] != x {
            // x is more permissive than the current holder
            tails[l] = x;
        }
    }
    let best = *start_len.iter().max().expect("nonempty");
    let mut out = Vec::with_capacity(best);
    let mut need = best;
    let mut prev: Option<&Rational> = None;
    for (i, x) in seq.iter().enumerate() {
        if need == 0 {
            break;
        }
        if start_len[i] >= need && prev.is_none_or(|p| ok(p, x)) {
            out.push(i);
            prev = Some(x);
            need -= 1;
        }
    }
    out
}

pub fn longest_non_decreasing(seq: &[Rational]) -> MonotoneRun {
    run(seq, Direction::NonDecreasing, longest_chain(seq, |a, b| a <= b))
}

pub fn longest_non_increasing(seq: &[Rational]) -> MonotoneRun {
    run(seq, Direction::NonIncreasing, longest_chain(seq, |a, b| a >= b))
}

fn run(seq: &[Rational], direction: Direction, indices: Vec<usize>) -> MonotoneRun {
    let values = indices.iter().map(|&i| seq[i].clone()).collect();
    MonotoneRun {
        direction,
        indices,
        values,
    }
}

/// The longer of the longest non-decreasing and non-increasing
/// subsequences, preferring non-decreasing on ties. Its length is at least
/// `floor(sqrt(m))`.
pub fn longest_monotone(seq: &[Rational]) -> MonotoneRun {
    let up = longest_non_decreasing(seq);
    let down = longest_non_increasing(seq);
    if down.len() > up.len() {
        down
    } else {
        up
    }
}

/// Greedy disjoint decomposition into monotone pieces.
///
/// Repeatedly removes a longest monotone subsequence of what is left while
/// at least half of the original sequence remains. Indices in the returned
/// runs refer to the original sequence. Each piece has length at least
/// `floor(sqrt(r))` where `r >= m/2` is the remainder when it was taken.
pub fn monotone_decomposition(seq: &[Rational]) -> Vec<MonotoneRun> {
    let m = seq.len();
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut pieces = Vec::new();
    while !remaining.is_empty() && 2 * remaining.len() >= m {
        let values: Vec<Rational> = remaining.iter().map(|&i| seq[i].clone()).collect();
        let piece = longest_monotone(&values);
        let taken: Vec<usize> = piece.indices.iter().map(|&k| remaining[k]).collect();
        let mut keep = vec![true; remaining.len()];
        for &k in &piece.indices {
            keep[k] = false;
        }
        remaining = remaining
            .into_iter()
            .zip(keep)
            .filter_map(|(i, k)| k.then_some(i))
            .collect();
        pieces.push(MonotoneRun {
            direction: piece.direction,
            indices: taken,
            values: piece.values,
        });
    }
    pieces
}

/// `|A ∩ ⋃ (a_i, b_i)|` over open intervals with endpoints in `A`.
///
/// Requires `a_1 < b_1 <= a_2 < b_2 <= ... <= a_k < b_k` and non-increasing
/// lengths `b_i - a_i`. For convex `A` the result is at least `k(k-1)/2`.
pub fn count_in_intervals(a: &PointSet, intervals: &[(Rational, Rational)]) -> Result<usize> {
    let mut total = 0;
    for (i, (lo, hi)) in intervals.iter().enumerate() {
        let lo_idx = a
            .index_of(lo)
            .ok_or_else(|| Error::Precondition(format!("interval {}: endpoint {lo} not in set", i + 1)))?;
        let hi_idx = a
            .index_of(hi)
            .ok_or_else(|| Error::Precondition(format!("interval {}: endpoint {hi} not in set", i + 1)))?;
        if lo >= hi {
            return Err(Error::Precondition(format!(
                "interval {}: ({lo}, {hi}) is empty",
                i + 1
            )));
        }
        if i > 0 {
            let (plo, phi) = &intervals[i - 1];
            if lo < phi {
                return Err(Error::Precondition(format!(
                    "interval {} overlaps interval {}",
                    i + 1,
                    i
                )));
            }
            if hi - lo > phi - plo {
                return Err(Error::Precondition(format!(
                    "interval {} is longer than interval {}",
                    i + 1,
                    i
                )));
            }
        }
        total += hi_idx - lo_idx - 1;
    }
    Ok(total)
}
