//! Sidon subsets: predicates, exact search, random pruning and a greedy
//! baseline.
//!
//! All routines work on the integer image of the input (see `coords`), so
//! sums are compared exactly without rational arithmetic in the inner loops.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analyze::for_each_sum_class;
use crate::coords::{dispatch, Coord, IntImage};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::PointSet;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SidonResult {
    pub subset: PointSet,
    /// True iff the subset is known to be of maximum size.
    pub exact: bool,
    pub nodes_explored: u64,
    pub quadruples_removed: u64,
}

/// A solution `a + b = c + d` with `{a, b} != {c, d}`, pairs written with
/// the smaller element first.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Quadruple {
    pub first: (Rational, Rational),
    pub second: (Rational, Rational),
}

/// True iff all sums `a + b` with `a <= b` are distinct.
pub fn is_sidon(b: &PointSet) -> bool {
    let img = IntImage::of(b);
    dispatch!(img, |v| is_sidon_int(v))
}

fn is_sidon_int<T: Coord>(v: &[T]) -> bool {
    let mut sums = HashSet::with_capacity(v.len() * (v.len() + 1) / 2);
    for i in 0..v.len() {
        for j in i..v.len() {
            if !sums.insert(v[i].add(&v[j])) {
                return false;
            }
        }
    }
    true
}

/// Number of unordered nontrivial solutions `{{a,b},{c,d}}`, including the
/// ones with `a = b`, and up to `limit` of them in ascending order of the
/// sum.
pub fn nontrivial_quadruples(a: &PointSet, limit: usize) -> (u64, Vec<Quadruple>) {
    let img = IntImage::of(a);
    let xs = a.as_slice();
    let pair = |(i, j): (u32, u32)| (xs[i as usize].clone(), xs[j as usize].clone());
    let mut count = 0u64;
    let mut sample = Vec::new();
    dispatch!(img, |v| {
        for_each_sum_class(v, |_, class| {
            let k = class.len() as u64;
            count += k * (k - 1) / 2;
            for p in 0..class.len() {
                for q in p + 1..class.len() {
                    if sample.len() >= limit {
                        return;
                    }
                    sample.push(Quadruple {
                        first: pair(class[p]),
                        second: pair(class[q]),
                    });
                }
            }
        })
    });
    (count, sample)
}

/// Order in which [`exact_max_sidon_with`] tries candidates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateOrder {
    #[default]
    Ascending,
    /// Fewest nontrivial quadruples first, ties by value.
    Degree,
}

/// Maximum Sidon subset by branch and bound, candidates ascending.
pub fn exact_max_sidon(a: &PointSet, node_budget: u64) -> Result<SidonResult> {
    exact_max_sidon_with(a, node_budget, CandidateOrder::Ascending)
}

/// Branch and bound over candidates in the given order.
///
/// The include branch is explored first and the incumbent only changes on
/// strict improvement, so a completed search returns the lexicographically
/// smallest optimal subset with respect to the candidate order.
pub fn exact_max_sidon_with(a: &PointSet, node_budget: u64, order: CandidateOrder) -> Result<SidonResult> {
    if node_budget == 0 {
        return Err(Error::InvalidParameter("node budget must be at least 1".into()));
    }
    if is_sidon(a) {
        return Ok(SidonResult {
            subset: a.clone(),
            exact: true,
            nodes_explored: 1,
            quadruples_removed: 0,
        });
    }
    let img = IntImage::of(a);
    let (best, nodes, complete) = dispatch!(img, |v| {
        let cand = candidate_order(v, order);
        let mut search = Search {
            v,
            budget: node_budget,
            nodes: 0,
            chosen: Vec::new(),
            sums: HashSet::new(),
            best: Vec::new(),
            aborted: false,
        };
        search.descend(&cand);
        (search.best, search.nodes, !search.aborted)
    });
    let subset = PointSet::from_unsorted(best.into_iter().map(|i| a[i].clone()).collect());
    Ok(SidonResult {
        subset,
        exact: complete,
        nodes_explored: nodes,
        quadruples_removed: 0,
    })
}

fn candidate_order<T: Coord>(v: &[T], order: CandidateOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    if order == CandidateOrder::Degree {
        let mut degree = vec![0u64; v.len()];
        for_each_sum_class(v, |_, class| {
            let others = class.len() as u64 - 1;
            for &(i, j) in class {
                degree[i as usize] += others;
                if i != j {
                    degree[j as usize] += others;
                }
            }
        });
        idx.sort_by_key(|&i| (degree[i], i));
    }
    idx
}

struct Search<'a, T> {
    v: &'a [T],
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
    /// Pairwise sums (with repetition `a + a`) of `chosen`.
    sums: HashSet<T>,
    best: Vec<usize>,
    aborted: bool,
}

impl<T: Coord> Search<'_, T> {
    fn compatible(&self, x: usize) -> bool {
        let vx = &self.v[x];
        !self.sums.contains(&vx.double())
            && self.chosen.iter().all(|&s| !self.sums.contains(&vx.add(&self.v[s])))
    }

    /// `cand` holds the remaining candidates compatible with `chosen`.
    fn descend(&mut self, cand: &[usize]) {
        if self.aborted {
            return;
        }
        if self.nodes >= self.budget {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        for (pos, &x) in cand.iter().enumerate() {
            // bound: everything from here on can add at most cand.len() - pos
            if self.chosen.len() + cand.len() - pos <= self.best.len() {
                return;
            }
            let added: Vec<T> = self
                .chosen
                .iter()
                .map(|&s| self.v[x].add(&self.v[s]))
                .chain(std::iter::once(self.v[x].double()))
                .collect();
            for s in &added {
                self.sums.insert(s.clone());
            }
            self.chosen.push(x);
            let rest: Vec<usize> = cand[pos + 1..]
                .iter()
                .copied()
                .filter(|&y| self.compatible(y))
                .collect();
            self.descend(&rest);
            self.chosen.pop();
            for s in &added {
                self.sums.remove(s);
            }
            if self.aborted {
                return;
            }
            // the exclude branch continues with the next candidate
        }
    }
}

/// Keeps each element independently with probability `p`, then deletes an
/// element of a nontrivial quadruple until the rest is Sidon.
///
/// Element `i` is kept iff the first word of the ChaCha8 stream `i` under
/// `seed` is below `p * 2^64`, compared exactly. Quadruples are found in
/// increasing order of their largest element and that element is deleted,
/// so each deletion removes the most recent element creating a repeated sum.
pub fn random_prune_sidon(a: &PointSet, p: &Rational, seed: u64) -> Result<SidonResult> {
    if !p.is_positive() || p > &Rational::one() {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1], got {p}")));
    }
    let threshold = p.numer() << 64u32;
    let mut kept = Vec::new();
    for i in 0..a.len() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        if BigInt::from(rng.next_u64()) * p.denom() < threshold {
            kept.push(i);
        }
    }
    let img = IntImage::of(a);
    let (survivors, removed) = dispatch!(img, |v| sift_ascending(v, &kept));
    Ok(SidonResult {
        subset: PointSet::new(survivors.into_iter().map(|i| a[i].clone()).collect())?,
        exact: false,
        nodes_explored: 0,
        quadruples_removed: removed,
    })
}

/// Scans `order` (ascending indices) and keeps an element iff it creates no
/// repeated sum with the elements kept so far.
fn sift_ascending<T: Coord>(v: &[T], order: &[usize]) -> (Vec<usize>, u64) {
    let mut sums: HashSet<T> = HashSet::new();
    let mut kept: Vec<usize> = Vec::new();
    let mut rejected = 0u64;
    for &x in order {
        let new: Vec<T> = kept
            .iter()
            .map(|&s| v[x].add(&v[s]))
            .chain(std::iter::once(v[x].double()))
            .collect();
        if new.iter().any(|s| sums.contains(s)) {
            rejected += 1;
        } else {
            sums.extend(new);
            kept.push(x);
        }
    }
    (kept, rejected)
}

/// Ascending scan keeping every element that leaves the subset Sidon.
pub fn greedy_sidon(a: &PointSet) -> SidonResult {
    let img = IntImage::of(a);
    let all: Vec<usize> = (0..a.len()).collect();
    let (kept, _) = dispatch!(img, |v| sift_ascending(v, &all));
    let exact = kept.len() == a.len();
    SidonResult {
        subset: PointSet::from_unsorted(kept.into_iter().map(|i| a[i].clone()).collect()),
        exact,
        nodes_explored: 0,
        quadruples_removed: 0,
    }
}

/// `min(1, c * size^-(73/150 + eps))`, rounded down to a multiple of
/// `2^-64` (and at least `2^-64`).
///
/// The power is evaluated in `f64`; the result is an exact dyadic rational,
/// so the sampling it drives is reproducible.
pub fn default_prune_probability(size: usize, c: f64, eps: f64) -> Result<Rational> {
    if !(c > 0.0 && c.is_finite() && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need finite c > 0 and finite eps, got c = {c}, eps = {eps}"
        )));
    }
    let value = c * (size.max(1) as f64).powf(-(73.0 / 150.0 + eps));
    if value >= 1.0 {
        return Ok(Rational::one());
    }
    let scaled = (value * 2f64.powi(64)).floor().to_u128().unwrap_or(0).max(1);
    Ok(Rational::new(scaled, BigInt::one() << 64u32))
}
