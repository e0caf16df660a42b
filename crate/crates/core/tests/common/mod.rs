//! Brute-force oracles written straight from the definitions, on rationals,
//! sharing no code with the library kernels.

#![allow(dead_code)]

use std::collections::HashSet;

use convexlab::{PointSet, Rational};
use rand::Rng;

/// Random set of at most `max_len` rationals with small numerators and
/// denominators, so that coincidences between sums are common.
pub fn random_set<R: Rng>(rng: &mut R, max_len: usize) -> PointSet {
    let len = rng.gen_range(0..=max_len);
    let den_max = rng.gen_range(1..=6i64);
    let num_span = rng.gen_range(len as i64 / 2 + 1..=4 * len as i64 + 4);
    let elems = (0..len)
        .map(|_| Rational::new(rng.gen_range(-num_span..=num_span), rng.gen_range(1..=den_max)))
        .collect();
    PointSet::from_unsorted(elems)
}

/// Random convex set: integer start plus cumulative strictly increasing
/// rational gaps.
pub fn random_convex<R: Rng>(rng: &mut R, len: usize) -> PointSet {
    let mut x = Rational::from(rng.gen_range(-20..20i64));
    let mut gap = Rational::new(rng.gen_range(1..5i64), rng.gen_range(1..4i64));
    let mut elems = vec![x.clone()];
    for _ in 1..len {
        x = &x + &gap;
        elems.push(x.clone());
        gap = &gap + &Rational::new(rng.gen_range(1..4i64), rng.gen_range(1..6i64));
    }
    PointSet::new(elems).expect("ascending by construction")
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// Ordered triples `(a, b, c)` with `2a = b + c`.
pub fn t3(a: &PointSet) -> u64 {
    let mut count = 0;
    for b in a {
        for c in a {
            if a.as_slice().contains(&(&(b + c) * &half())) {
                count += 1;
            }
        }
    }
    count
}

/// All ordered sums `a + b`, sorted.
fn ordered_sums(a: &PointSet) -> Vec<Rational> {
    let mut s: Vec<Rational> = a.iter().flat_map(|x| a.iter().map(move |y| x + y)).collect();
    s.sort();
    s
}

/// `(x, r(x))` by run-length over the sorted ordered sums.
pub fn profile(a: &PointSet) -> Vec<(Rational, u64)> {
    let mut out: Vec<(Rational, u64)> = Vec::new();
    for s in ordered_sums(a) {
        match out.last_mut() {
            Some((x, r)) if *x == s => *r += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

pub fn energy(a: &PointSet) -> u128 {
    profile(a).iter().map(|&(_, r)| (r as u128) * (r as u128)).sum()
}

pub fn rep(a: &PointSet, x: &Rational) -> u64 {
    let mut count = 0;
    for p in a {
        for q in a {
            if &(p + q) == x {
                count += 1;
            }
        }
    }
    count
}

/// Largest `r(x)`, smallest `x` on ties.
pub fn max_rep(a: &PointSet) -> (Rational, u64) {
    let mut best: Option<(Rational, u64)> = None;
    for (x, r) in profile(a) {
        if best.as_ref().is_none_or(|(_, b)| r > *b) {
            best = Some((x, r));
        }
    }
    best.expect("nonempty")
}

/// Longest progression; ties by smallest start, then smallest difference.
pub fn longest_ap(a: &PointSet) -> (usize, Vec<Rational>) {
    let xs = a.as_slice();
    if xs.len() < 2 {
        return (xs.len(), xs.to_vec());
    }
    let members: HashSet<&Rational> = xs.iter().collect();
    let mut best = (0usize, Vec::new());
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = &xs[j] - &xs[i];
            let mut w = vec![xs[i].clone(), xs[j].clone()];
            loop {
                let next = w.last().unwrap() + &d;
                if !members.contains(&next) {
                    break;
                }
                w.push(next);
            }
            if w.len() > best.0 {
                best = (w.len(), w);
            }
        }
    }
    best
}

pub fn is_sidon(a: &PointSet) -> bool {
    let xs = a.as_slice();
    let mut sums = Vec::new();
    for i in 0..xs.len() {
        for j in i..xs.len() {
            sums.push(&xs[i] + &xs[j]);
        }
    }
    let n = sums.len();
    sums.sort();
    sums.dedup();
    sums.len() == n
}

/// Unordered pairs of distinct unordered pairs with equal sums.
pub fn quadruples(a: &PointSet) -> u64 {
    let xs = a.as_slice();
    let mut sums = Vec::new();
    for i in 0..xs.len() {
        for j in i..xs.len() {
            sums.push(&xs[i] + &xs[j]);
        }
    }
    let mut count = 0;
    for p in 0..sums.len() {
        for q in p + 1..sums.len() {
            if sums[p] == sums[q] {
                count += 1;
            }
        }
    }
    count
}

/// `S(A)` by enumerating every Sidon subset (Sidon is closed under
/// taking subsets, so nothing larger is missed).
pub fn max_sidon_size(a: &PointSet) -> usize {
    fn go(xs: &[Rational], from: usize, chosen: &mut Vec<Rational>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for k in from..xs.len() {
            chosen.push(xs[k].clone());
            if is_sidon(&PointSet::from_unsorted(chosen.clone())) {
                go(xs, k + 1, chosen, best);
            }
            chosen.pop();
        }
    }
    let mut best = 0;
    go(a.as_slice(), 0, &mut Vec::new(), &mut best);
    best
}

/// Disjoint intervals with endpoints in `a` and non-increasing lengths,
/// laid out left to right.
pub fn random_interval_chain<R: Rng>(rng: &mut R, a: &PointSet) -> Vec<(Rational, Rational)> {
    let xs = a.as_slice();
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut i = 0;
    while i + 1 < xs.len() {
        let limit = out.last().map(|(lo, hi)| hi - lo);
        // longest admissible right end from i
        let mut j = i + 1;
        while j + 1 < xs.len() && limit.as_ref().is_none_or(|l| &(&xs[j + 1] - &xs[i]) <= l) {
            j += 1;
        }
        if limit.as_ref().is_some_and(|l| &(&xs[j] - &xs[i]) > l) {
            break;
        }
        let j = rng.gen_range(i + 1..=j);
        out.push((xs[i].clone(), xs[j].clone()));
        i = j + rng.gen_range(0..2);
    }
    out
}
