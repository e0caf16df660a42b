//! A convex set with an element that is the centre of many 3-term
//! progressions.
//!
//! Fractions `a_i / b_i` in `(0, 1)` with denominator at most `n` give gap
//! lengths `l_i`; a skeleton symmetric about its centre `x` is laid out with
//! gaps `l_1, ..., l_m, l_m, ..., l_1`. The left copy of interval `i` is cut
//! into `b_i` equal parts and the right copy into `a_i` parts, which makes
//! the gap sequence non-decreasing. [`convexify`] then perturbs the interior
//! points of every run of equal gaps to make it strictly increasing without
//! moving any skeleton point.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::analyze::rep_count;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::{ConvexSet, PointSet};

/// A reduced fraction with small positive parts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Fraction {
    pub numer: u64,
    pub denom: u64,
}

impl Fraction {
    pub fn to_rational(self) -> Rational {
        Rational::new(self.numer, self.denom)
    }

    pub fn recip(self) -> Fraction {
        Fraction {
            numer: self.denom,
            denom: self.numer,
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.numer as u128 * other.denom as u128).cmp(&(other.numer as u128 * self.denom as u128))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Reduced fractions `a/b` with `1 <= a < b <= n`, ascending.
///
/// Walks the Farey sequence of order `n` with the neighbour recurrence,
/// dropping the endpoints `0/1` and `1/1`.
pub fn farey_fractions(n: u64) -> Result<Vec<Fraction>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "no fractions a/b with 1 <= a < b <= {n}"
        )));
    }
    let mut out = Vec::new();
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push(Fraction { numer: c, denom: d });
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        (a, b, c, d) = (c, d, nc, nd);
    }
    Ok(out)
}

/// `l_i = (a_i + b_i) / (a_1 + b_1)`, the mediant choice, which satisfies
/// `a_i / a_{i+1} < l_i / l_{i+1} < b_i / b_{i+1}` for ascending fractions.
pub fn choose_lengths(fractions: &[Fraction]) -> Result<Vec<Rational>> {
    if let Some(i) = fractions.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "fractions not strictly ascending at position {}",
            i + 1
        )));
    }
    if let Some(f) = fractions
        .iter()
        .find(|f| f.numer == 0 || f.denom == 0 || f.numer.gcd(&f.denom) != 1)
    {
        return Err(Error::Precondition(format!("{f} is not a reduced positive fraction")));
    }
    let Some(first) = fractions.first() else {
        return Ok(Vec::new());
    };
    let base = first.numer + first.denom;
    let lengths: Vec<Rational> = fractions
        .iter()
        .map(|f| Rational::new(f.numer + f.denom, base))
        .collect();
    for (i, w) in fractions.windows(2).enumerate() {
        let ratio = &lengths[i] / &lengths[i + 1];
        let lo = Rational::new(w[0].numer, w[1].numer);
        let hi = Rational::new(w[0].denom, w[1].denom);
        if !(lo < ratio && ratio < hi) {
            return Err(Error::Verification(format!(
                "length ratio {ratio} not strictly inside ({lo}, {hi}) at position {}",
                i + 1
            )));
        }
    }
    Ok(lengths)
}

/// Replacement interior gaps `d_2 < ... < d_{k-1}` for a block with gaps
/// `a, b, ..., b, c` (`k` gaps in total, `k - 2` equal to `b`).
///
/// With `mu = min(b - a, c - b)` the gaps are `b - (mu / k) i` for `i` in
/// `[-(k-3)/2, (k-3)/2]` (odd `k`) or `[-(k-2)/2, (k-2)/2] \ {0}` (even `k`).
/// They sum to `(k - 2) b`, so both ends of the block stay fixed, and lie
/// strictly inside `(b - mu/2, b + mu/2)`.
pub fn convexify_block(a: &Rational, b: &Rational, c: &Rational, k: usize) -> Result<Vec<Rational>> {
    if !(a.is_positive() && a < b && b < c) {
        return Err(Error::Precondition(format!("need 0 < a < b < c, got ({a}, {b}, {c})")));
    }
    if k < 3 {
        return Err(Error::Precondition(format!("block needs k >= 3 gaps, got {k}")));
    }
    let mu = (b - a).min(c - b);
    let step = &mu / &Rational::from(k as i64);
    let half = if k % 2 == 1 { (k - 3) / 2 } else { (k - 2) / 2 } as i64;
    // ascending order: largest i first
    Ok((-half..=half)
        .rev()
        .filter(|&i| k % 2 == 1 || i != 0)
        .map(|i| b - &(&step * &Rational::from(i)))
        .collect())
}

/// Maximal runs of equal gaps as `(first_gap_index, length)`.
fn gap_runs(gaps: &[Rational]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=gaps.len() {
        if i == gaps.len() || gaps[i] != gaps[start] {
            runs.push((start, i - start));
            start = i;
        }
    }
    runs
}

/// Turns a set with non-decreasing gaps into a convex set of the same size.
///
/// Every maximal run of at least two equal gaps is handed to
/// [`convexify_block`] with its neighbouring gaps as `a` and `c`; a run at
/// either end of the set gets a synthetic neighbour at half the available
/// slack (at most half the run's gap on the left, keeping gaps positive). Endpoints of all runs are kept, and every point in `protected`
/// must be one of them.
pub fn convexify(s: &PointSet, protected: &PointSet) -> Result<ConvexSet> {
    if s.len() < 2 {
        return Err(Error::UndefinedGaps(s.len()));
    }
    let gaps = s.gaps()?;
    if let Some(i) = gaps.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::Precondition(format!(
            "gaps are not non-decreasing: d_{} > d_{}",
            i + 1,
            i + 2
        )));
    }
    let runs = gap_runs(&gaps);
    if runs.len() == 1 && runs[0].1 >= 2 {
        return Err(Error::WholeSetRun);
    }

    let mut fixed = vec![false; s.len()];
    for &(start, len) in &runs {
        fixed[start] = true;
        fixed[start + len] = true;
    }
    for p in protected {
        match s.index_of(p) {
            Some(i) if fixed[i] => {}
            Some(_) => {
                return Err(Error::Precondition(format!(
                    "protected point {p} lies inside a run of equal gaps"
                )))
            }
            None => return Err(Error::Precondition(format!("protected point {p} is not in the set"))),
        }
    }

    let two = Rational::from(2);
    let mut new_gaps = gaps.clone();
    for (r, &(start, len)) in runs.iter().enumerate() {
        if len < 2 {
            continue;
        }
        let b = &gaps[start];
        let (a, c) = if r == 0 {
            // capped so the synthetic gap stays positive
            let c = gaps[start + len].clone();
            let slack = ((&c - b) / &two).min(b / &two);
            (b - &slack, c)
        } else if r == runs.len() - 1 {
            let a = gaps[start - 1].clone();
            let c = b + &((b - &a) / &two);
            (a, c)
        } else {
            (gaps[start - 1].clone(), gaps[start + len].clone())
        };
        let d = convexify_block(&a, b, &c, len + 2)?;
        new_gaps[start..start + len].clone_from_slice(&d);
    }

    let mut elems = Vec::with_capacity(s.len());
    let mut x = s[0].clone();
    elems.push(x.clone());
    for g in &new_gaps {
        x = &x + g;
        elems.push(x.clone());
    }
    let out = PointSet::new(elems).map_err(|e| Error::Verification(e.to_string()))?;
    for (i, keep) in fixed.iter().enumerate() {
        if *keep && out[i] != s[i] {
            return Err(Error::Verification(format!("run endpoint {} moved", s[i])));
        }
    }
    ConvexSet::try_from(out).map_err(|e| Error::Verification(e.to_string()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RichSumCertificate {
    pub n: u64,
    pub center: Rational,
    pub skeleton: PointSet,
    /// `m = |Q|`, a lower bound for `r_{A+A}(2 * center)`.
    pub guaranteed_reps: u64,
    /// Direct count of `r_{A+A}(2 * center)` at construction time.
    pub counted_reps: u64,
}

impl RichSumCertificate {
    pub fn verify(&self, set: &PointSet) -> Result<()> {
        if !self.skeleton.is_subset_of(set) {
            return Err(Error::Verification("skeleton is not contained in the set".into()));
        }
        if !self.skeleton.contains(&self.center) {
            return Err(Error::Verification("centre is not a skeleton point".into()));
        }
        let r = rep_count(set, &(&self.center + &self.center));
        if r < self.guaranteed_reps {
            return Err(Error::Verification(format!(
                "r(2x) = {r} < guaranteed {}",
                self.guaranteed_reps
            )));
        }
        Ok(())
    }
}

/// The skeleton `B` (ascending, `2m + 1` points from 0) for the given lengths.
fn skeleton(lengths: &[Rational]) -> Vec<Rational> {
    let mut pts = vec![Rational::zero()];
    for l in lengths.iter().chain(lengths.iter().rev()) {
        let next = pts.last().expect("nonempty") + l;
        pts.push(next);
    }
    pts
}

pub fn rich_sum(n: u64) -> Result<(ConvexSet, RichSumCertificate)> {
    let q = farey_fractions(n)?;
    let lengths = choose_lengths(&q)?;
    let m = q.len();
    let sk = skeleton(&lengths);
    let center = sk[m].clone();

    // gap sizes after subdivision: l_i / b_i on the left, l_i / a_i mirrored
    for i in 0..m {
        let left = &lengths[i] / &Rational::from(q[i].denom as i64);
        let right = &lengths[i] / &Rational::from(q[i].numer as i64);
        if i + 1 < m {
            let left_next = &lengths[i + 1] / &Rational::from(q[i + 1].denom as i64);
            let right_next = &lengths[i + 1] / &Rational::from(q[i + 1].numer as i64);
            if !(left < left_next && right_next < right) {
                return Err(Error::Verification(format!(
                    "subdivided gaps not monotone at interval {}",
                    i + 1
                )));
            }
        } else if left >= right {
            return Err(Error::Verification("central gaps not increasing".into()));
        }
    }

    let mut elems = Vec::new();
    // left half: interval i (x_i, x_{i+1}) into b_i parts
    for i in 0..m {
        push_subdivided(&mut elems, &sk[i], &lengths[i], q[i].denom);
    }
    // right half: interval (x_{2m-i+1}, x_{2m-i+2}) has length l_i, a_i parts
    for (j, i) in (0..m).rev().enumerate() {
        push_subdivided(&mut elems, &sk[m + j], &lengths[i], q[i].numer);
    }
    elems.push(sk[2 * m].clone());
    let pre = PointSet::new(elems).map_err(|e| Error::Verification(e.to_string()))?;

    let expected: u64 = (2 * m + 1) as u64 + q.iter().map(|f| f.numer + f.denom - 2).sum::<u64>();
    if pre.len() as u64 != expected {
        return Err(Error::Verification(format!(
            "subdivided set has {} points, expected {expected}",
            pre.len()
        )));
    }

    let skeleton = PointSet::new(sk).map_err(|e| Error::Verification(e.to_string()))?;
    let set = convexify(&pre, &skeleton)?;
    let counted = rep_count(&set, &(&center + &center));
    let cert = RichSumCertificate {
        n,
        center,
        skeleton,
        guaranteed_reps: m as u64,
        counted_reps: counted,
    };
    cert.verify(&set)?;
    Ok((set, cert))
}

/// Pushes `start + t * len / parts` for `t` in `0..parts`.
fn push_subdivided(out: &mut Vec<Rational>, start: &Rational, len: &Rational, parts: u64) {
    let step = len / &Rational::from(parts as i64);
    for t in 0..parts {
        out.push(start + &(&step * &Rational::from(t as i64)));
    }
}
