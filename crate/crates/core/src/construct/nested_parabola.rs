//! Convex sets containing many disjoint `m`-term progressions.
//!
//! For `m <= l < 2m` the blocks `B_l = { f_l(k) : y_{l-1} <= k <= x_l }` with
//! `f_l(x) = a x^2 + l (x + n)` are glued into one convex set. For fixed `k`
//! the map `l -> f_l(k)` is affine, so `P_k = { f_l(k) : m <= l < 2m }` is an
//! `m`-term progression whenever every block reaches `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::{ConvexSet, PointSet};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NestedParabolaParams {
    pub n: u64,
    pub m: u64,
    /// Curvature; `None` selects [`choose_curvature`].
    pub a: Option<Rational>,
}

impl NestedParabolaParams {
    pub fn new(n: u64, m: u64) -> Self {
        NestedParabolaParams { n, m, a: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let need = 8u128 * self.m as u128 * self.m as u128;
        if (self.n as u128) < need {
            return Err(Error::InvalidParameter(format!(
                "need n >= 8m^2 = {need}, got n = {}",
                self.n
            )));
        }
        if let Some(a) = &self.a {
            if !a.is_positive() {
                return Err(Error::InvalidParameter(format!("curvature must be positive, got {a}")));
            }
        }
        Ok(())
    }
}

/// Per-block indices: `y` solves `n + y = 1 (mod l)` in `[1, l]`, and
/// `x = (n + (l + 1)(y - 1)) / l`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockIndex {
    pub ell: u64,
    pub y: u64,
    pub x: u64,
}

/// `y` in `[1, modulus]` with `n + y = 1 (mod modulus)`; `1` for modulus 0.
pub fn congruence_start(n: u64, modulus: u64) -> u64 {
    if modulus == 0 {
        return 1;
    }
    (modulus - n % modulus) % modulus + 1
}

pub fn block_indices(n: u64, m: u64) -> Vec<BlockIndex> {
    (m..2 * m)
        .map(|ell| {
            let y = congruence_start(n, ell);
            let num = n as u128 + (ell as u128 + 1) * (y as u128 - 1);
            debug_assert_eq!(num % ell as u128, 0);
            BlockIndex {
                ell,
                y,
                x: (num / ell as u128) as u64,
            }
        })
        .collect()
}

/// `a = 1 / (4 X^2)` with `X = max_l x_l`, checked against
/// `a (2 x_l - 1) < 1/2` and `a (x_l^2 - y_l^2) < 1/2` for every block.
pub fn choose_curvature(n: u64, m: u64) -> Result<Rational> {
    NestedParabolaParams::new(n, m).validate()?;
    let blocks = block_indices(n, m);
    let big_x = blocks.iter().map(|b| b.x).max().expect("m >= 1 gives a block");
    let a = Rational::new(1, 4 * (big_x as u128).pow(2));
    let half = Rational::new(1, 2);
    for b in &blocks {
        let x = Rational::from(b.x as i64);
        let y = Rational::from(b.y as i64);
        let lhs1 = &a * &(Rational::from(2) * &x - Rational::one());
        let lhs2 = &a * &(&x * &x - &y * &y);
        if lhs1 >= half || lhs2 >= half {
            return Err(Error::Verification(format!(
                "default curvature {a} fails the sufficiency bound at block {}",
                b.ell
            )));
        }
    }
    Ok(a)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ApCertificate {
    pub n: u64,
    pub m: u64,
    pub curvature: Rational,
    pub blocks: Vec<BlockIndex>,
    pub block_sizes: Vec<u64>,
    /// `P_k` for `2m <= k <= min_l x_l`, each listed in increasing `l`.
    pub progressions: Vec<Vec<Rational>>,
    pub common_differences: Vec<Rational>,
    pub disjoint: bool,
}

impl ApCertificate {
    /// `ceil(n / 4m)`.
    pub fn required_count(&self) -> u64 {
        self.n.div_ceil(4 * self.m)
    }

    /// Re-checks the certificate against `set` from scratch.
    pub fn verify(&self, set: &PointSet) -> Result<()> {
        if self.progressions.len() != self.common_differences.len() {
            return Err(Error::Verification("difference list length mismatch".into()));
        }
        if (self.progressions.len() as u64) < self.required_count() {
            return Err(Error::Verification(format!(
                "{} progressions, need at least {}",
                self.progressions.len(),
                self.required_count()
            )));
        }
        let mut all: Vec<&Rational> = Vec::new();
        for (p, d) in self.progressions.iter().zip(&self.common_differences) {
            if p.len() as u64 != self.m {
                return Err(Error::Verification(format!(
                    "progression has {} terms, expected {}",
                    p.len(),
                    self.m
                )));
            }
            if !d.is_positive() || p.windows(2).any(|w| &(&w[1] - &w[0]) != d) {
                return Err(Error::Verification("progression gap is not constant".into()));
            }
            if let Some(x) = p.iter().find(|x| !set.contains(x)) {
                return Err(Error::Verification(format!("{x} is not in the set")));
            }
            all.extend(p.iter());
        }
        let total = all.len();
        all.sort();
        all.dedup();
        let disjoint = all.len() == total;
        if disjoint != self.disjoint || !disjoint {
            return Err(Error::Verification("progressions are not pairwise disjoint".into()));
        }
        Ok(())
    }
}

fn f(a: &Rational, ell: u64, n: u64, k: u64) -> Rational {
    let k_r = Rational::from(k as i64);
    a * &(&k_r * &k_r) + Rational::from_integer((ell as u128 * (k as u128 + n as u128)) as i128)
}

pub fn nested_parabola(p: &NestedParabolaParams) -> Result<(ConvexSet, ApCertificate)> {
    p.validate()?;
    let (n, m) = (p.n, p.m);
    let a = match &p.a {
        Some(a) => a.clone(),
        None => choose_curvature(n, m)?,
    };
    let blocks = block_indices(n, m);

    // a(2x - 1) - 1 < a(y^2 - x^2) < a(2y + 1)
    for b in &blocks {
        let x = Rational::from(b.x as i64);
        let y = Rational::from(b.y as i64);
        let left = &a * &(Rational::from(2) * &x - Rational::one()) - Rational::one();
        let mid = &a * &(&y * &y - &x * &x);
        let right = &a * &(Rational::from(2) * &y + Rational::one());
        if !(left < mid && mid < right) {
            return Err(Error::CurvatureTooLarge { ell: b.ell });
        }
    }

    let mut elems = Vec::new();
    let mut block_sizes = Vec::with_capacity(blocks.len());
    for (idx, b) in blocks.iter().enumerate() {
        let lower = if idx == 0 {
            congruence_start(n, m - 1)
        } else {
            blocks[idx - 1].y
        };
        if lower > b.x {
            return Err(Error::Verification(format!("block {} is empty", b.ell)));
        }
        block_sizes.push(b.x - lower + 1);
        elems.extend((lower..=b.x).map(|k| f(&a, b.ell, n, k)));
    }
    let set = PointSet::new(elems)
        .map_err(|e| Error::Verification(format!("blocks overlap or are out of order: {e}")))?;
    let set = ConvexSet::try_from(set).map_err(|e| Error::Verification(e.to_string()))?;

    // n/(4m) <= |B_l| <= 2n/m
    for (b, &size) in blocks.iter().zip(&block_sizes) {
        if 4 * m * size < n || size * m > 2 * n {
            return Err(Error::Verification(format!(
                "block {} has {size} elements, outside [n/4m, 2n/m]",
                b.ell
            )));
        }
    }

    let min_x = blocks.iter().map(|b| b.x).min().expect("m >= 1");
    let mut progressions = Vec::new();
    let mut common_differences = Vec::new();
    for k in 2 * m..=min_x {
        let prog: Vec<Rational> = (m..2 * m).map(|ell| f(&a, ell, n, k)).collect();
        // f_{l+1}(k) - f_l(k) = k + n
        common_differences.push(Rational::from((k + n) as i64));
        progressions.push(prog);
    }
    let cert = ApCertificate {
        n,
        m,
        curvature: a,
        blocks,
        block_sizes,
        progressions,
        common_differences,
        disjoint: true,
    };
    cert.verify(&set)?;
    Ok((set, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_rule() {
        for n in 1..200u64 {
            for modulus in 1..20u64 {
                let y = congruence_start(n, modulus);
                assert!((1..=modulus).contains(&y));
                assert_eq!((n + y - 1) % modulus, 0);
            }
        }
        assert_eq!(congruence_start(32, 0), 1);
    }

    #[test]
    fn curvature_examples() {
        assert_eq!(choose_curvature(32, 2).unwrap(), Rational::new(1, 1024));
        assert_eq!(choose_curvature(8, 1).unwrap(), Rational::new(1, 256));
        assert!(choose_curvature(10, 3).is_err());
    }

    #[test]
    fn small_instance_by_hand() {
        let b = block_indices(32, 2);
        assert_eq!(
            b,
            vec![
                BlockIndex { ell: 2, y: 1, x: 16 },
                BlockIndex { ell: 3, y: 2, x: 12 }
            ]
        );
        let (set, cert) = nested_parabola(&NestedParabolaParams::new(32, 2)).unwrap();
        assert_eq!(set.len(), 28);
        assert_eq!(cert.block_sizes, vec![16, 12]);
        assert_eq!(cert.progressions.len(), 9);
        assert_eq!(cert.required_count(), 4);
    }

    #[test]
    fn rejects_small_n_and_large_curvature() {
        assert!(matches!(
            nested_parabola(&NestedParabolaParams::new(71, 3)),
            Err(Error::InvalidParameter(_))
        ));
        let p = NestedParabolaParams {
            n: 72,
            m: 3,
            a: Some(Rational::one()),
        };
        assert!(matches!(nested_parabola(&p), Err(Error::CurvatureTooLarge { ell: 3 })));
        let p = NestedParabolaParams {
            n: 72,
            m: 3,
            a: Some(Rational::zero()),
        };
        assert!(matches!(nested_parabola(&p), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn certificate_verify_catches_tampering() {
        let (set, cert) = nested_parabola(&NestedParabolaParams::new(72, 3)).unwrap();
        let mut bad = cert.clone();
        bad.progressions[0][1] = &bad.progressions[0][1] + &Rational::one();
        assert!(bad.verify(&set).is_err());
        let mut bad = cert.clone();
        bad.progressions.truncate(1);
        bad.common_differences.truncate(1);
        assert!(bad.verify(&set).is_err());
        let mut bad = cert;
        bad.progressions[1] = bad.progressions[0].clone();
        bad.common_differences[1] = bad.common_differences[0].clone();
        assert!(bad.verify(&set).is_err());
    }
}
