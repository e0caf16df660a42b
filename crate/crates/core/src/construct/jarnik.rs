//! Lattice points on a convex polygonal curve.
//!
//! The ratios `a/b` with `1 <= a, b <= n`, `a/b != 1`, sorted ascending as
//! `a_{-m}/b_{-m} < ... < a_{-1}/b_{-1} < 1 < a_1/b_1 < ... < a_m/b_m`, are
//! used as edge vectors `(a_i, b_i)` of a chain through the origin. The
//! projection `(x, y) -> x + y` sends `X_{-i}, X_0, X_i` to a 3-term
//! progression for every `i`.

use serde::{Deserialize, Serialize};

use super::rich_sum::{farey_fractions, Fraction};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn projection(self) -> i64 {
        self.x + self.y
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JarnikPolyline {
    pub n: u64,
    /// `m`, half the number of ratios.
    pub half: usize,
    /// Edge vectors `(a_i, b_i)` for `i = -m, ..., -1, 1, ..., m`.
    pub ratios: Vec<Fraction>,
    /// `X_{-m}, ..., X_m`.
    pub points: Vec<LatticePoint>,
}

impl JarnikPolyline {
    pub fn origin_index(&self) -> usize {
        self.half
    }

    /// `X_i` for `-m <= i <= m`.
    pub fn point(&self, i: isize) -> LatticePoint {
        self.points[(self.half as isize + i) as usize]
    }

    /// Ratio with signed index `i != 0`.
    pub fn ratio(&self, i: isize) -> Fraction {
        let m = self.half as isize;
        if i < 0 {
            self.ratios[(m + i) as usize]
        } else {
            self.ratios[(m + i - 1) as usize]
        }
    }

    /// Checks convex position, the ratio symmetry, the bounding box
    /// `[-mn, mn]^2` and the projected progressions.
    pub fn verify(&self) -> Result<()> {
        let m = self.half as isize;
        if self.points.len() != 2 * self.half + 1 || self.ratios.len() != 2 * self.half {
            return Err(Error::Verification("point or ratio count is not 2m+1 / 2m".into()));
        }
        if self.point(0) != (LatticePoint { x: 0, y: 0 }) {
            return Err(Error::Verification("X_0 is not the origin".into()));
        }
        if !self.in_convex_position() {
            return Err(Error::Verification("points are not in convex position".into()));
        }
        let bound = self.half as i64 * self.n as i64;
        if self.points.iter().any(|p| p.x.abs() > bound || p.y.abs() > bound) {
            return Err(Error::Verification(format!("a point leaves [-{bound}, {bound}]^2")));
        }
        for i in 1..=m {
            let (r, l) = (self.ratio(i), self.ratio(-i));
            if r.numer != l.denom || r.denom != l.numer {
                return Err(Error::Verification(format!("ratio symmetry fails at i = {i}")));
            }
            let (lo, mid, hi) = (
                self.point(-i).projection(),
                self.point(0).projection(),
                self.point(i).projection(),
            );
            if lo + hi != 2 * mid || lo >= mid {
                return Err(Error::Verification(format!("projection at i = {i} is not a 3-AP")));
            }
        }
        Ok(())
    }

    /// Strict convex position: consecutive edges turn the same way.
    pub fn in_convex_position(&self) -> bool {
        let edges: Vec<(i64, i64)> = self
            .points
            .windows(2)
            .map(|w| (w[1].x - w[0].x, w[1].y - w[0].y))
            .collect();
        edges.windows(2).all(|e| {
            let cross = e[0].0 as i128 * e[1].1 as i128 - e[0].1 as i128 * e[1].0 as i128;
            cross < 0
        })
    }
}

pub fn jarnik_polyline(n: u64) -> Result<JarnikPolyline> {
    let below = farey_fractions(n)?;
    let half = below.len();
    let mut ratios = below.clone();
    ratios.extend(below.iter().rev().map(|f| f.recip()));

    let mut points = vec![LatticePoint { x: 0, y: 0 }; 2 * half + 1];
    for i in 1..=half {
        let f = ratios[half + i - 1];
        let prev = points[half + i - 1];
        points[half + i] = LatticePoint {
            x: prev.x + f.numer as i64,
            y: prev.y + f.denom as i64,
        };
        // X_{-i+1} - X_{-i} = (a_{-i}, b_{-i})
        let g = ratios[half - i];
        let next = points[half - i + 1];
        points[half - i] = LatticePoint {
            x: next.x - g.numer as i64,
            y: next.y - g.denom as i64,
        };
    }
    Ok(JarnikPolyline {
        n,
        half,
        ratios,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_by_hand() {
        let j = jarnik_polyline(2).unwrap();
        assert_eq!(j.half, 1);
        let pts: Vec<(i64, i64)> = j.points.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(pts, vec![(-1, -2), (0, 0), (2, 1)]);
        let proj: Vec<i64> = j.points.iter().map(|p| p.projection()).collect();
        assert_eq!(proj, vec![-3, 0, 3]);
        j.verify().unwrap();
    }

    #[test]
    fn verify_catches_tampering() {
        let mut j = jarnik_polyline(4).unwrap();
        j.points[1].x += 1;
        assert!(j.verify().is_err());
    }

    #[test]
    fn symmetry_and_size() {
        for n in 2..12u64 {
            let j = jarnik_polyline(n).unwrap();
            let m = j.half as isize;
            assert_eq!(j.points.len(), 2 * j.half + 1);
            // brute-force count of the ratio set minus 1
            let mut q: Vec<(u64, u64)> = Vec::new();
            for a in 1..=n {
                for b in 1..=n {
                    if a != b && num_integer::Integer::gcd(&a, &b) == 1 {
                        q.push((a, b));
                    }
                }
            }
            assert_eq!(q.len(), 2 * j.half);
            for i in 1..=m {
                assert_eq!(j.ratio(i).numer, j.ratio(-i).denom);
                assert_eq!(j.ratio(i).denom, j.ratio(-i).numer);
            }
            j.verify().unwrap();
        }
    }
}
