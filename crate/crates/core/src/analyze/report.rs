use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{additive_energy, count_3aps, longest_ap, max_rep};
use crate::error::Result;
use crate::rational::Rational;
use crate::set::PointSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stat {
    T3,
    Energy,
    MaxRep,
    LongestAp,
    Convexity,
}

impl Stat {
    pub const ALL: [Stat; 5] = [
        Stat::T3,
        Stat::Energy,
        Stat::MaxRep,
        Stat::LongestAp,
        Stat::Convexity,
    ];
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatSelection(Vec<Stat>);

impl StatSelection {
    pub fn all() -> Self {
        StatSelection(Stat::ALL.to_vec())
    }

    pub fn of(stats: &[Stat]) -> Self {
        StatSelection(stats.to_vec())
    }

    pub fn has(&self, s: Stat) -> bool {
        self.0.contains(&s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MaxRepStat {
    pub argmax: Rational,
    pub value: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LongestApStat {
    pub length: usize,
    pub witness: Vec<Rational>,
}

/// Statistics of one set. Unselected statistics are `None` and serialize as
/// `null`, so the JSON shape does not depend on the selection.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StatReport {
    pub size: usize,
    pub t3_total: Option<u64>,
    pub t3_nontrivial: Option<u64>,
    pub energy: Option<u128>,
    pub max_rep: Option<MaxRepStat>,
    pub longest_ap: Option<LongestApStat>,
    pub convex: Option<bool>,
    pub elapsed_ms: u64,
}

impl StatReport {
    pub fn compute(a: &PointSet, sel: &StatSelection) -> Result<Self> {
        let started = Instant::now();
        let (t3_total, t3_nontrivial) = if sel.has(Stat::T3) {
            let c = count_3aps(a);
            (Some(c.total), Some(c.nontrivial))
        } else {
            (None, None)
        };
        let energy = sel.has(Stat::Energy).then(|| additive_energy(a));
        let max_rep = if sel.has(Stat::MaxRep) && !a.is_empty() {
            let (argmax, value) = max_rep(a)?;
            Some(MaxRepStat { argmax, value })
        } else {
            None
        };
        let longest_ap = if sel.has(Stat::LongestAp) && !a.is_empty() {
            let l = longest_ap(a)?;
            Some(LongestApStat {
                length: l.length,
                witness: l.witness,
            })
        } else {
            None
        };
        let convex = if sel.has(Stat::Convexity) {
            Some(a.len() >= 2 && a.check_convex()?.is_convex())
        } else {
            None
        };
        Ok(StatReport {
            size: a.len(),
            t3_total,
            t3_nontrivial,
            energy,
            max_rep,
            longest_ap,
            convex,
            elapsed_ms: started.elapsed().as_millis() as u64,
        })
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "size",
        "t3_total",
        "t3_nontrivial",
        "energy",
        "max_rep_x",
        "max_rep_value",
        "longest_ap_length",
        "longest_ap_witness",
        "convex",
        "elapsed_ms",
    ];

    /// One CSV row matching [`Self::CSV_HEADER`]; missing values are empty.
    pub fn csv_record(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.size.to_string(),
            opt(&self.t3_total),
            opt(&self.t3_nontrivial),
            opt(&self.energy),
            opt(&self.max_rep.as_ref().map(|m| m.argmax.clone())),
            opt(&self.max_rep.as_ref().map(|m| m.value)),
            opt(&self.longest_ap.as_ref().map(|l| l.length)),
            self.longest_ap
                .as_ref()
                .map(|l| {
                    l.witness
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default(),
            opt(&self.convex),
            self.elapsed_ms.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_invariants_on_small_sets() {
        for xs in [vec![1, 2, 4, 8, 16], vec![0, 1, 2], vec![0, 1, 3, 6, 10]] {
            let a = PointSet::from_integers(xs);
            let r = StatReport::compute(&a, &StatSelection::all()).unwrap();
            let n = r.size as u64;
            let t3 = r.t3_total.unwrap();
            assert!(n <= t3 && t3 <= n * n);
            assert!(r.energy.unwrap() >= (n * n) as u128);
            assert_eq!(r.csv_record().len(), StatReport::CSV_HEADER.len());
        }
    }

    #[test]
    fn selection_leaves_nulls() {
        let a = PointSet::from_integers([0, 1, 2]);
        let r = StatReport::compute(&a, &StatSelection::of(&[Stat::Energy])).unwrap();
        assert_eq!(r.energy, Some(19));
        assert_eq!(r.t3_total, None);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["t3_total"].is_null());
        assert_eq!(json["energy"], 19);
    }
}
