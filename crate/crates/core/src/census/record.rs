use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::forms::{
    eval_ab, eval_c, height_h, twist_defect, twist_minimal_model, GroomedPair, WeierstrassPair,
};

/// One census row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveRecord {
    pub pair: GroomedPair,
    /// Twist-minimal model, with `B > 0`.
    pub reduced: WeierstrassPair,
    /// Sign of `B(a, b)` before reduction.
    pub raw_b_sign: i8,
    pub twist_height: BigUint,
    pub twist_defect: u64,
    pub c_value: u128,
}

impl CurveRecord {
    fn key(&self) -> (&BigUint, &BigInt, &BigInt, GroomedPair) {
        (
            &self.twist_height,
            &self.reduced.a,
            &self.reduced.b,
            self.pair,
        )
    }
}

impl Ord for CurveRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CurveRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The record of a groomed pair, computed with the generic exact routines.
pub fn make_record(pair: GroomedPair) -> CurveRecord {
    let (a, b) = pair.pair();
    let w = eval_ab(a, b);
    let report = twist_defect(&w).expect("groomed pairs give nonzero models");
    let reduced = twist_minimal_model(&w).expect("no j = 0 or 1728 on the 7-isogeny locus");
    CurveRecord {
        pair,
        raw_b_sign: if w.b.is_negative() { -1 } else { 1 },
        twist_height: height_h(&reduced),
        twist_defect: report
            .twistdefect
            .to_u64()
            .expect("twist defect fits in u64"),
        reduced,
        c_value: eval_c(a, b),
    }
}

/// `true` if no two records share a j-invariant.
pub fn j_invariants_distinct(records: &[CurveRecord]) -> bool {
    let mut js: Vec<(BigInt, BigInt)> = records
        .iter()
        .map(|r| r.reduced.j_invariant().expect("nonsingular model"))
        .collect();
    js.sort_unstable();
    js.windows(2).all(|w| w[0] != w[1])
}

/// A difference between two record lists, keyed by the groomed pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// Present in the reference list only.
    Missing(CurveRecord),
    /// Present in the candidate list only.
    Unexpected(CurveRecord),
    /// Same pair, different fields.
    Mismatch {
        expected: CurveRecord,
        actual: CurveRecord,
    },
}

/// Differences between `expected` and `actual`, ordered by pair.
pub fn compare_records(expected: &[CurveRecord], actual: &[CurveRecord]) -> Vec<Discrepancy> {
    let mut e: Vec<&CurveRecord> = expected.iter().collect();
    let mut a: Vec<&CurveRecord> = actual.iter().collect();
    e.sort_by_key(|r| r.pair);
    a.sort_by_key(|r| r.pair);
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < e.len() || j < a.len() {
        match (e.get(i), a.get(j)) {
            (Some(x), Some(y)) if x.pair == y.pair => {
                if x != y {
                    out.push(Discrepancy::Mismatch {
                        expected: (*x).clone(),
                        actual: (*y).clone(),
                    });
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.pair < y.pair => {
                out.push(Discrepancy::Missing((*x).clone()));
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(Discrepancy::Unexpected((*y).clone()));
                j += 1;
            }
            (Some(x), None) => {
                out.push(Discrepancy::Missing((*x).clone()));
                i += 1;
            }
            (None, Some(y)) => {
                out.push(Discrepancy::Unexpected((*y).clone()));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
