//! The census: every groomed pair is generated from the factorisation of
//! `C(a, b)` as `3^i · 7^k · e_c³ · m_c` with `m_c` cubefree and `e_c, m_c`
//! prime to 21, multiplying representations in `ℤ[3ζ]`.
//!
//! Away from 3 and 7 the twist defect is exactly `e_c`. At 3 it is at most
//! `3^(⌊i/3⌋+1)` and at 7 at most `7^⌊(k+7)/3⌋` (and 1 when `k = 0`), so
//! `C/e ≥ f₃(i)·f₇(k)·e_c²·m_c`, and `twht ≥ 108(C/e)⁶` bounds the search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::record::{make_record, CurveRecord};
use super::to_f64;
use crate::error::{below_minimum, Error, Result};
use crate::forms::{a0_i128, b0_i128, GroomedPair, WeierstrassPair, CUSP};
use crate::normform::{
    build_rep_table, combine_reps, cube_reps, enumerate_reps, reps_seven_power, OrderElement,
    RepTable,
};

/// Relative slack on floating-point loop bounds; candidates are always
/// filtered exactly afterwards.
const SLACK: f64 = 1e-9;

/// `(X/108)^(1/6)`, slightly enlarged.
fn z_bound(x: &BigUint) -> f64 {
    libm::pow(to_f64(x) / 108.0, 1.0 / 6.0) * (1.0 + SLACK) + SLACK
}

/// Largest possible `v₇(e)` when `7^k ∥ C`.
fn max_v7(k: u32) -> u32 {
    if k == 0 {
        0
    } else {
        (k + 7) / 3
    }
}

/// Largest possible `v₃(e)` when `3^i ∥ C`.
fn max_v3(i: u32) -> u32 {
    i / 3 + 1
}

/// Lower bound for the 21-part of `C/e`.
fn factor_21(i: u32, k: u32) -> f64 {
    libm::pow(3.0, i as f64 - max_v3(i) as f64) * libm::pow(7.0, k as f64 - max_v7(k) as f64)
}

/// Smallest rep-table bound that [`enumerate_census_with`] accepts for `x`.
pub fn census_table_bound(x: &BigUint) -> u64 {
    libm::floor(21.0 * z_bound(x)) as u64 + 2
}

/// One step-3 work unit: a fixed 3-part, 7-part and `e_c`.
struct Unit {
    i: u32,
    k: u32,
    e_c: u64,
    /// Upper bound for `m_c`.
    m_max: u64,
    /// Representations of `3^i 7^k e_c³`.
    prefix: Vec<(i64, i64)>,
}

fn three_part(i: u32) -> Vec<(i64, i64)> {
    match i {
        0 => vec![(1, 0)],
        2 => enumerate_reps(9),
        3 => enumerate_reps(27),
        _ => Vec::new(),
    }
}

fn units(z: f64, table: &RepTable) -> Vec<Unit> {
    let mut out = Vec::new();
    for i in [0u32, 2, 3] {
        let mut k = 0u32;
        loop {
            let f = factor_21(i, k);
            // f₇(k) is nondecreasing from k = 1 on
            if k >= 1 && f > z {
                break;
            }
            let w = z / f;
            if w >= 1.0 {
                let base = combine_reps(&three_part(i), &reps_seven_power(k));
                let mut e_c = 1u64;
                while (e_c * e_c) as f64 <= w {
                    if !e_c.is_multiple_of(3)
                        && !e_c.is_multiple_of(7)
                        && !table.get(e_c).is_empty()
                    {
                        let e3 = e_c * e_c * e_c;
                        let cubes = if e3 < table.bound() {
                            table.get(e3).to_vec()
                        } else {
                            cube_reps(table.get(e_c))
                        };
                        out.push(Unit {
                            i,
                            k,
                            e_c,
                            m_max: libm::floor(w / (e_c * e_c) as f64) as u64,
                            prefix: combine_reps(&base, &cubes),
                        });
                    }
                    e_c += 1;
                }
            }
            k += 1;
        }
    }
    out
}

fn valuation(mut n: i128, p: i128) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Step 4 for one candidate with known `3^i ∥ C`, `7^k ∥ C` and `e_c`.
fn check_candidate(a: i64, b: i64, unit: &Unit, x: &BigUint, x_f: f64) -> Option<CurveRecord> {
    let pair = GroomedPair::new(a, b).ok()?;
    let (ai, bi) = (a as i128, b as i128);
    let c = crate::forms::eval_c(a, b);
    let fast = (|| {
        let a0 = a0_i128(ai, bi)?;
        let b0 = b0_i128(ai, bi)?;
        let ci = i128::try_from(c).ok()?;
        Some((ci, a0, b0, ci.checked_mul(a0)?, ci.checked_mul(b0)?))
    })();
    let Some((ci, a0, b0, big_a, big_b)) = fast else {
        let r = make_record(pair);
        return (r.twist_height <= *x).then_some(r);
    };
    let v3 = ((unit.i + valuation(a0, 3)) / 2).min((unit.i + valuation(b0, 3)) / 3);
    let v7 = ((unit.k + valuation(a0, 7)) / 2).min((unit.k + valuation(b0, 7)) / 3);
    let e = unit.e_c as i128 * 3i128.pow(v3) * 7i128.pow(v7);
    let e2 = e * e;
    let e3 = e2 * e;
    debug_assert!(big_a % e2 == 0 && big_b % e3 == 0);
    let (ra, rb) = (big_a / e2, (big_b / e3).abs());
    let af = ra as f64;
    let bf = rb as f64;
    let approx = (4.0 * af.abs() * af * af).max(27.0 * bf * bf);
    if approx > x_f * (1.0 + SLACK) {
        return None;
    }
    let reduced = WeierstrassPair::new(ra, rb);
    let twht = crate::forms::height_h(&reduced);
    if twht > *x {
        return None;
    }
    Some(CurveRecord {
        pair,
        reduced,
        raw_b_sign: if b0 < 0 { -1 } else { 1 },
        twist_height: twht,
        twist_defect: e as u64,
        c_value: ci as u128,
    })
}

fn run_unit(unit: &Unit, table: &RepTable, x: &BigUint, x_f: f64) -> Vec<CurveRecord> {
    let mut out = Vec::new();
    for m in 1..=unit.m_max {
        if m % 3 == 0 || m % 7 == 0 || !table.is_cubefree(m) {
            continue;
        }
        let reps = table.get(m);
        if reps.is_empty() {
            continue;
        }
        for &p in &unit.prefix {
            let p = OrderElement::from(p);
            for &q in reps {
                let Some(r) = p.checked_mul(&OrderElement::from(q)) else {
                    continue;
                };
                let r = r.normalized();
                if r.y == 0 || r.pair() == CUSP || !r.is_primitive() {
                    continue;
                }
                if let Some(rec) = check_candidate(r.x, r.y, unit, x, x_f) {
                    out.push(rec);
                }
            }
        }
    }
    out
}

/// All groomed pairs with twist height at most `x`, sorted by
/// `(twist height, A, B)`. Rejects `x < 1`.
pub fn enumerate_census(x: &BigUint) -> Result<Vec<CurveRecord>> {
    enumerate_census_with(x, None, cfg!(feature = "std"))
}

/// As [`enumerate_census`], optionally reusing a prebuilt table (its bound
/// must be at least [`census_table_bound`]). `parallel` selects the rayon
/// driver when the `std` feature is on; the output is the same either way.
pub fn enumerate_census_with(
    x: &BigUint,
    table: Option<&RepTable>,
    parallel: bool,
) -> Result<Vec<CurveRecord>> {
    if *x < BigUint::from(1u32) {
        return Err(below_minimum("X", x, 1));
    }
    let need = census_table_bound(x);
    let built;
    let table = match table {
        Some(t) if t.bound() >= need => t,
        Some(t) => {
            return Err(Error::TableTooSmall {
                have: t.bound(),
                need,
            })
        }
        None => {
            built = build_rep_table(need);
            &built
        }
    };
    let z = z_bound(x);
    let x_f = to_f64(x);
    let work = units(z, table);
    let mut records = run_units(&work, table, x, x_f, parallel);
    records.sort_unstable();
    records.dedup();
    Ok(records)
}

#[cfg(feature = "std")]
fn run_units(
    work: &[Unit],
    table: &RepTable,
    x: &BigUint,
    x_f: f64,
    parallel: bool,
) -> Vec<CurveRecord> {
    use rayon::prelude::*;
    if parallel {
        work.par_iter()
            .flat_map_iter(|u| run_unit(u, table, x, x_f))
            .collect()
    } else {
        work.iter()
            .flat_map(|u| run_unit(u, table, x, x_f))
            .collect()
    }
}

#[cfg(not(feature = "std"))]
fn run_units(
    work: &[Unit],
    table: &RepTable,
    x: &BigUint,
    x_f: f64,
    _parallel: bool,
) -> Vec<CurveRecord> {
    work.iter()
        .flat_map(|u| run_unit(u, table, x, x_f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heights(x: u64) -> Vec<u64> {
        enumerate_census(&BigUint::from(x))
            .unwrap()
            .iter()
            .map(|r| u64::try_from(&r.twist_height).unwrap())
            .collect()
    }

    #[test]
    fn small_censuses() {
        assert!(heights(100_000).is_empty());
        assert_eq!(heights(200_000), vec![103788, 164268]);
        assert!(enumerate_census(&BigUint::from(0u32)).is_err());
    }

    #[test]
    fn records_match_generic_route() {
        for r in enumerate_census(&BigUint::from(10u64.pow(15))).unwrap() {
            assert_eq!(make_record(r.pair), r);
        }
    }

    #[test]
    fn table_reuse() {
        let x = BigUint::from(10u64.pow(12));
        let t = build_rep_table(census_table_bound(&x));
        assert_eq!(
            enumerate_census_with(&x, Some(&t), false).unwrap(),
            enumerate_census(&x).unwrap()
        );
        let small = build_rep_table(10);
        assert!(enumerate_census_with(&x, Some(&small), false).is_err());
    }

    #[test]
    fn local_bounds_hold() {
        for r in enumerate_census(&BigUint::from(10u64.pow(18))).unwrap() {
            let c = r.c_value;
            let e = r.twist_defect as u128;
            let (mut i, mut cc) = (0, c);
            while cc % 3 == 0 {
                cc /= 3;
                i += 1;
            }
            let (mut k, mut cc) = (0, c);
            while cc % 7 == 0 {
                cc /= 7;
                k += 1;
            }
            let (mut v3, mut ee) = (0, e);
            while ee % 3 == 0 {
                ee /= 3;
                v3 += 1;
            }
            let (mut v7, mut ee) = (0, e);
            while ee % 7 == 0 {
                ee /= 7;
                v7 += 1;
            }
            assert!(v3 <= max_v3(i) && v7 <= max_v7(k), "{:?}", r.pair);
        }
    }
}
