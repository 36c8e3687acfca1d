//! Direct scan over all groomed pairs in a region that provably contains
//! every pair of twist height at most `X`.
//!
//! If `C(a, b) = e₀³m` with `m` cubefree then `e | 1029·e₀`, hence
//! `e⁶ ≤ 1029⁶·C²` and `twht ≥ 108·C⁶/e⁶ ≥ 108·C⁴/1029⁶`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

use super::record::{make_record, CurveRecord};
use super::to_f64;
use crate::error::{above_guard, Result};
use crate::forms::{a0_i128, b0_i128, eval_c, GroomedPair};

/// Largest `X` accepted by [`enumerate_brute`].
pub const BRUTE_GUARD: u64 = 1_000_000_000_000_000_000;

/// `⌊(1029⁶·X/108)^(1/4)⌋ + 1`, an upper bound for `C(a, b)` over pairs of
/// twist height at most `X`.
pub fn brute_c_bound(x: &BigUint) -> u128 {
    let num = BigUint::from(1029u32).pow(6) * x;
    let q: BigUint = num / 108u32;
    let r = q.nth_root(4);
    u128::try_from(r).expect("bound fits in u128") + 1
}

/// Cheap lower bound `H/g³ ≤ twht` with `g = gcd(A, B)`, in floating point.
/// `None` if `i128` arithmetic overflows.
fn lower_bound_f64(a: i64, b: i64) -> Option<f64> {
    let (ai, bi) = (a as i128, b as i128);
    let c = i128::try_from(eval_c(a, b)).ok()?;
    let big_a = c.checked_mul(a0_i128(ai, bi)?)?;
    let big_b = c.checked_mul(b0_i128(ai, bi)?)?;
    let g = big_a.unsigned_abs().gcd(&big_b.unsigned_abs()) as f64;
    let af = big_a as f64;
    let bf = big_b as f64;
    let h = (4.0 * (af * af * af).abs()).max(27.0 * bf * bf);
    Some(h / (g * g * g))
}

fn scan_row(b: i64, c_max: u128, x: &BigUint, x_f: f64) -> Vec<CurveRecord> {
    let mut out = Vec::new();
    let bb = b as u128;
    if 27 * bb * bb > 4 * c_max {
        return out;
    }
    // a² + ab + 7b² ≤ c_max  ⇔  (2a + b)² ≤ 4c_max - 27b²
    let s = (4 * c_max - 27 * bb * bb).sqrt() as i64;
    for a in ((-b - s) / 2 - 1)..=((-b + s) / 2 + 1) {
        if eval_c(a, b) > c_max {
            continue;
        }
        let Ok(pair) = GroomedPair::new(a, b) else {
            continue;
        };
        if let Some(lb) = lower_bound_f64(a, b) {
            if lb > x_f * (1.0 + 1e-9) {
                continue;
            }
        }
        let r = make_record(pair);
        if r.twist_height <= *x {
            out.push(r);
        }
    }
    out
}

/// All groomed pairs with twist height at most `x` by direct scan, sorted as
/// the census. Rejects `x` above [`BRUTE_GUARD`].
pub fn enumerate_brute(x: &BigUint) -> Result<Vec<CurveRecord>> {
    enumerate_brute_with(x, cfg!(feature = "std"))
}

pub fn enumerate_brute_with(x: &BigUint, parallel: bool) -> Result<Vec<CurveRecord>> {
    if *x > BigUint::from(BRUTE_GUARD) {
        return Err(above_guard("X", x, BRUTE_GUARD));
    }
    let c_max = brute_c_bound(x);
    let b_max = ((4 * c_max / 27).sqrt() + 1) as i64;
    let x_f = to_f64(x);
    let mut out = scan_rows(b_max, c_max, x, x_f, parallel);
    out.sort_unstable();
    Ok(out)
}

#[cfg(feature = "std")]
fn scan_rows(b_max: i64, c_max: u128, x: &BigUint, x_f: f64, parallel: bool) -> Vec<CurveRecord> {
    use rayon::prelude::*;
    if parallel {
        (1..=b_max)
            .into_par_iter()
            .flat_map_iter(|b| scan_row(b, c_max, x, x_f))
            .collect()
    } else {
        (1..=b_max)
            .flat_map(|b| scan_row(b, c_max, x, x_f))
            .collect()
    }
}

#[cfg(not(feature = "std"))]
fn scan_rows(b_max: i64, c_max: u128, x: &BigUint, x_f: f64, _parallel: bool) -> Vec<CurveRecord> {
    (1..=b_max)
        .flat_map(|b| scan_row(b, c_max, x, x_f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate_census;

    #[test]
    fn tiny() {
        assert!(enumerate_brute(&BigUint::from(1000u32)).unwrap().is_empty());
        assert!(enumerate_brute(&(BigUint::from(BRUTE_GUARD) + 1u32)).is_err());
    }

    #[test]
    fn region_contains_first_row() {
        // (14, 5) has C = 441 and twht 103788.
        assert!(brute_c_bound(&BigUint::from(103788u32)) >= 441);
    }

    #[test]
    fn agrees_with_census() {
        for x in [200_000u64, 10u64.pow(7), 10u64.pow(10)] {
            let x = BigUint::from(x);
            assert_eq!(enumerate_brute(&x).unwrap(), enumerate_census(&x).unwrap());
        }
    }
}
