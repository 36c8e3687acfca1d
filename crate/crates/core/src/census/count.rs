use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::brute::enumerate_brute;
use super::enumerate::enumerate_census;
use super::record::CurveRecord;
use super::to_f64;
use crate::error::{above_guard, Result};
use crate::forms::{eval_ab, height_h, twist_defect, WeierstrassPair};
use crate::multfun::{factorize, squarefree_count};

/// Largest `X` accepted by [`count_rational_brute`].
pub const RATIONAL_BRUTE_GUARD: u64 = 1_000_000_000_000_000;

/// `N^tw(X)`, `N(X)` and the twist-height histogram.
#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub x: BigUint,
    pub n_tw: u64,
    pub n_rational: u64,
    /// `h^tw(n)` for each twist height `n ≤ X` that occurs.
    pub histogram: BTreeMap<BigUint, u64>,
    /// `ζ(2)/(QR) · N^tw(X)/X^(1/6)`.
    pub ratio_check: f64,
}

/// `N(X) = 2·Σ_records #{c ≤ (X/twht)^(1/6) squarefree}`.
pub fn rational_count(records: &[CurveRecord], x: &BigUint) -> u64 {
    records
        .iter()
        .filter(|r| r.twist_height <= *x)
        .map(|r| {
            let k = (x / &r.twist_height).nth_root(6);
            2 * squarefree_count(k.to_u64().expect("sixth root fits in u64"))
        })
        .sum()
}

/// Report for a complete census up to `x`; `qr` is the product `Q·R`.
pub fn count_from_records(records: &[CurveRecord], x: &BigUint, qr: f64) -> CountReport {
    let mut histogram = BTreeMap::new();
    for r in records.iter().filter(|r| r.twist_height <= *x) {
        *histogram.entry(r.twist_height.clone()).or_insert(0) += 1;
    }
    let n_tw: u64 = histogram.values().sum();
    let x6 = libm::pow(to_f64(x), 1.0 / 6.0);
    CountReport {
        x: x.clone(),
        n_tw,
        n_rational: rational_count(records, x),
        histogram,
        ratio_check: crate::constants::zeta2() / qr * n_tw as f64 / x6,
    }
}

/// `N^tw(X)` and its histogram from the census (with `N(X)` filled in too).
pub fn count_twist(x: &BigUint, qr: f64) -> Result<CountReport> {
    Ok(count_from_records(&enumerate_census(x)?, x, qr))
}

/// Same as [`count_twist`]; `n_rational` is the quantity of interest.
pub fn count_rational(x: &BigUint, qr: f64) -> Result<CountReport> {
    count_twist(x, qr)
}

fn valuation_of(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    Some(v)
}

/// `N(X)` by scanning triples `(a, b, c)` with `c` squarefree and
/// `ht(c²A, c³B) ≤ X`. Only pairs of twist height at most `X` can
/// contribute, and for those `|c|` is bounded by `e·(X/twht)^(1/6)`.
/// Rejects `x` above [`RATIONAL_BRUTE_GUARD`].
pub fn count_rational_brute(x: &BigUint) -> Result<u64> {
    if *x > BigUint::from(RATIONAL_BRUTE_GUARD) {
        return Err(above_guard("X", x, RATIONAL_BRUTE_GUARD));
    }
    let x_f = to_f64(x);
    let mut total = 0u64;
    for r in enumerate_brute(x)? {
        let (a, b) = r.pair.pair();
        let w = eval_ab(a, b);
        let report = twist_defect(&w).expect("nonzero model");
        let h = height_h(&w);
        let h_f = to_f64(&h);
        let e = report.twistdefect.to_u64().expect("defect fits in u64");
        let k = (x / &r.twist_height).nth_root(6).to_u64().expect("fits");
        let c_max = e * k;
        for c in 1..=c_max {
            let fc = factorize(c);
            if fc.iter().any(|&(_, v)| v > 1) {
                continue;
            }
            // minimality defect of (c²A, c³B), prime by prime
            let mut d = BigUint::one();
            let mut d_f = 1.0f64;
            let mut primes: Vec<u64> = fc.iter().map(|&(p, _)| p).collect();
            primes.extend(report.per_prime.iter().map(|v| v.prime));
            primes.sort_unstable();
            primes.dedup();
            for p in primes {
                let vc = if c % p == 0 { 1 } else { 0 };
                let va = valuation_of(&w.a, p).map(|v| v + 2 * vc);
                let vb = valuation_of(&w.b, p).map(|v| v + 3 * vc);
                let t = match (va, vb) {
                    (Some(x), Some(y)) => (x / 4).min(y / 6),
                    (Some(x), None) => x / 4,
                    (None, Some(y)) => y / 6,
                    (None, None) => 0,
                };
                d *= BigUint::from(p).pow(t);
                d_f *= libm::pow(p as f64, t as f64);
            }
            let c_f = c as f64;
            let approx = h_f * libm::pow(c_f, 6.0) / libm::pow(d_f, 12.0);
            if approx > x_f * (1.0 + 1e-9) {
                continue;
            }
            for sign in [1i64, -1] {
                let cc = BigInt::from(sign) * BigInt::from(c);
                let twisted = WeierstrassPair {
                    a: &cc * &cc * &w.a,
                    b: &cc * &cc * &cc * &w.b,
                };
                let ht = height_h(&twisted) / d.pow(12);
                if ht <= *x {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}
